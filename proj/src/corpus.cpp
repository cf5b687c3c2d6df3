#include "phishout/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "phishout/text.hpp"

namespace phishout {
namespace {

constexpr int kMaxMultipartDepth = 32;

bool line_is_blank(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    return line.empty();
}

std::string_view first_line(std::string_view bytes) {
    const auto nl = bytes.find('\n');
    auto line = (nl == std::string_view::npos) ? bytes : bytes.substr(0, nl);
    while (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool looks_like_header_line(std::string_view line) {
    return !line.empty() && line.find(':') != std::string_view::npos;
}

// Removes the stuffing '>' from ">From " lines that follow a blank line,
// mirroring the delimiter rule so rejoin_mbox can restore them exactly.
std::string unstuff(std::string_view content) {
    std::string out;
    out.reserve(content.size());
    std::size_t pos = 0;
    bool prev_blank = false;
    while (pos < content.size()) {
        const auto nl = content.find('\n', pos);
        const auto end = (nl == std::string_view::npos) ? content.size() : nl + 1;
        auto line = content.substr(pos, end - pos);
        if (prev_blank && line.starts_with(">From ")) line.remove_prefix(1);
        out.append(line);
        prev_blank = line_is_blank(content.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

std::string stuff(std::string_view content) {
    std::string out;
    out.reserve(content.size());
    std::size_t pos = 0;
    bool prev_blank = false;
    while (pos < content.size()) {
        const auto nl = content.find('\n', pos);
        const auto end = (nl == std::string_view::npos) ? content.size() : nl + 1;
        const auto line = content.substr(pos, end - pos);
        if (prev_blank && line.starts_with("From ")) out.push_back('>');
        out.append(line);
        prev_blank = line_is_blank(line);
        pos = end;
    }
    return out;
}

RawMessage make_message(std::string_view content, std::size_t offset, std::string_view from_line,
                        const std::string& source_file) {
    RawMessage msg;
    msg.bytes = unstuff(content);
    msg.source_offset = offset;
    msg.from_line = std::string(from_line);
    msg.source_file = source_file;
    msg.malformed = msg.bytes.empty() || !looks_like_header_line(first_line(msg.bytes));
    return msg;
}

}  // namespace

std::vector<RawMessage> parse_mbox(std::string_view bytes, std::string source_file) {
    std::vector<RawMessage> out;
    if (bytes.empty()) return out;

    // Delimiter line starts: "From " at the file start or after a blank line.
    std::vector<std::size_t> delims;
    std::size_t pos = 0;
    bool prev_blank = true;
    while (pos < bytes.size()) {
        const auto nl = bytes.find('\n', pos);
        const auto end = (nl == std::string_view::npos) ? bytes.size() : nl + 1;
        const auto line = bytes.substr(pos, end - pos);
        if (prev_blank && line.starts_with("From ")) delims.push_back(pos);
        prev_blank = line_is_blank(line);
        pos = end;
    }

    if (delims.empty()) {
        out.push_back(make_message(bytes, 0, {}, source_file));
        return out;
    }
    if (delims.front() > 0) {
        // Preamble before the first delimiter becomes its own message.
        out.push_back(make_message(bytes.substr(0, delims.front()), 0, {}, source_file));
    }
    for (std::size_t d = 0; d < delims.size(); ++d) {
        const auto line_end_nl = bytes.find('\n', delims[d]);
        const auto content_start = (line_end_nl == std::string_view::npos) ? bytes.size() : line_end_nl + 1;
        const auto content_end = (d + 1 < delims.size()) ? delims[d + 1] : bytes.size();
        const auto from_line = bytes.substr(delims[d], content_start - delims[d]);
        out.push_back(make_message(bytes.substr(content_start, content_end - content_start), content_start,
                                   from_line, source_file));
    }
    return out;
}

std::string rejoin_mbox(const std::vector<RawMessage>& messages) {
    std::string out;
    for (const auto& msg : messages) {
        out.append(msg.from_line);
        out.append(stuff(msg.bytes));
    }
    return out;
}

TransferEncoding transfer_encoding_from(std::string_view name) {
    const auto t = ascii_lower_copy(trim(name));
    if (t == "7bit") return TransferEncoding::bit7;
    if (t == "8bit") return TransferEncoding::bit8;
    if (t == "binary") return TransferEncoding::binary;
    if (t == "quoted-printable") return TransferEncoding::quoted_printable;
    if (t == "base64") return TransferEncoding::base64;
    return TransferEncoding::unknown;
}

namespace {

std::string decode_quoted_printable(std::string_view body) {
    std::string out;
    out.reserve(body.size());
    std::size_t i = 0;
    while (i < body.size()) {
        const char c = body[i];
        if (c != '=') {
            out.push_back(c);
            ++i;
            continue;
        }
        if (i + 1 < body.size() && body[i + 1] == '\n') {
            i += 2;  // soft break "=\n"
            continue;
        }
        if (i + 2 < body.size() && body[i + 1] == '\r' && body[i + 2] == '\n') {
            i += 3;  // soft break "=\r\n"
            continue;
        }
        if (i + 2 < body.size() && is_hex_digit(body[i + 1]) && is_hex_digit(body[i + 2])) {
            out.push_back(static_cast<char>(hex_value(body[i + 1]) * 16 + hex_value(body[i + 2])));
            i += 3;
            continue;
        }
        out.push_back(c);  // invalid escape, pass through
        ++i;
    }
    return out;
}

int base64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

std::string decode_base64(std::string_view body) {
    std::string out;
    out.reserve(body.size() * 3 / 4 + 4);
    std::string group;        // significant chars of the current quartet
    std::string group_raw;    // original bytes incl. interleaved whitespace

    auto flush_group = [&] {
        int vals[4] = {0, 0, 0, 0};
        int have = 0;
        bool bad = false;
        for (char c : group) {
            if (c == '=') break;  // padding ends the data
            const int v = base64_value(c);
            if (v < 0) {
                bad = true;
                break;
            }
            vals[have++] = v;
        }
        if (bad || have == 1) {
            out.append(group_raw);  // corrupt run emitted verbatim
        } else if (have >= 2) {
            out.push_back(static_cast<char>((vals[0] << 2) | (vals[1] >> 4)));
            if (have >= 3) out.push_back(static_cast<char>(((vals[1] & 0xF) << 4) | (vals[2] >> 2)));
            if (have == 4) out.push_back(static_cast<char>(((vals[2] & 0x3) << 6) | vals[3]));
        }
        group.clear();
        group_raw.clear();
    };

    for (char c : body) {
        if (is_ascii_space(c)) {
            if (!group.empty()) group_raw.push_back(c);
            continue;
        }
        group.push_back(c);
        group_raw.push_back(c);
        if (group.size() == 4) flush_group();
    }
    if (!group.empty()) flush_group();
    return out;
}

}  // namespace

std::string decode_transfer_encoding(std::string_view body, TransferEncoding encoding) {
    switch (encoding) {
        case TransferEncoding::quoted_printable:
            return decode_quoted_printable(body);
        case TransferEncoding::base64:
            return decode_base64(body);
        default:
            return std::string(body);
    }
}

std::string decode_charset(std::string_view bytes, std::string_view charset) {
    const auto cs = ascii_lower_copy(trim(charset));
    std::string out;
    out.reserve(bytes.size());
    if (cs == "us-ascii" || cs == "ascii") {
        for (char c : bytes) {
            const auto b = static_cast<unsigned char>(c);
            if (b < 0x80) {
                out.push_back(c);
            } else {
                append_utf8(out, kReplacementChar);
            }
        }
        return out;
    }
    if (cs == "utf-8" || cs == "utf8") {
        std::size_t i = 0;
        while (i < bytes.size()) append_utf8(out, next_codepoint(bytes, i));
        return out;
    }
    // latin-1 and the total fallback for every other declared charset
    for (char c : bytes) {
        append_utf8(out, static_cast<unsigned char>(c));
    }
    return out;
}

namespace {

using HeaderList = std::vector<std::pair<std::string, std::string>>;

// Splits raw content into the unfolded header block and the body. Content
// whose first line is not a header line is treated as all body.
void split_head_body(std::string_view raw, std::string_view& head, std::string_view& body) {
    if (!looks_like_header_line(first_line(raw))) {
        head = {};
        body = raw;
        return;
    }
    std::size_t pos = 0;
    while (pos < raw.size()) {
        const auto nl = raw.find('\n', pos);
        const auto end = (nl == std::string_view::npos) ? raw.size() : nl + 1;
        if (line_is_blank(raw.substr(pos, end - pos))) {
            head = raw.substr(0, pos);
            body = raw.substr(end);
            return;
        }
        pos = end;
    }
    head = raw;  // no blank line: all headers, empty body
    body = {};
}

HeaderList parse_headers(std::string_view head) {
    HeaderList headers;
    std::size_t pos = 0;
    while (pos < head.size()) {
        const auto nl = head.find('\n', pos);
        const auto end = (nl == std::string_view::npos) ? head.size() : nl + 1;
        auto line = head.substr(pos, end - pos);
        while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
        pos = end;
        if (line.empty()) continue;
        if ((line.front() == ' ' || line.front() == '\t') && !headers.empty()) {
            // Unfold continuation onto the previous header value.
            headers.back().second.push_back(' ');
            headers.back().second.append(trim(line));
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) continue;  // junk line, skip
        headers.emplace_back(std::string(trim(line.substr(0, colon))),
                             std::string(trim(line.substr(colon + 1))));
    }
    return headers;
}

const std::string* header_value(const HeaderList& headers, std::string_view name) {
    for (const auto& [key, value] : headers) {
        if (ascii_iequals(key, name)) return &value;
    }
    return nullptr;
}

struct ContentType {
    std::string type = "text";
    std::string subtype = "plain";
    std::map<std::string, std::string> params;
};

ContentType parse_content_type(std::string_view value) {
    ContentType ct;
    std::size_t pos = 0;
    int field = 0;
    while (pos <= value.size()) {
        auto semi = value.find(';', pos);
        if (semi == std::string_view::npos) semi = value.size();
        const auto piece = trim(value.substr(pos, semi - pos));
        if (field == 0) {
            const auto slash = piece.find('/');
            if (slash != std::string_view::npos) {
                ct.type = ascii_lower_copy(trim(piece.substr(0, slash)));
                ct.subtype = ascii_lower_copy(trim(piece.substr(slash + 1)));
            } else if (!piece.empty()) {
                ct.type = ascii_lower_copy(piece);
                ct.subtype.clear();
            }
        } else if (!piece.empty()) {
            const auto eq = piece.find('=');
            if (eq != std::string_view::npos) {
                auto val = trim(piece.substr(eq + 1));
                if (val.size() >= 2 && val.front() == '"' && val.back() == '"') {
                    val = val.substr(1, val.size() - 2);
                }
                ct.params[ascii_lower_copy(trim(piece.substr(0, eq)))] = std::string(val);
            }
        }
        ++field;
        pos = semi + 1;
    }
    return ct;
}

// Bodies of a multipart container, between "--boundary" lines. The preamble
// and everything after "--boundary--" are dropped.
std::vector<std::string_view> split_multipart(std::string_view body, std::string_view boundary) {
    std::vector<std::string_view> parts;
    const std::string open = "--" + std::string(boundary);
    const std::string close = open + "--";
    std::size_t pos = 0;
    std::size_t part_start = std::string_view::npos;
    while (pos <= body.size()) {
        auto nl = body.find('\n', pos);
        const auto end = (nl == std::string_view::npos) ? body.size() : nl + 1;
        auto line = body.substr(pos, end - pos);
        while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
        const bool is_close = trim(line) == std::string_view(close);
        const bool is_open = !is_close && trim(line) == std::string_view(open);
        if (is_open || is_close) {
            if (part_start != std::string_view::npos) {
                auto part = body.substr(part_start, pos - part_start);
                // The line break preceding the boundary belongs to the boundary.
                if (part.ends_with('\n')) part.remove_suffix(1);
                if (part.ends_with('\r')) part.remove_suffix(1);
                parts.push_back(part);
            }
            if (is_close) return parts;
            part_start = end;
        }
        if (nl == std::string_view::npos) break;
        pos = end;
    }
    if (part_start != std::string_view::npos && part_start <= body.size()) {
        parts.push_back(body.substr(part_start));  // unterminated final part
    }
    return parts;
}

void append_leaf_as_text(EmailDocument& doc, std::string_view body, std::string_view charset) {
    doc.text_parts.push_back(decode_charset(body, charset));
}

void walk_part(const HeaderList& headers, std::string_view body, int depth, EmailDocument& doc) {
    ContentType ct;
    if (const auto* v = header_value(headers, "Content-Type")) ct = parse_content_type(*v);

    std::string charset;
    if (const auto it = ct.params.find("charset"); it != ct.params.end()) charset = it->second;

    if (ct.type == "multipart") {
        if (depth >= kMaxMultipartDepth) {
            doc.malformed = true;
            append_leaf_as_text(doc, body, charset);
            return;
        }
        const auto it = ct.params.find("boundary");
        if (it == ct.params.end() || it->second.empty()) {
            doc.malformed = true;
            append_leaf_as_text(doc, body, charset);
            return;
        }
        const auto parts = split_multipart(body, it->second);
        if (parts.empty()) {
            doc.malformed = true;
            append_leaf_as_text(doc, body, charset);
            return;
        }
        for (const auto part : parts) {
            std::string_view part_head, part_body;
            split_head_body(part, part_head, part_body);
            walk_part(parse_headers(part_head), part_body, depth + 1, doc);
        }
        return;
    }

    TransferEncoding enc = TransferEncoding::unknown;
    if (const auto* v = header_value(headers, "Content-Transfer-Encoding")) {
        enc = transfer_encoding_from(*v);
    }
    const auto payload = decode_transfer_encoding(body, enc);
    if (ct.type == "text" && ct.subtype == "plain") {
        doc.text_parts.push_back(decode_charset(payload, charset));
    } else if (ct.type == "text" && ct.subtype == "html") {
        doc.html_parts.push_back(decode_charset(payload, charset));
    }
    // Other media types carry no content-based features and are ignored.
}

}  // namespace

EmailDocument parse_mime(const RawMessage& msg) {
    EmailDocument doc;
    std::string_view head, body;
    split_head_body(msg.bytes, head, body);
    if (head.empty() && !msg.bytes.empty()) {
        // Headerless blob: degraded parse, whole content as one text part.
        doc.malformed = true;
        doc.text_parts.push_back(decode_charset(msg.bytes, {}));
        return doc;
    }
    const auto headers = parse_headers(head);
    doc.headers = headers;
    walk_part(headers, body, 0, doc);
    if (doc.text_parts.empty() && doc.html_parts.empty()) {
        doc.text_parts.emplace_back();
    }
    return doc;
}

const std::string* find_header(const EmailDocument& doc, std::string_view name) {
    for (const auto& [key, value] : doc.headers) {
        if (ascii_iequals(key, name)) return &value;
    }
    return nullptr;
}

RawMessage read_message_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read message file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto content = std::move(buf).str();
    if (content.starts_with("From ")) {
        auto messages = parse_mbox(content, path);
        if (!messages.empty()) return std::move(messages.front());
    }
    RawMessage msg;
    msg.bytes = std::move(content);
    msg.source_file = path;
    msg.malformed = msg.bytes.empty() || !looks_like_header_line(first_line(msg.bytes));
    return msg;
}

std::vector<RawMessage> load_messages(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::exists(path)) throw std::runtime_error("corpus path does not exist: " + path);
    std::vector<RawMessage> out;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            out.push_back(read_message_file(file.string()));
        }
        return out;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read mbox file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_mbox(std::move(buf).str(), path);
}

}  // namespace phishout
