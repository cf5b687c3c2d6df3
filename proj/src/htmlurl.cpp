#include "phishout/htmlurl.hpp"

#include <array>
#include <cstdint>

#include "phishout/text.hpp"

namespace phishout {
namespace {

bool is_tag_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Parses attributes from `pos` (just past the tag name) to the closing '>'
// or end of input. Returns the index one past the tag end.
std::size_t parse_attributes(std::string_view html, std::size_t pos,
                             std::vector<std::pair<std::string, std::string>>& attrs) {
    const auto n = html.size();
    while (pos < n) {
        while (pos < n && (is_ascii_space(html[pos]) || html[pos] == '/')) ++pos;
        if (pos >= n) return n;
        if (html[pos] == '>') return pos + 1;
        const auto name_start = pos;
        while (pos < n && !is_ascii_space(html[pos]) && html[pos] != '=' && html[pos] != '>' &&
               html[pos] != '/') {
            ++pos;
        }
        std::string name = ascii_lower_copy(html.substr(name_start, pos - name_start));
        while (pos < n && is_ascii_space(html[pos])) ++pos;
        std::string value;
        if (pos < n && html[pos] == '=') {
            ++pos;
            while (pos < n && is_ascii_space(html[pos])) ++pos;
            if (pos < n && (html[pos] == '"' || html[pos] == '\'')) {
                const char quote = html[pos++];
                const auto value_start = pos;
                while (pos < n && html[pos] != quote) ++pos;
                value = std::string(html.substr(value_start, pos - value_start));
                if (pos < n) ++pos;
            } else {
                const auto value_start = pos;
                while (pos < n && !is_ascii_space(html[pos]) && html[pos] != '>') ++pos;
                value = std::string(html.substr(value_start, pos - value_start));
            }
        }
        if (!name.empty()) attrs.emplace_back(std::move(name), std::move(value));
    }
    return n;
}

// Case-insensitive search for "</a" with a tag-terminating character after.
std::size_t find_anchor_close(std::string_view html, std::size_t from) {
    for (std::size_t i = from; i + 2 < html.size(); ++i) {
        if (html[i] == '<' && html[i + 1] == '/' && ascii_lower(html[i + 2]) == 'a') {
            if (i + 3 >= html.size() || !is_tag_name_char(html[i + 3])) return i;
        }
    }
    return std::string_view::npos;
}

// Drops <...> spans without entity decoding.
std::string remove_tags(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] == '<') {
            const auto close = html.find('>', i + 1);
            if (close == std::string_view::npos) break;
            out.push_back(' ');
            i = close + 1;
            continue;
        }
        out.push_back(html[i]);
        ++i;
    }
    return out;
}

bool is_domain_token_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '.' || c == '-' || c == '_' || c == ':' || c == '/' || c == '@' || c == '%' ||
           c == '+' || c == '~' || c == '?' || c == '=' || c == '&' || c == '#';
}

std::string normalize_host(std::string_view host) {
    auto h = ascii_lower_copy(host);
    if (h.starts_with("www.") && h.size() > 4) h.erase(0, 4);
    return h;
}

// A bare token qualifies as a domain when it is dot-separated with an
// alphabetic top-level label of at least two letters.
bool is_domain_like(std::string_view token) {
    const auto dot = token.rfind('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 >= token.size()) return false;
    const auto tld = token.substr(dot + 1);
    if (tld.size() < 2) return false;
    for (char c : tld) {
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
    }
    for (char c : token) {
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '-')) {
            return false;
        }
    }
    return true;
}

// Hosts named by the visible text: full URLs contribute their parsed host,
// bare tokens contribute themselves when they look like a domain.
std::vector<std::string> visible_hosts(std::string_view text) {
    std::vector<std::string> hosts;
    std::size_t i = 0;
    const auto n = text.size();
    while (i < n) {
        if (!is_domain_token_char(text[i])) {
            ++i;
            continue;
        }
        auto end = i;
        while (end < n && is_domain_token_char(text[end])) ++end;
        auto token = text.substr(i, end - i);
        i = end;
        if (token.find("://") != std::string_view::npos) {
            if (const auto parts = split_url(token); parts && !parts->host.empty()) {
                hosts.push_back(parts->host);
            }
            continue;
        }
        // Cut a bare token down to its host-ish part.
        if (const auto cut = token.find_first_of(":/?#"); cut != std::string_view::npos) {
            token = token.substr(0, cut);
        }
        if (const auto at = token.rfind('@'); at != std::string_view::npos) {
            token = token.substr(at + 1);
        }
        while (!token.empty() && token.back() == '.') token.remove_suffix(1);
        while (!token.empty() && token.front() == '.') token.remove_prefix(1);
        if (is_domain_like(token)) hosts.push_back(ascii_lower_copy(token));
    }
    return hosts;
}

}  // namespace

std::vector<Link> extract_anchors(std::string_view html) {
    std::vector<Link> links;
    std::size_t i = 0;
    const auto n = html.size();
    while (i < n) {
        const auto lt = html.find('<', i);
        if (lt == std::string_view::npos || lt + 1 >= n) break;
        const auto c = html[lt + 1];
        if (ascii_lower(c) != 'a' || (lt + 2 < n && is_tag_name_char(html[lt + 2]))) {
            i = lt + 1;
            continue;
        }
        std::vector<std::pair<std::string, std::string>> attrs;
        const auto tag_end = parse_attributes(html, lt + 2, attrs);
        std::string href;
        bool has_href = false;
        for (auto& [name, value] : attrs) {
            if (name == "href") {
                href = value;
                has_href = true;
                break;
            }
        }
        if (has_href && !href.empty()) {
            Link link;
            link.href = std::move(href);
            link.origin = LinkOrigin::html_anchor;
            const auto close = find_anchor_close(html, tag_end);
            if (close != std::string_view::npos) {
                const auto inner = html.substr(tag_end, close - tag_end);
                link.visible_text = collapse_whitespace(decode_entities(remove_tags(inner)));
            }
            links.push_back(std::move(link));
        }
        i = tag_end;
    }
    return links;
}

std::vector<Link> extract_plaintext_urls(std::string_view text) {
    static constexpr std::array<std::string_view, 3> kSchemes = {"http://", "https://", "ftp://"};
    auto terminator = [](char c) {
        return is_ascii_space(c) || c == '<' || c == '>' || c == '"' || c == '\'' || c == ')' ||
               c == ']' || c == '}';
    };
    auto sentence_punct = [](char c) {
        return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
    };

    std::vector<Link> links;
    std::size_t i = 0;
    const auto n = text.size();
    while (i < n) {
        std::size_t scheme_len = 0;
        for (const auto scheme : kSchemes) {
            if (i + scheme.size() <= n && ascii_iequals(text.substr(i, scheme.size()), scheme)) {
                scheme_len = scheme.size();
                break;
            }
        }
        if (scheme_len == 0) {
            ++i;
            continue;
        }
        auto end = i;
        while (end < n && !terminator(text[end])) ++end;
        auto token = text.substr(i, end - i);
        while (token.size() > scheme_len && sentence_punct(token.back())) token.remove_suffix(1);
        Link link;
        link.href = std::string(token);
        link.visible_text = link.href;
        link.origin = LinkOrigin::plain_text;
        links.push_back(std::move(link));
        i = end;
    }
    return links;
}

std::optional<UrlParts> split_url(std::string_view href) {
    const auto sep = href.find("://");
    if (sep == std::string_view::npos) return std::nullopt;
    UrlParts parts;
    parts.scheme = ascii_lower_copy(href.substr(0, sep));
    auto rest = href.substr(sep + 3);
    std::size_t auth_end = 0;
    while (auth_end < rest.size() && rest[auth_end] != '/' && rest[auth_end] != '?' &&
           rest[auth_end] != '#' && !is_ascii_space(rest[auth_end])) {
        ++auth_end;
    }
    parts.authority = std::string(rest.substr(0, auth_end));
    parts.path_query = std::string(rest.substr(auth_end));

    std::string_view host = parts.authority;
    if (const auto at = host.rfind('@'); at != std::string_view::npos) {
        host = host.substr(at + 1);
    }
    if (!host.empty() && host.front() == '[') {
        if (const auto rb = host.find(']'); rb != std::string_view::npos) {
            host = host.substr(0, rb + 1);
        }
    } else if (const auto colon = host.rfind(':'); colon != std::string_view::npos) {
        bool digits = true;
        for (auto c : host.substr(colon + 1)) {
            if (c < '0' || c > '9') {
                digits = false;
                break;
            }
        }
        if (digits) host = host.substr(0, colon);
    }
    parts.host = ascii_lower_copy(host);
    return parts;
}

bool host_is_ip(std::string_view host) {
    if (host.empty()) return false;
    if (host.front() == '[' && host.back() == ']') {
        const auto inner = host.substr(1, host.size() - 2);
        if (inner.empty() || inner.find(':') == std::string_view::npos) return false;
        for (char c : inner) {
            if (!is_hex_digit(c) && c != ':' && c != '.') return false;
        }
        return true;
    }
    if (host.size() > 2 && host[0] == '0' && (host[1] == 'x' || host[1] == 'X')) {
        const auto digits = host.substr(2);
        std::uint64_t value = 0;
        for (char c : digits) {
            if (!is_hex_digit(c)) return false;
            value = value * 16 + static_cast<std::uint64_t>(hex_value(c));
            if (value > 0xFFFFFFFFull) return false;
        }
        return true;
    }
    bool all_digits = true;
    for (char c : host) {
        if (c < '0' || c > '9') {
            all_digits = false;
            break;
        }
    }
    if (all_digits) {
        std::uint64_t value = 0;
        for (char c : host) {
            value = value * 10 + static_cast<std::uint64_t>(c - '0');
            if (value > 0xFFFFFFFFull) return false;
        }
        return true;
    }
    // Dotted quad: four decimal octets, each 0-255.
    int octets = 0;
    std::size_t pos = 0;
    while (true) {
        auto dot = host.find('.', pos);
        const auto part = host.substr(pos, (dot == std::string_view::npos ? host.size() : dot) - pos);
        if (part.empty() || part.size() > 3) return false;
        int value = 0;
        for (char c : part) {
            if (c < '0' || c > '9') return false;
            value = value * 10 + (c - '0');
        }
        if (value > 255) return false;
        ++octets;
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
    }
    return octets == 4;
}

bool url_contains_at(const UrlParts& parts) {
    return parts.authority.find('@') != std::string::npos;
}

bool url_has_encoded_chars(std::string_view href) {
    for (std::size_t i = 0; i < href.size(); ++i) {
        const auto b = static_cast<unsigned char>(href[i]);
        if (b < 0x20 || b > 0x7E) return true;
        if (href[i] == '%' && i + 2 < href.size() && is_hex_digit(href[i + 1]) &&
            is_hex_digit(href[i + 2])) {
            return true;
        }
    }
    return false;
}

bool link_is_mismatch(const Link& link) {
    if (link.origin != LinkOrigin::html_anchor) return false;
    const auto parts = split_url(link.href);
    if (!parts || parts->host.empty()) return false;
    const auto href_host = normalize_host(parts->host);
    for (const auto& shown : visible_hosts(link.visible_text)) {
        if (normalize_host(shown) != href_host) return true;
    }
    return false;
}

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    const auto n = text.size();
    while (i < n) {
        if (text[i] != '&') {
            out.push_back(text[i]);
            ++i;
            continue;
        }
        const auto semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back('&');
            ++i;
            continue;
        }
        const auto name = text.substr(i + 1, semi - i - 1);
        if (name == "amp") {
            out.push_back('&');
        } else if (name == "lt") {
            out.push_back('<');
        } else if (name == "gt") {
            out.push_back('>');
        } else if (name == "quot") {
            out.push_back('"');
        } else if (name == "nbsp") {
            out.push_back(' ');
        } else if (name.size() > 1 && name[0] == '#') {
            char32_t cp = 0;
            bool ok = true;
            if (name[1] == 'x' || name[1] == 'X') {
                if (name.size() < 3) ok = false;
                for (std::size_t k = 2; ok && k < name.size(); ++k) {
                    if (!is_hex_digit(name[k])) {
                        ok = false;
                        break;
                    }
                    cp = cp * 16 + static_cast<char32_t>(hex_value(name[k]));
                    if (cp > 0x10FFFF) cp = 0x110000;
                }
            } else {
                for (std::size_t k = 1; ok && k < name.size(); ++k) {
                    if (name[k] < '0' || name[k] > '9') {
                        ok = false;
                        break;
                    }
                    cp = cp * 10 + static_cast<char32_t>(name[k] - '0');
                    if (cp > 0x10FFFF) cp = 0x110000;
                }
            }
            if (!ok) {
                out.push_back('&');
                ++i;
                continue;
            }
            append_utf8(out, cp);
        } else {
            out.push_back('&');
            ++i;
            continue;
        }
        i = semi + 1;
    }
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_space = false;
    for (char c : text) {
        if (is_ascii_space(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(c);
    }
    return out;
}

std::string strip_html_tags(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    std::size_t i = 0;
    const auto n = html.size();
    while (i < n) {
        if (html[i] != '<') {
            out.push_back(html[i]);
            ++i;
            continue;
        }
        if (html.substr(i).starts_with("<!--")) {
            const auto close = html.find("-->", i + 4);
            i = (close == std::string_view::npos) ? n : close + 3;
            out.push_back(' ');
            continue;
        }
        // Identify the tag name to drop script/style content wholesale.
        auto name_start = i + 1;
        if (name_start < n && html[name_start] == '/') ++name_start;
        auto name_end = name_start;
        while (name_end < n && is_tag_name_char(html[name_end])) ++name_end;
        const auto name = ascii_lower_copy(html.substr(name_start, name_end - name_start));
        const auto gt = html.find('>', i + 1);
        if (gt == std::string_view::npos) break;
        i = gt + 1;
        out.push_back(' ');
        if (name == "script" || name == "style") {
            const std::string closer = "</" + name;
            auto scan = i;
            auto found = std::string_view::npos;
            while (scan + closer.size() <= n) {
                if (ascii_iequals(html.substr(scan, closer.size()), closer)) {
                    found = scan;
                    break;
                }
                ++scan;
            }
            if (found == std::string_view::npos) break;
            const auto close_gt = html.find('>', found);
            i = (close_gt == std::string_view::npos) ? n : close_gt + 1;
        }
    }
    return collapse_whitespace(decode_entities(out));
}

}  // namespace phishout
