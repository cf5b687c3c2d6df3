#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phishout {

// One message as carved out of an mbox archive or read from a standalone file.
struct RawMessage {
    std::string bytes;               // message content, ">From " unstuffed
    std::size_t source_offset = 0;   // byte index where the content starts in the source
    std::string source_file;
    std::string from_line;           // mbox delimiter line incl. newline; empty when none
    bool malformed = false;          // set when the first line is not a header line
};

// Decoded message: raw header list plus the text/html leaf parts in document order.
struct EmailDocument {
    std::vector<std::pair<std::string, std::string>> headers;
    std::vector<std::string> text_parts;
    std::vector<std::string> html_parts;
    bool malformed = false;
};

enum class TransferEncoding { bit7, bit8, binary, quoted_printable, base64, unknown };

TransferEncoding transfer_encoding_from(std::string_view name);

// Splits an mbox stream on "From " lines that follow a blank line or the file
// start. An undelimited file yields a single message; empty input yields none.
std::vector<RawMessage> parse_mbox(std::string_view bytes, std::string source_file = {});

// Inverse of parse_mbox: re-stuffs would-be delimiter lines and re-emits the
// recorded "From " lines, reproducing the original stream byte for byte.
std::string rejoin_mbox(const std::vector<RawMessage>& messages);

// Total decoder: invalid quoted-printable escapes and corrupt base64 runs are
// passed through verbatim instead of erroring.
std::string decode_transfer_encoding(std::string_view body, TransferEncoding encoding);

// Charset decoding. us-ascii and utf-8 decode strictly with U+FFFD
// replacement; iso-8859-1, unknown and missing charsets use the latin-1
// byte-to-codepoint mapping, which is total.
std::string decode_charset(std::string_view bytes, std::string_view charset);

// MIME parse. Never throws on message content: unparseable structure yields
// malformed=true with the whole body as a single text part.
EmailDocument parse_mime(const RawMessage& msg);

// First header whose name matches case-insensitively, or nullptr.
const std::string* find_header(const EmailDocument& doc, std::string_view name);

// Reads one RFC 5322 message from a file. A leading mbox "From " line is
// tolerated and skipped.
RawMessage read_message_file(const std::string& path);

// All messages from an mbox file or from a directory of per-message files
// (directory entries are read in filename order).
std::vector<RawMessage> load_messages(const std::string& path);

}  // namespace phishout
