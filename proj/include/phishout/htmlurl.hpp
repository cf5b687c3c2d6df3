#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phishout {

enum class LinkOrigin { html_anchor, plain_text };

struct Link {
    std::string href;          // raw attribute value, undecoded
    std::string visible_text;  // anchor inner text, entity-decoded, whitespace-collapsed
    LinkOrigin origin = LinkOrigin::html_anchor;
};

struct UrlParts {
    std::string scheme;      // lowercase
    std::string authority;   // userinfo@host:port as written
    std::string host;        // lowercase, port stripped
    std::string path_query;
};

// Tolerant anchor scanner: every <a> with an href attribute, in document
// order, duplicates preserved. Never raises on malformed markup.
std::vector<Link> extract_anchors(std::string_view html);

// http/https/ftp tokens in plain text, terminated by whitespace or one of
// <>"')]} with trailing sentence punctuation stripped.
std::vector<Link> extract_plaintext_urls(std::string_view text);

// nullopt when the string has no "://" separator. The authority stops at the
// first of / ? # or whitespace, so the host never contains either.
std::optional<UrlParts> split_url(std::string_view href);

// Dotted-quad IPv4, pure decimal or 0x-hex 32-bit integer, or a bracketed
// IPv6 literal.
bool host_is_ip(std::string_view host);

bool url_contains_at(const UrlParts& parts);

// Percent-escape %XX or any byte outside printable ASCII in the raw href.
bool url_has_encoded_chars(std::string_view href);

// True when the anchor's visible text shows a domain whose host differs from
// the href host (case-folded, single leading "www." stripped on both sides).
// Plain-text links are never mismatches.
bool link_is_mismatch(const Link& link);

// HTML helpers shared with visible-text extraction.
std::string decode_entities(std::string_view text);
std::string collapse_whitespace(std::string_view text);

// Visible text of an HTML fragment: comments and script/style content
// dropped, tags replaced with spaces, entities decoded, whitespace collapsed.
std::string strip_html_tags(std::string_view html);

}  // namespace phishout
