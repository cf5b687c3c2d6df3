#include "phishout/features.hpp"

#include <fstream>
#include <stdexcept>

#include "phishout/htmlurl.hpp"
#include "phishout/text.hpp"

namespace phishout {

FeatureRow FeatureVector::to_eigen() const {
    FeatureRow row;
    row << cap_ratio, no_links, no_links_ip, no_words, no_link_mismatch, no_phishy_words,
        is_at_present, no_link_ascii;
    return row;
}

FeatureVector FeatureVector::from_eigen(const Eigen::Ref<const Eigen::VectorXd>& row) {
    FeatureVector v;
    v.cap_ratio = row(0);
    v.no_links = row(1);
    v.no_links_ip = row(2);
    v.no_words = row(3);
    v.no_link_mismatch = row(4);
    v.no_phishy_words = row(5);
    v.is_at_present = row(6);
    v.no_link_ascii = row(7);
    return v;
}

const PhishyDictionary& PhishyDictionary::builtin() {
    static const PhishyDictionary dict = [] {
        PhishyDictionary d;
        d.words = {"account", "bank",    "verify",  "update", "confirm", "login",
                   "password", "urgent", "suspend", "security", "click",  "limited",
                   "money",    "credit", "paypal",  "ebay",     "ssn",    "billing"};
        d.source = "builtin";
        return d;
    }();
    return dict;
}

PhishyDictionary PhishyDictionary::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read phishy-word file: " + path);
    PhishyDictionary dict;
    dict.source = path;
    std::string line;
    while (std::getline(in, line)) {
        auto word = trim(line);
        if (const auto hash = word.find('#'); hash != std::string_view::npos) {
            word = trim(word.substr(0, hash));
        }
        if (word.empty()) continue;
        dict.words.insert(ascii_lower_copy(word));
    }
    if (dict.words.empty()) {
        throw std::runtime_error("phishy-word file has no entries: " + path);
    }
    return dict;
}

bool PhishyDictionary::contains(std::string_view word) const {
    return words.find(std::string(word)) != words.end();
}

std::string visible_text(const EmailDocument& doc) {
    std::string out;
    bool first = true;
    auto add = [&](std::string_view piece) {
        if (!first) out.push_back('\n');
        out.append(piece);
        first = false;
    };
    for (const auto& part : doc.text_parts) add(part);
    for (const auto& part : doc.html_parts) add(strip_html_tags(part));
    return out;
}

double cap_ratio(std::string_view text) {
    long upper = 0;
    long lower = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        switch (letter_case(next_codepoint(text, i))) {
            case LetterCase::upper: ++upper; break;
            case LetterCase::lower: ++lower; break;
            case LetterCase::none: break;
        }
    }
    if (upper + lower == 0) return 0.0;
    return static_cast<double>(upper) / static_cast<double>(upper + lower);
}

namespace {

template <typename Fn>
void for_each_word(std::string_view text, Fn&& fn) {
    std::size_t i = 0;
    std::size_t word_start = std::string_view::npos;
    while (i < text.size()) {
        const auto at = i;
        const auto cp = next_codepoint(text, i);
        if (is_word_char(cp)) {
            if (word_start == std::string_view::npos) word_start = at;
        } else if (word_start != std::string_view::npos) {
            fn(text.substr(word_start, at - word_start));
            word_start = std::string_view::npos;
        }
    }
    if (word_start != std::string_view::npos) {
        fn(text.substr(word_start));
    }
}

}  // namespace

long count_words(std::string_view text) {
    long count = 0;
    for_each_word(text, [&](std::string_view) { ++count; });
    return count;
}

long count_phishy_words(std::string_view text, const PhishyDictionary& dict) {
    long count = 0;
    for_each_word(text, [&](std::string_view word) {
        if (dict.contains(ascii_lower_copy(word))) ++count;
    });
    return count;
}

FeatureVector extract_features(const EmailDocument& doc, const PhishyDictionary& dict) {
    std::vector<Link> links;
    for (const auto& html : doc.html_parts) {
        auto anchors = extract_anchors(html);
        links.insert(links.end(), std::make_move_iterator(anchors.begin()),
                     std::make_move_iterator(anchors.end()));
    }
    for (const auto& text : doc.text_parts) {
        auto urls = extract_plaintext_urls(text);
        links.insert(links.end(), std::make_move_iterator(urls.begin()),
                     std::make_move_iterator(urls.end()));
    }

    FeatureVector v;
    v.no_links = static_cast<double>(links.size());
    for (const auto& link : links) {
        const auto parts = split_url(link.href);
        if (!parts) continue;  // counts toward NoLinks only
        if (host_is_ip(parts->host)) v.no_links_ip += 1.0;
        if (url_contains_at(*parts)) v.is_at_present = 1.0;
        if (url_has_encoded_chars(link.href)) v.no_link_ascii += 1.0;
        if (link_is_mismatch(link)) v.no_link_mismatch += 1.0;
    }

    const auto text = visible_text(doc);
    v.cap_ratio = cap_ratio(text);
    v.no_words = static_cast<double>(count_words(text));
    v.no_phishy_words = static_cast<double>(count_phishy_words(text, dict));
    return v;
}

}  // namespace phishout
