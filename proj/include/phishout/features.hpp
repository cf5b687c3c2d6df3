#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <string_view>
#include <unordered_set>

#include "phishout/corpus.hpp"

namespace phishout {

inline constexpr int kFeatureCount = 8;

// Canonical feature order used everywhere: vectors, CSV/ARFF columns, ranking.
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "capRatio",  "NoLinks",       "NoLinksIP",   "NoWords",
    "NoLinkMismatch", "NoPhishyWords", "isAtPresent", "NoLinkASCII",
};

using FeatureRow = Eigen::Matrix<double, kFeatureCount, 1>;

struct FeatureVector {
    double cap_ratio = 0.0;         // uppercase / (uppercase + lowercase), in [0,1]
    double no_links = 0.0;          // link occurrences, html anchors + plaintext urls
    double no_links_ip = 0.0;       // links whose host is an IP literal
    double no_words = 0.0;          // alphanumeric word tokens in the visible text
    double no_link_mismatch = 0.0;  // anchors whose shown domain differs from the href host
    double no_phishy_words = 0.0;   // word tokens found in the phishy dictionary
    double is_at_present = 0.0;     // 1 when any link authority contains '@'
    double no_link_ascii = 0.0;     // links with percent-escapes or non-printable bytes

    FeatureRow to_eigen() const;
    static FeatureVector from_eigen(const Eigen::Ref<const Eigen::VectorXd>& row);
};

struct PhishyDictionary {
    std::unordered_set<std::string> words;  // lowercase, no whitespace
    std::string source = "builtin";

    static const PhishyDictionary& builtin();
    // One lowercase word per line, '#' comments ignored. Throws when the file
    // is unreadable or yields an empty dictionary.
    static PhishyDictionary from_file(const std::string& path);
    bool contains(std::string_view word) const;
};

// Text parts plus tag-stripped, entity-decoded HTML parts, newline-joined.
std::string visible_text(const EmailDocument& doc);

// Ratio of uppercase letters among all cased letters; 0 when there are none.
double cap_ratio(std::string_view text);

// Number of maximal alphanumeric runs.
long count_words(std::string_view text);

// Word tokens (lowercased) that are dictionary members, occurrences counted.
long count_phishy_words(std::string_view text, const PhishyDictionary& dict);

FeatureVector extract_features(const EmailDocument& doc, const PhishyDictionary& dict);

}  // namespace phishout
