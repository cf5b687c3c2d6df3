#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "phishout/features.hpp"

namespace phishout {

enum class Label { ham = 0, phish = 1 };

const char* to_string(Label label);

// Feature matrix (one row per message, canonical column order) with labels.
struct LabeledDataset {
    Eigen::MatrixXd features;              // rows x kFeatureCount
    std::vector<Label> labels;             // size rows
    std::vector<std::string> provenance;   // per-row source note, may be empty

    Eigen::Index rows() const { return features.rows(); }
    long count(Label label) const;
    void append(const FeatureVector& v, Label label, std::string source = {});
    void reserve(Eigen::Index rows);

    // Equality over features (bitwise), labels and size; provenance is a
    // debugging aid and does not participate.
    bool operator==(const LabeledDataset& other) const;
};

// Parses both corpora, extracts features for every message and labels rows
// by source. Throws when a path is missing or a source yields no messages.
LabeledDataset load_labeled_corpus(const std::string& phish_path, const std::string& ham_path,
                                   const PhishyDictionary& dict = PhishyDictionary::builtin(),
                                   int jobs = 1);

}  // namespace phishout
