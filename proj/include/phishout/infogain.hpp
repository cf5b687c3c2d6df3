#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "phishout/dataset.hpp"

namespace phishout {

struct RankedFeature {
    std::string name;
    double gain = 0.0;               // bits
    int rank = 0;                    // 1-based
    std::vector<double> cut_points;  // sorted thresholds from the discretizer
};

// Shannon entropy in bits of a count distribution. Throws when the total is
// not positive.
double entropy(const Eigen::Ref<const Eigen::ArrayXd>& counts);

// Recursive entropy-minimizing binary splits accepted under the
// Fayyad-Irani MDL criterion. Candidate cuts are midpoints between adjacent
// distinct values whose label sets differ. Possibly empty (feature rejected).
std::vector<double> discretize_mdl(const Eigen::Ref<const Eigen::VectorXd>& values,
                                   const std::vector<Label>& labels);

// H(labels) minus the weighted entropy of the bins induced by discretize_mdl;
// 0 when the discretizer accepts no cut.
double information_gain(const Eigen::Ref<const Eigen::VectorXd>& values,
                        const std::vector<Label>& labels);

// Same, with precomputed cut points.
double information_gain(const Eigen::Ref<const Eigen::VectorXd>& values,
                        const std::vector<Label>& labels, const std::vector<double>& cuts);

// All eight features ranked by gain, descending, ties broken by canonical
// feature order. Requires at least two rows and both labels present.
std::vector<RankedFeature> rank_features(const LabeledDataset& data);

}  // namespace phishout
