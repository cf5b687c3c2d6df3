#include "phishout/infogain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace phishout {

double entropy(const Eigen::Ref<const Eigen::ArrayXd>& counts) {
    const double total = counts.sum();
    if (!(total > 0.0)) throw std::invalid_argument("entropy of an empty distribution");
    double h = 0.0;
    for (Eigen::Index i = 0; i < counts.size(); ++i) {
        if (counts(i) > 0.0) {
            const double p = counts(i) / total;
            h -= p * std::log2(p);
        }
    }
    return h;
}

namespace {

double entropy2(double ham, double phish) {
    const double total = ham + phish;
    double h = 0.0;
    if (ham > 0.0) h -= (ham / total) * std::log2(ham / total);
    if (phish > 0.0) h -= (phish / total) * std::log2(phish / total);
    return h;
}

// A run of equal values: its two label counts and the set of labels seen.
struct ValueRun {
    double value = 0.0;
    double counts[2] = {0.0, 0.0};
    unsigned label_mask = 0;
};

struct MdlContext {
    std::vector<ValueRun> runs;
    std::vector<std::array<double, 2>> prefix;  // prefix[i] = counts of runs [0, i)
    std::vector<double> cuts;

    std::array<double, 2> range_counts(std::size_t lo, std::size_t hi) const {
        return {prefix[hi][0] - prefix[lo][0], prefix[hi][1] - prefix[lo][1]};
    }

    void recurse(std::size_t lo, std::size_t hi) {
        const auto totals = range_counts(lo, hi);
        const double n = totals[0] + totals[1];
        if (n < 2.0) return;
        const double h_all = entropy2(totals[0], totals[1]);
        const int k = (totals[0] > 0.0 ? 1 : 0) + (totals[1] > 0.0 ? 1 : 0);

        bool found = false;
        std::size_t best_split = lo;
        double best_weighted = 0.0;
        for (std::size_t b = lo + 1; b < hi; ++b) {
            if (runs[b - 1].label_mask == runs[b].label_mask) continue;
            const auto left = range_counts(lo, b);
            const auto right = range_counts(b, hi);
            const double n1 = left[0] + left[1];
            const double n2 = right[0] + right[1];
            const double weighted =
                (n1 * entropy2(left[0], left[1]) + n2 * entropy2(right[0], right[1])) / n;
            if (!found || weighted < best_weighted) {
                found = true;
                best_weighted = weighted;
                best_split = b;
            }
        }
        if (!found) return;

        const auto left = range_counts(lo, best_split);
        const auto right = range_counts(best_split, hi);
        const double h1 = entropy2(left[0], left[1]);
        const double h2 = entropy2(right[0], right[1]);
        const int k1 = (left[0] > 0.0 ? 1 : 0) + (left[1] > 0.0 ? 1 : 0);
        const int k2 = (right[0] > 0.0 ? 1 : 0) + (right[1] > 0.0 ? 1 : 0);
        const double gain = h_all - best_weighted;
        const double delta = std::log2(std::pow(3.0, k) - 2.0) - (k * h_all - k1 * h1 - k2 * h2);
        if (gain <= (std::log2(n - 1.0) + delta) / n) return;

        cuts.push_back((runs[best_split - 1].value + runs[best_split].value) / 2.0);
        recurse(lo, best_split);
        recurse(best_split, hi);
    }
};

}  // namespace

std::vector<double> discretize_mdl(const Eigen::Ref<const Eigen::VectorXd>& values,
                                   const std::vector<Label>& labels) {
    const auto n = static_cast<std::size_t>(values.size());
    if (n == 0 || n != labels.size()) {
        throw std::invalid_argument("discretize_mdl: values and labels must align and be non-empty");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values(static_cast<Eigen::Index>(a)) < values(static_cast<Eigen::Index>(b));
    });

    MdlContext ctx;
    for (auto idx : order) {
        const double v = values(static_cast<Eigen::Index>(idx));
        if (!std::isfinite(v)) throw std::invalid_argument("discretize_mdl: non-finite value");
        const auto label = static_cast<unsigned>(labels[idx]);
        if (ctx.runs.empty() || ctx.runs.back().value != v) {
            ctx.runs.push_back({v, {0.0, 0.0}, 0});
        }
        ctx.runs.back().counts[label] += 1.0;
        ctx.runs.back().label_mask |= 1u << label;
    }
    ctx.prefix.resize(ctx.runs.size() + 1, {0.0, 0.0});
    for (std::size_t i = 0; i < ctx.runs.size(); ++i) {
        ctx.prefix[i + 1][0] = ctx.prefix[i][0] + ctx.runs[i].counts[0];
        ctx.prefix[i + 1][1] = ctx.prefix[i][1] + ctx.runs[i].counts[1];
    }
    ctx.recurse(0, ctx.runs.size());
    std::sort(ctx.cuts.begin(), ctx.cuts.end());
    return ctx.cuts;
}

double information_gain(const Eigen::Ref<const Eigen::VectorXd>& values,
                        const std::vector<Label>& labels) {
    const auto cuts = discretize_mdl(values, labels);
    if (cuts.empty()) return 0.0;

    const auto n = static_cast<std::size_t>(values.size());
    double totals[2] = {0.0, 0.0};
    std::vector<std::array<double, 2>> bins(cuts.size() + 1, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const double v = values(static_cast<Eigen::Index>(i));
        const auto bin = static_cast<std::size_t>(
            std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin());
        bins[bin][static_cast<unsigned>(labels[i])] += 1.0;
        totals[static_cast<unsigned>(labels[i])] += 1.0;
    }
    double weighted = 0.0;
    for (const auto& bin : bins) {
        const double size = bin[0] + bin[1];
        if (size > 0.0) weighted += (size / static_cast<double>(n)) * entropy2(bin[0], bin[1]);
    }
    return std::max(0.0, entropy2(totals[0], totals[1]) - weighted);
}

std::vector<RankedFeature> rank_features(const LabeledDataset& data) {
    if (data.rows() < 2) throw std::invalid_argument("rank_features: need at least two rows");
    if (data.count(Label::ham) == 0 || data.count(Label::phish) == 0) {
        throw std::invalid_argument("rank_features: both labels must be present");
    }
    std::vector<RankedFeature> ranked(kFeatureCount);
    for (int j = 0; j < kFeatureCount; ++j) {
        ranked[j].name = std::string(kFeatureNames[j]);
        ranked[j].cut_points = discretize_mdl(data.features.col(j), data.labels);
        ranked[j].gain = information_gain(data.features.col(j), data.labels);
    }
    std::vector<int> order(kFeatureCount);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ranked[a].gain != ranked[b].gain) return ranked[a].gain > ranked[b].gain;
        return a < b;  // ties: canonical feature order
    });
    std::vector<RankedFeature> out;
    out.reserve(kFeatureCount);
    for (int pos = 0; pos < kFeatureCount; ++pos) {
        auto feature = ranked[order[static_cast<std::size_t>(pos)]];
        feature.rank = pos + 1;
        out.push_back(std::move(feature));
    }
    return out;
}

}  // namespace phishout
