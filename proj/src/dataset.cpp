#include "phishout/dataset.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace phishout {

const char* to_string(Label label) {
    return label == Label::phish ? "phish" : "ham";
}

long LabeledDataset::count(Label label) const {
    return static_cast<long>(std::count(labels.begin(), labels.end(), label));
}

void LabeledDataset::append(const FeatureVector& v, Label label, std::string source) {
    features.conservativeResize(features.rows() + 1, kFeatureCount);
    features.row(features.rows() - 1) = v.to_eigen().transpose();
    labels.push_back(label);
    provenance.push_back(std::move(source));
}

void LabeledDataset::reserve(Eigen::Index rows) {
    labels.reserve(static_cast<std::size_t>(rows));
    provenance.reserve(static_cast<std::size_t>(rows));
}

bool LabeledDataset::operator==(const LabeledDataset& other) const {
    return labels == other.labels && features.rows() == other.features.rows() &&
           features.cols() == other.features.cols() && features == other.features;
}

namespace {

// Extraction is pure per message, so a simple index-partitioned worker pool
// yields results identical to the sequential path.
std::vector<FeatureVector> extract_all(const std::vector<RawMessage>& messages,
                                       const PhishyDictionary& dict, int jobs) {
    std::vector<FeatureVector> out(messages.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = extract_features(parse_mime(messages[i]), dict);
        }
    };
    if (jobs <= 1 || messages.size() < 2) {
        work(0, messages.size());
        return out;
    }
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), messages.size());
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const auto chunk = (messages.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const auto begin = w * chunk;
        const auto end = std::min(begin + chunk, messages.size());
        if (begin >= end) break;
        threads.emplace_back(work, begin, end);
    }
    for (auto& t : threads) t.join();
    return out;
}

std::string row_source(const RawMessage& msg) {
    if (msg.source_file.empty()) return {};
    return msg.source_file + ":" + std::to_string(msg.source_offset);
}

}  // namespace

LabeledDataset load_labeled_corpus(const std::string& phish_path, const std::string& ham_path,
                                   const PhishyDictionary& dict, int jobs) {
    const auto phish_messages = load_messages(phish_path);
    const auto ham_messages = load_messages(ham_path);
    if (phish_messages.empty()) {
        throw std::runtime_error("no messages in phishing corpus: " + phish_path);
    }
    if (ham_messages.empty()) {
        throw std::runtime_error("no messages in ham corpus: " + ham_path);
    }

    std::vector<RawMessage> all;
    all.reserve(phish_messages.size() + ham_messages.size());
    all.insert(all.end(), phish_messages.begin(), phish_messages.end());
    all.insert(all.end(), ham_messages.begin(), ham_messages.end());
    const auto vectors = extract_all(all, dict, jobs);

    LabeledDataset data;
    data.features.resize(static_cast<Eigen::Index>(all.size()), kFeatureCount);
    data.reserve(static_cast<Eigen::Index>(all.size()));
    for (std::size_t i = 0; i < all.size(); ++i) {
        data.features.row(static_cast<Eigen::Index>(i)) = vectors[i].to_eigen().transpose();
        data.labels.push_back(i < phish_messages.size() ? Label::phish : Label::ham);
        data.provenance.push_back(row_source(all[i]));
    }
    return data;
}

}  // namespace phishout
