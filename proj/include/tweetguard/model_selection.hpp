#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tweetguard/classifier.hpp"
#include "tweetguard/corpus.hpp"
#include "tweetguard/preprocess.hpp"
#include "tweetguard/vectorizer.hpp"

namespace tweetguard {

/// Feature parameters plus classifier: one cell of a grid.
struct PipelineSpec {
    NgramRange ngram_range{1, 1};
    Norm norm = Norm::L2;
    ClassifierSpec classifier = NbSpec{};

    friend bool operator==(const PipelineSpec&, const PipelineSpec&) = default;
};

/// e.g. "(1,3)+L2"
std::string feature_label(const PipelineSpec& spec);
/// e.g. "(1,3)+L2 LR(C=100,solver=quasi_newton)"
std::string describe(const PipelineSpec& spec);

struct GridSpec {
    std::vector<PipelineSpec> specs;
    std::size_t k = 10;
    std::uint64_t seed = 42;
    bool stratified = false;
    /// Worker threads for grid cells; 0 picks the hardware concurrency.
    unsigned jobs = 1;
};

struct CvResult {
    PipelineSpec spec;
    std::vector<double> fold_accuracies;
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
};

struct CvReport {
    std::vector<CvResult> results;    // grid order
    std::vector<std::size_t> ranking; // indices into results, best first
    std::size_t chosen = 0;           // max mean, earliest in grid order on ties
    std::size_t k = 0;
    std::uint64_t seed = 0;

    const CvResult& best() const { return results.at(chosen); }
};

/// A seeded permutation of [0, n) cut into k contiguous chunks; the first
/// n mod k folds hold one extra index. Requires 2 <= k <= n.
std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed);

/// Shuffled indices grouped by class, dealt round-robin across the k folds.
std::vector<std::vector<std::size_t>> stratified_kfold_indices(const std::vector<Label>& labels, std::size_t k,
                                                               std::uint64_t seed);

/// Already-preprocessed data. Cross-validation reuses it across cells.
struct TokenizedData {
    std::vector<TokenSeq> docs;
    std::vector<Label> labels;
};

TokenizedData tokenize_dataset(const std::vector<LabeledTweet>& data,
                               const StopwordList& stopwords = StopwordList::english());

/// Accuracy on each held-out fold. The vectorizer and classifier are fitted
/// on the remaining folds only.
std::vector<double> cross_validate(const PipelineSpec& spec, const TokenizedData& data,
                                   const std::vector<std::vector<std::size_t>>& folds);

std::vector<double> cross_validate(const PipelineSpec& spec, const std::vector<LabeledTweet>& data, std::size_t k,
                                   std::uint64_t seed, bool stratified = false);

/// Every cell is scored on the same folds. Throws Error on an empty grid or
/// when k is outside [2, n].
CvReport grid_search(const GridSpec& grid, const std::vector<LabeledTweet>& data);
CvReport grid_search(const GridSpec& grid, const TokenizedData& data);

/// Grid configuration document; see README for the schema.
GridSpec parse_grid_config(const nlohmann::json& config);
GridSpec load_grid_config(const std::filesystem::path& path);

/// One row per cell, sorted by mean accuracy (best first).
void write_report_csv(std::ostream& out, const CvReport& report);

/// Feature combinations as rows and classifiers as columns, holding mean
/// CV accuracy; cells absent from the grid are left empty.
void write_table_csv(std::ostream& out, const CvReport& report);

}  // namespace tweetguard
