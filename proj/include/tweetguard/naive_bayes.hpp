#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tweetguard/label.hpp"
#include "tweetguard/sparse.hpp"

namespace tweetguard {

/// Multinomial Naive Bayes with additive (Lidstone) smoothing.
struct NbModel {
    std::array<double, kNumLabels> class_log_prior{};
    /// feature_log_prob[c][t] = ln theta_{t,c}
    std::array<std::vector<double>, kNumLabels> feature_log_prob;
    double alpha = 1.0;
    std::size_t n_features = 0;

    friend bool operator==(const NbModel&, const NbModel&) = default;
};

/// theta_{t,c} = (N_{t,c} + alpha) / (N_c + alpha * n_features), where N_{t,c}
/// sums feature t over class-c documents. Feature values may be fractional
/// (TFIDF) but must be non-negative. Every class must occur in `y`;
/// alpha = 0 requires every feature to occur in every class.
NbModel nb_fit(const std::vector<SparseVector>& X, const std::vector<Label>& y, double alpha,
               std::size_t n_features);

struct NbPrediction {
    Label label;
    std::array<double, kNumLabels> log_joint;
};

/// argmax_c class_log_prior[c] + sum_t x_t * feature_log_prob[c][t]; ties go
/// to the lowest class encoding.
NbPrediction nb_predict(const NbModel& model, const SparseVector& x);

}  // namespace tweetguard
