#include "tweetguard/naive_bayes.hpp"

#include <cmath>
#include <string>

#include "tweetguard/argmax.hpp"
#include "tweetguard/error.hpp"

namespace tweetguard {

NbModel nb_fit(const std::vector<SparseVector>& X, const std::vector<Label>& y, double alpha,
               std::size_t n_features) {
    if (X.empty()) throw Error("naive bayes: empty training set");
    if (X.size() != y.size()) throw Error("naive bayes: X and y lengths differ");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error("naive bayes: alpha must be finite and >= 0");
    if (n_features == 0) throw Error("naive bayes: no features");

    std::array<std::size_t, kNumLabels> class_count{};
    std::array<std::vector<double>, kNumLabels> feature_count;
    for (auto& row : feature_count) row.assign(n_features, 0.0);

    for (std::size_t i = 0; i < X.size(); ++i) {
        validate(X[i], n_features);
        const auto c = static_cast<std::size_t>(to_index(y[i]));
        ++class_count[c];
        for (std::size_t k = 0; k < X[i].nnz(); ++k) {
            if (X[i].values[k] < 0.0) throw Error("naive bayes: feature values must be non-negative");
            feature_count[c][X[i].indices[k]] += X[i].values[k];
        }
    }
    for (Label l : kAllLabels) {
        if (class_count[static_cast<std::size_t>(to_index(l))] == 0) {
            throw Error("naive bayes: class " + std::string(to_string(l)) + " not represented in training labels");
        }
    }

    NbModel model;
    model.alpha = alpha;
    model.n_features = n_features;
    const double n = static_cast<double>(X.size());
    const double v = static_cast<double>(n_features);
    for (std::size_t c = 0; c < kNumLabels; ++c) {
        model.class_log_prior[c] = std::log(static_cast<double>(class_count[c]) / n);
        double total = 0.0;
        for (double x : feature_count[c]) total += x;
        const double denom = total + alpha * v;
        auto& row = model.feature_log_prob[c];
        row.resize(n_features);
        for (std::size_t t = 0; t < n_features; ++t) {
            const double numer = feature_count[c][t] + alpha;
            if (numer <= 0.0) {
                throw Error("naive bayes: alpha = 0 leaves feature " + std::to_string(t) +
                            " with zero probability in class " + std::string(to_string(label_from_index(static_cast<int>(c)))));
            }
            row[t] = std::log(numer / denom);
        }
    }
    return model;
}

NbPrediction nb_predict(const NbModel& model, const SparseVector& x) {
    validate(x, model.n_features);
    NbPrediction out{Label::Hateful, model.class_log_prior};
    for (std::size_t c = 0; c < kNumLabels; ++c) {
        const auto& row = model.feature_log_prob[c];
        for (std::size_t k = 0; k < x.nnz(); ++k) out.log_joint[c] += x.values[k] * row[x.indices[k]];
    }
    out.label = label_from_index(static_cast<int>(argmax_lowest(out.log_joint)));
    return out;
}

}  // namespace tweetguard
