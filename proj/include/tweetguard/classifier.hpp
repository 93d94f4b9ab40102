#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "tweetguard/label.hpp"
#include "tweetguard/linear.hpp"
#include "tweetguard/naive_bayes.hpp"
#include "tweetguard/sparse.hpp"

namespace tweetguard {

struct NbSpec {
    double alpha = 1.0;
    friend bool operator==(const NbSpec&, const NbSpec&) = default;
};

struct LogisticSpec {
    double C = 1.0;
    SolverSpec solver;
    friend bool operator==(const LogisticSpec&, const LogisticSpec&) = default;
};

struct SvmSpec {
    double C = 1.0;
    double tol = 1e-6;
    std::size_t max_iter = 1000;
    friend bool operator==(const SvmSpec&, const SvmSpec&) = default;
};

/// Baseline that always predicts the most frequent training class.
struct MajoritySpec {
    friend bool operator==(const MajoritySpec&, const MajoritySpec&) = default;
};

using ClassifierSpec = std::variant<NbSpec, LogisticSpec, SvmSpec, MajoritySpec>;

/// Short model family name: NB, LR, SVM or Majority.
std::string model_name(const ClassifierSpec& spec);
/// Family name plus hyperparameters, e.g. "LR(C=100,solver=quasi_newton)".
std::string describe(const ClassifierSpec& spec);
void validate(const ClassifierSpec& spec);

struct MajorityModel {
    Label label = Label::Hateful;
    std::size_t n_features = 0;
    friend bool operator==(const MajorityModel&, const MajorityModel&) = default;
};

using Classifier = std::variant<NbModel, LinearModel, MajorityModel>;

Classifier fit_classifier(const ClassifierSpec& spec, const std::vector<SparseVector>& X,
                          const std::vector<Label>& y, std::size_t n_features);

struct Prediction {
    Label label;
    /// NB: log-joint per class; linear models: decision values; majority: 1/0.
    ClassScores scores;
};

Prediction classify(const Classifier& model, const SparseVector& x);
std::size_t n_features(const Classifier& model);
std::string_view kind_name(const Classifier& model);

}  // namespace tweetguard
