#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "tweetguard/label.hpp"
#include "tweetguard/optim.hpp"
#include "tweetguard/sparse.hpp"

namespace tweetguard {

struct SolverSpec {
    SolverKind kind = SolverKind::QuasiNewton;
    double tol = 1e-6;
    /// Iterations for the full-batch solvers, epochs for the stochastic one.
    std::size_t max_iter = 1000;
    std::uint64_t seed = 42;

    friend bool operator==(const SolverSpec&, const SolverSpec&) = default;
};

/// Defaults per solver kind: 1000 iterations, or 100 epochs for SAGA.
SolverSpec default_solver(SolverKind kind);
void validate(const SolverSpec& spec);

std::string_view to_string(SolverKind kind) noexcept;
/// Accepts quasi_newton/newton/stochastic_average and the aliases
/// liblinear/lbfgs, newton-cg, saga.
SolverKind solver_from_string(std::string_view s);

enum class LinearKind { Logistic, Svm };
std::string_view to_string(LinearKind kind) noexcept;

/// One-vs-rest linear classifier. `classes` lists the labels present at fit
/// time in encoding order; weights[i] and bias[i] belong to classes[i].
struct LinearModel {
    LinearKind kind = LinearKind::Logistic;
    std::vector<Label> classes;
    std::vector<std::vector<double>> weights;
    std::vector<double> bias;
    double C = 1.0;
    SolverSpec solver;
    std::size_t n_features = 0;

    /// Per-class convergence diagnostics.
    std::vector<bool> class_converged;
    std::vector<std::size_t> iterations;
    std::vector<double> objective;

    bool converged() const noexcept;

    friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

using ClassScores = std::vector<std::pair<Label, double>>;

struct LinearPrediction {
    Label label;
    ClassScores decision;  // one entry per model class
};

/// Per class c, minimizes 1/2 |w|^2 + C sum_i ln(1 + exp(-y_i (w . x_i + b)))
/// with y_i = +1 for class c and -1 otherwise. Requires C > 0 and at least two
/// distinct labels. Non-convergence is reported through class_converged.
LinearModel lr_fit(const std::vector<SparseVector>& X, const std::vector<Label>& y, double C,
                   const SolverSpec& solver, std::size_t n_features);

/// As lr_fit with the squared hinge loss, minimized by a deterministic
/// full-batch quasi-Newton method with monotone line search.
LinearModel svm_fit(const std::vector<SparseVector>& X, const std::vector<Label>& y, double C, double tol,
                    std::size_t max_iter, std::size_t n_features);

/// decision(c) = weights[c] . x + bias[c]; argmax with ties to the lowest
/// class encoding. Throws Error when x has an index at or beyond n_features.
LinearPrediction predict(const LinearModel& model, const SparseVector& x);

/// Builds the +1/-1 sub-problem for `positive`.
BinaryProblem make_binary_problem(const std::vector<SparseVector>& X, const std::vector<Label>& y,
                                  Label positive, double C, std::size_t n_features);

}  // namespace tweetguard
