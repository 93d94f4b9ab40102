#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tweetguard/sparse.hpp"

namespace tweetguard {

/// One binary sub-problem of a one-vs-rest reduction. Parameters are laid out
/// as theta = [w_0 .. w_{d-1}, b]; the bias is not penalized.
struct BinaryProblem {
    const std::vector<SparseVector>* X = nullptr;
    std::vector<double> y;  // +1 / -1
    double C = 1.0;
    std::size_t n_features = 0;

    std::size_t dim() const noexcept { return n_features + 1; }
    std::size_t n_samples() const noexcept { return y.size(); }
    /// w . x_i + b
    double margin(std::span<const double> theta, std::size_t i) const noexcept;
};

/// f(w, b) = 1/2 |w|^2 + C * sum_i ln(1 + exp(-y_i (w . x_i + b)))
double logistic_objective(const BinaryProblem& p, std::span<const double> theta,
                          std::span<double> grad = {});

/// Hessian-vector product of the logistic objective at theta.
void logistic_hessian_vector(const BinaryProblem& p, std::span<const double> theta,
                             std::span<const double> v, std::span<double> out);

/// f(w, b) = 1/2 |w|^2 + C * sum_i max(0, 1 - y_i (w . x_i + b))^2
double squared_hinge_objective(const BinaryProblem& p, std::span<const double> theta,
                               std::span<double> grad = {});

struct MinimizeResult {
    std::vector<double> theta;
    double objective = 0.0;
    double grad_inf_norm = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Objective after every accepted step, starting with the initial point.
    std::vector<double> trace;
};

enum class SolverKind { QuasiNewton, Newton, StochasticAverage };

/// Value-and-gradient callback; fills `grad` and returns the objective.
using ObjectiveFn = std::function<double(std::span<const double> theta, std::span<double> grad)>;

/// Monotone: every accepted step has f_new <= f. ApproxWolfe additionally
/// accepts steps satisfying the approximate Wolfe slope conditions when f is
/// within 1e-11 relative of the current value, which lets the solver finish
/// once f differences sink below rounding noise.
enum class LineSearch { Monotone, ApproxWolfe };

/// L-BFGS (memory 10) with backtracking line search. Stops when the gradient
/// infinity-norm is <= tol or after max_iter iterations.
MinimizeResult minimize_lbfgs(const ObjectiveFn& f, std::vector<double> theta, double tol, std::size_t max_iter,
                              LineSearch mode = LineSearch::Monotone);

/// Truncated Newton: conjugate gradient on Hessian-vector products, then a
/// backtracking line search.
MinimizeResult minimize_logistic_newton(const BinaryProblem& p, std::vector<double> theta, double tol,
                                        std::size_t max_iter);

/// SAGA with a proximal step for the L2 term. One iteration is one epoch of
/// n uniformly drawn samples; the full gradient is checked after each epoch.
MinimizeResult minimize_logistic_saga(const BinaryProblem& p, std::vector<double> theta, double tol,
                                      std::size_t max_epochs, std::uint64_t seed);

MinimizeResult minimize_logistic_lbfgs(const BinaryProblem& p, std::vector<double> theta, double tol,
                                       std::size_t max_iter);
MinimizeResult minimize_squared_hinge(const BinaryProblem& p, std::vector<double> theta, double tol,
                                      std::size_t max_iter);

double inf_norm(std::span<const double> v) noexcept;

}  // namespace tweetguard
