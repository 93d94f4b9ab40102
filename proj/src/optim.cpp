#include "tweetguard/optim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "tweetguard/rng.hpp"

namespace tweetguard {
namespace {

// ln(1 + e^t) without overflow
double log1p_exp(double t) noexcept { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double sigmoid(double t) noexcept {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double half_sq_weights(const BinaryProblem& p, std::span<const double> theta) noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < p.n_features; ++k) s += theta[k] * theta[k];
    return 0.5 * s;
}

// Adds the regularizer gradient (w, 0) and scatters per-sample coefficients.
void accumulate_gradient(const BinaryProblem& p, std::span<const double> theta, std::span<const double> coef,
                         std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    const auto& X = *p.X;
    double gb = 0.0;
    for (std::size_t i = 0; i < p.n_samples(); ++i) {
        if (coef[i] == 0.0) continue;
        X[i].axpy_into(coef[i], grad.first(p.n_features));
        gb += coef[i];
    }
    for (std::size_t k = 0; k < p.n_features; ++k) grad[k] += theta[k];
    grad[p.n_features] = gb;
}

bool accept_step(LineSearch mode, double f0, double slope0, double t, double f_new, double slope_new) noexcept {
    constexpr double kArmijo = 1e-4;
    if (f_new <= f0 + kArmijo * t * slope0) return true;
    // Near the optimum the predicted decrease drops below the rounding noise
    // of f; accept a non-increasing step that still flattens the slope.
    if (f_new <= f0 && std::abs(slope_new) <= 0.9 * std::abs(slope0)) return true;
    if (mode == LineSearch::Monotone) return false;
    // Approximate Wolfe (Hager & Zhang): judge the step by the slope alone
    // and tolerate an f increase at the level of its rounding noise.
    constexpr double kDelta = 0.1, kSigma = 0.9, kNoise = 1e-11;
    return f_new <= f0 + kNoise * std::max(1.0, std::abs(f0)) && slope_new >= kSigma * slope0 &&
           slope_new <= (2.0 * kDelta - 1.0) * slope0;
}

struct LineSearchResult {
    bool ok = false;
    double t = 0.0;
    double f = 0.0;
};

template <typename Eval>
LineSearchResult backtrack(LineSearch mode, const Eval& eval, std::span<const double> theta,
                           std::span<const double> dir, double f0, double slope0, double t0, std::vector<double>& trial,
                           std::vector<double>& trial_grad) {
    double t = t0;
    for (int attempt = 0; attempt < 60; ++attempt) {
        for (std::size_t k = 0; k < theta.size(); ++k) trial[k] = theta[k] + t * dir[k];
        const double f_new = eval(trial, trial_grad);
        if (std::isfinite(f_new) && accept_step(mode, f0, slope0, t, f_new, dot(trial_grad, dir))) {
            return {true, t, f_new};
        }
        t *= 0.5;
    }
    return {};
}

}  // namespace

double inf_norm(std::span<const double> v) noexcept {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double BinaryProblem::margin(std::span<const double> theta, std::size_t i) const noexcept {
    return (*X)[i].dot(theta.first(n_features)) + theta[n_features];
}

double logistic_objective(const BinaryProblem& p, std::span<const double> theta, std::span<double> grad) {
    double loss = 0.0;
    std::vector<double> coef(grad.empty() ? 0 : p.n_samples());
    for (std::size_t i = 0; i < p.n_samples(); ++i) {
        const double z = p.y[i] * p.margin(theta, i);
        loss += log1p_exp(-z);
        if (!grad.empty()) coef[i] = -p.C * p.y[i] * sigmoid(-z);
    }
    if (!grad.empty()) accumulate_gradient(p, theta, coef, grad);
    return half_sq_weights(p, theta) + p.C * loss;
}

void logistic_hessian_vector(const BinaryProblem& p, std::span<const double> theta, std::span<const double> v,
                             std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const auto& X = *p.X;
    const double vb = v[p.n_features];
    double ob = 0.0;
    for (std::size_t i = 0; i < p.n_samples(); ++i) {
        const double z = p.y[i] * p.margin(theta, i);
        const double s = sigmoid(z) * sigmoid(-z);
        const double xv = X[i].dot(v.first(p.n_features)) + vb;
        const double c = p.C * s * xv;
        X[i].axpy_into(c, out.first(p.n_features));
        ob += c;
    }
    for (std::size_t k = 0; k < p.n_features; ++k) out[k] += v[k];
    out[p.n_features] = ob;
}

double squared_hinge_objective(const BinaryProblem& p, std::span<const double> theta, std::span<double> grad) {
    double loss = 0.0;
    std::vector<double> coef(grad.empty() ? 0 : p.n_samples());
    for (std::size_t i = 0; i < p.n_samples(); ++i) {
        const double slack = std::max(0.0, 1.0 - p.y[i] * p.margin(theta, i));
        loss += slack * slack;
        if (!grad.empty()) coef[i] = -2.0 * p.C * p.y[i] * slack;
    }
    if (!grad.empty()) accumulate_gradient(p, theta, coef, grad);
    return half_sq_weights(p, theta) + p.C * loss;
}

MinimizeResult minimize_lbfgs(const ObjectiveFn& f, std::vector<double> theta, double tol, std::size_t max_iter,
                              LineSearch mode) {
    constexpr std::size_t kMemory = 10;
    const std::size_t d = theta.size();
    std::vector<double> grad(d), dir(d), trial(d), trial_grad(d);
    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    MinimizeResult res;
    double fx = f(theta, grad);
    res.trace.push_back(fx);

    std::size_t it = 0;
    for (; it < max_iter; ++it) {
        if (inf_norm(grad) <= tol) break;

        // two-loop recursion
        for (std::size_t k = 0; k < d; ++k) dir[k] = -grad[k];
        std::vector<double> alpha(s_hist.size());
        for (std::size_t h = s_hist.size(); h-- > 0;) {
            alpha[h] = rho_hist[h] * dot(s_hist[h], dir);
            for (std::size_t k = 0; k < d; ++k) dir[k] -= alpha[h] * y_hist[h][k];
        }
        double t0 = 1.0;
        if (!s_hist.empty()) {
            const auto& s = s_hist.back();
            const auto& y = y_hist.back();
            const double gamma = dot(s, y) / dot(y, y);
            for (double& x : dir) x *= gamma;
        } else {
            t0 = std::min(1.0, 1.0 / std::max(inf_norm(grad), 1e-300));
        }
        for (std::size_t h = 0; h < s_hist.size(); ++h) {
            const double beta = rho_hist[h] * dot(y_hist[h], dir);
            for (std::size_t k = 0; k < d; ++k) dir[k] += (alpha[h] - beta) * s_hist[h][k];
        }

        double slope = dot(grad, dir);
        if (!(slope < 0.0)) {
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t k = 0; k < d; ++k) dir[k] = -grad[k];
            slope = dot(grad, dir);
            t0 = std::min(1.0, 1.0 / std::max(inf_norm(grad), 1e-300));
        }

        auto ls = backtrack(mode, f, theta, dir, fx, slope, t0, trial, trial_grad);
        if (!ls.ok && !s_hist.empty()) {
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t k = 0; k < d; ++k) dir[k] = -grad[k];
            slope = dot(grad, dir);
            ls = backtrack(mode, f, theta, dir, fx, slope, std::min(1.0, 1.0 / inf_norm(grad)), trial, trial_grad);
        }
        if (!ls.ok) break;  // stalled: no representable decrease left

        std::vector<double> s(d), y(d);
        for (std::size_t k = 0; k < d; ++k) {
            s[k] = trial[k] - theta[k];
            y[k] = trial_grad[k] - grad[k];
        }
        const double sy = dot(s, y);
        if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > kMemory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        theta.swap(trial);
        grad.swap(trial_grad);
        fx = ls.f;
        res.trace.push_back(fx);
    }

    res.grad_inf_norm = inf_norm(grad);
    res.converged = res.grad_inf_norm <= tol;
    res.iterations = it;
    res.objective = fx;
    res.theta = std::move(theta);
    return res;
}

MinimizeResult minimize_logistic_lbfgs(const BinaryProblem& p, std::vector<double> theta, double tol,
                                       std::size_t max_iter) {
    return minimize_lbfgs([&p](std::span<const double> th, std::span<double> g) { return logistic_objective(p, th, g); },
                          std::move(theta), tol, max_iter, LineSearch::ApproxWolfe);
}

MinimizeResult minimize_squared_hinge(const BinaryProblem& p, std::vector<double> theta, double tol,
                                      std::size_t max_iter) {
    return minimize_lbfgs(
        [&p](std::span<const double> th, std::span<double> g) { return squared_hinge_objective(p, th, g); },
        std::move(theta), tol, max_iter, LineSearch::Monotone);
}

MinimizeResult minimize_logistic_newton(const BinaryProblem& p, std::vector<double> theta, double tol,
                                        std::size_t max_iter) {
    const std::size_t d = theta.size();
    const std::size_t max_cg = std::min<std::size_t>(d, 250);
    std::vector<double> grad(d), dir(d), r(d), q(d), hq(d), trial(d), trial_grad(d);
    auto eval = [&p](std::span<const double> th, std::span<double> g) { return logistic_objective(p, th, g); };

    MinimizeResult res;
    double fx = eval(theta, grad);
    res.trace.push_back(fx);

    std::size_t it = 0;
    for (; it < max_iter; ++it) {
        if (inf_norm(grad) <= tol) break;

        // CG on H dir = -grad, stopped at a forcing tolerance
        const double gnorm = std::sqrt(dot(grad, grad));
        const double cg_tol = std::min(0.5, std::sqrt(gnorm)) * gnorm;
        std::fill(dir.begin(), dir.end(), 0.0);
        for (std::size_t k = 0; k < d; ++k) r[k] = q[k] = -grad[k];
        double rr = dot(r, r);
        for (std::size_t cg = 0; cg < max_cg && std::sqrt(rr) > cg_tol; ++cg) {
            logistic_hessian_vector(p, theta, q, hq);
            const double curv = dot(q, hq);
            if (curv <= 0.0) break;
            const double a = rr / curv;
            for (std::size_t k = 0; k < d; ++k) {
                dir[k] += a * q[k];
                r[k] -= a * hq[k];
            }
            const double rr_new = dot(r, r);
            const double b = rr_new / rr;
            rr = rr_new;
            for (std::size_t k = 0; k < d; ++k) q[k] = r[k] + b * q[k];
        }
        double slope = dot(grad, dir);
        if (!(slope < 0.0)) {
            for (std::size_t k = 0; k < d; ++k) dir[k] = -grad[k];
            slope = dot(grad, dir);
        }

        const auto ls = backtrack(LineSearch::ApproxWolfe, eval, theta, dir, fx, slope, 1.0, trial, trial_grad);
        if (!ls.ok) break;
        theta.swap(trial);
        grad.swap(trial_grad);
        fx = ls.f;
        res.trace.push_back(fx);
    }

    res.grad_inf_norm = inf_norm(grad);
    res.converged = res.grad_inf_norm <= tol;
    res.iterations = it;
    res.objective = fx;
    res.theta = std::move(theta);
    return res;
}

MinimizeResult minimize_logistic_saga(const BinaryProblem& p, std::vector<double> theta, double tol,
                                      std::size_t max_epochs, std::uint64_t seed) {
    const std::size_t n = p.n_samples();
    const std::size_t nf = p.n_features;
    const std::size_t d = theta.size();
    const auto& X = *p.X;
    const double scale = static_cast<double>(n);

    // The smooth part is (1/n) sum_j h_j with h_j = n * C * loss_j, whose
    // gradient is Lipschitz with constant n * C * (|x_j|^2 + 1) / 4.
    double l_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) l_max = std::max(l_max, scale * p.C * (X[j].squared_norm() + 1.0) / 4.0);
    const double eta = 1.0 / (3.0 * l_max);
    const double shrink = 1.0 / (1.0 + eta);

    // Stored per-sample gradient scalars and their running sum.
    std::vector<double> memory(n);
    std::vector<double> sum_grad(d, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double z = p.y[j] * p.margin(theta, j);
        memory[j] = -p.C * p.y[j] * sigmoid(-z);
        X[j].axpy_into(memory[j], std::span<double>(sum_grad).first(nf));
        sum_grad[nf] += memory[j];
    }

    Xorshift64Star rng(seed);
    std::vector<double> grad(d);
    MinimizeResult res;
    double fx = logistic_objective(p, theta, grad);
    res.trace.push_back(fx);

    std::size_t epoch = 0;
    for (; epoch < max_epochs; ++epoch) {
        if (inf_norm(grad) <= tol) break;
        for (std::size_t step = 0; step < n; ++step) {
            const auto j = static_cast<std::size_t>(rng.uniform_below(n));
            const double z = p.y[j] * p.margin(theta, j);
            const double fresh = -p.C * p.y[j] * sigmoid(-z);
            const double delta = fresh - memory[j];

            for (std::size_t k = 0; k < d; ++k) theta[k] -= eta * sum_grad[k];
            X[j].axpy_into(-eta * scale * delta, std::span<double>(theta).first(nf));
            theta[nf] -= eta * scale * delta;
            for (std::size_t k = 0; k < nf; ++k) theta[k] *= shrink;

            X[j].axpy_into(delta, std::span<double>(sum_grad).first(nf));
            sum_grad[nf] += delta;
            memory[j] = fresh;
        }
        fx = logistic_objective(p, theta, grad);
        res.trace.push_back(fx);
    }

    res.grad_inf_norm = inf_norm(grad);
    res.converged = res.grad_inf_norm <= tol;
    res.iterations = epoch;
    res.objective = fx;
    res.theta = std::move(theta);
    return res;
}

}  // namespace tweetguard
