#include "tweetguard/linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tweetguard/argmax.hpp"
#include "tweetguard/error.hpp"
#include "tweetguard/text_util.hpp"

namespace tweetguard {

SolverSpec default_solver(SolverKind kind) {
    SolverSpec spec;
    spec.kind = kind;
    spec.max_iter = kind == SolverKind::StochasticAverage ? 100 : 1000;
    return spec;
}

void validate(const SolverSpec& spec) {
    if (!(spec.tol > 0.0)) throw Error("solver tol must be > 0");
    if (spec.max_iter < 1) throw Error("solver max_iter must be >= 1");
}

std::string_view to_string(SolverKind kind) noexcept {
    switch (kind) {
        case SolverKind::QuasiNewton: return "quasi_newton";
        case SolverKind::Newton: return "newton";
        case SolverKind::StochasticAverage: return "stochastic_average";
    }
    return "quasi_newton";
}

SolverKind solver_from_string(std::string_view s) {
    const auto key = ascii_lower(s);
    if (key == "quasi_newton" || key == "liblinear" || key == "lbfgs") return SolverKind::QuasiNewton;
    if (key == "newton" || key == "newton-cg" || key == "newton_cg") return SolverKind::Newton;
    if (key == "stochastic_average" || key == "saga") return SolverKind::StochasticAverage;
    throw Error("unknown solver \"" + std::string(s) + "\"");
}

std::string_view to_string(LinearKind kind) noexcept { return kind == LinearKind::Logistic ? "logistic" : "svm"; }

bool LinearModel::converged() const noexcept {
    return std::all_of(class_converged.begin(), class_converged.end(), [](bool b) { return b; });
}

BinaryProblem make_binary_problem(const std::vector<SparseVector>& X, const std::vector<Label>& y, Label positive,
                                  double C, std::size_t n_features) {
    BinaryProblem p;
    p.X = &X;
    p.C = C;
    p.n_features = n_features;
    p.y.reserve(y.size());
    for (Label l : y) p.y.push_back(l == positive ? 1.0 : -1.0);
    return p;
}

namespace {

std::vector<Label> check_inputs(const std::vector<SparseVector>& X, const std::vector<Label>& y, double C,
                                std::size_t n_features, std::string_view who) {
    const std::string prefix = std::string(who) + ": ";
    if (!(C > 0.0) || !std::isfinite(C)) throw Error(prefix + "C must be finite and > 0");
    if (X.size() != y.size()) throw Error(prefix + "X and y lengths differ");
    if (X.size() < 2) throw Error(prefix + "need at least two samples");
    for (const auto& x : X) validate(x, n_features);
    std::vector<Label> classes;
    for (Label l : kAllLabels) {
        if (std::find(y.begin(), y.end(), l) != y.end()) classes.push_back(l);
    }
    if (classes.size() < 2) throw Error(prefix + "training labels contain a single class");
    return classes;
}

template <typename Solve>
LinearModel fit_one_vs_rest(const std::vector<SparseVector>& X, const std::vector<Label>& y, double C,
                            std::size_t n_features, std::vector<Label> classes, const Solve& solve) {
    LinearModel model;
    model.C = C;
    model.n_features = n_features;
    model.classes = std::move(classes);
    for (Label c : model.classes) {
        const auto problem = make_binary_problem(X, y, c, C, n_features);
        auto res = solve(problem, std::vector<double>(problem.dim(), 0.0));
        model.bias.push_back(res.theta[n_features]);
        res.theta.resize(n_features);
        model.weights.push_back(std::move(res.theta));
        model.class_converged.push_back(res.converged);
        model.iterations.push_back(res.iterations);
        model.objective.push_back(res.objective);
    }
    return model;
}

}  // namespace

LinearModel lr_fit(const std::vector<SparseVector>& X, const std::vector<Label>& y, double C,
                   const SolverSpec& solver, std::size_t n_features) {
    validate(solver);
    auto classes = check_inputs(X, y, C, n_features, "logistic regression");
    auto model = fit_one_vs_rest(X, y, C, n_features, std::move(classes),
                                 [&solver](const BinaryProblem& p, std::vector<double> init) {
                                     switch (solver.kind) {
                                         case SolverKind::Newton:
                                             return minimize_logistic_newton(p, std::move(init), solver.tol,
                                                                             solver.max_iter);
                                         case SolverKind::StochasticAverage:
                                             return minimize_logistic_saga(p, std::move(init), solver.tol,
                                                                           solver.max_iter, solver.seed);
                                         case SolverKind::QuasiNewton:
                                         default:
                                             return minimize_logistic_lbfgs(p, std::move(init), solver.tol,
                                                                            solver.max_iter);
                                     }
                                 });
    model.kind = LinearKind::Logistic;
    model.solver = solver;
    return model;
}

LinearModel svm_fit(const std::vector<SparseVector>& X, const std::vector<Label>& y, double C, double tol,
                    std::size_t max_iter, std::size_t n_features) {
    SolverSpec spec{SolverKind::QuasiNewton, tol, max_iter, 0};
    validate(spec);
    auto classes = check_inputs(X, y, C, n_features, "svm");
    auto model = fit_one_vs_rest(X, y, C, n_features, std::move(classes),
                                 [&](const BinaryProblem& p, std::vector<double> init) {
                                     return minimize_squared_hinge(p, std::move(init), tol, max_iter);
                                 });
    model.kind = LinearKind::Svm;
    model.solver = spec;
    return model;
}

LinearPrediction predict(const LinearModel& model, const SparseVector& x) {
    validate(x, model.n_features);
    LinearPrediction out;
    std::vector<double> values;
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        values.push_back(x.dot(model.weights[c]) + model.bias[c]);
        out.decision.emplace_back(model.classes[c], values.back());
    }
    out.label = model.classes.empty() ? Label::Hateful : model.classes[argmax_lowest(values)];
    return out;
}

}  // namespace tweetguard
