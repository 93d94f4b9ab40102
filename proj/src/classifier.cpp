#include "tweetguard/classifier.hpp"

#include <sstream>

#include "tweetguard/error.hpp"

namespace tweetguard {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string model_name(const ClassifierSpec& spec) {
    return std::visit(overloaded{[](const NbSpec&) { return std::string("NB"); },
                                 [](const LogisticSpec&) { return std::string("LR"); },
                                 [](const SvmSpec&) { return std::string("SVM"); },
                                 [](const MajoritySpec&) { return std::string("Majority"); }},
                      spec);
}

std::string describe(const ClassifierSpec& spec) {
    return std::visit(
        overloaded{[](const NbSpec& s) { return "NB(alpha=" + num(s.alpha) + ")"; },
                   [](const LogisticSpec& s) {
                       return "LR(C=" + num(s.C) + ",solver=" + std::string(to_string(s.solver.kind)) + ")";
                   },
                   [](const SvmSpec& s) { return "SVM(C=" + num(s.C) + ")"; },
                   [](const MajoritySpec&) { return std::string("Majority"); }},
        spec);
}

void validate(const ClassifierSpec& spec) {
    std::visit(overloaded{[](const NbSpec& s) {
                              if (!(s.alpha >= 0.0)) throw Error("alpha must be >= 0");
                          },
                          [](const LogisticSpec& s) {
                              if (!(s.C > 0.0)) throw Error("C must be > 0");
                              validate(s.solver);
                          },
                          [](const SvmSpec& s) {
                              if (!(s.C > 0.0)) throw Error("C must be > 0");
                              if (!(s.tol > 0.0) || s.max_iter < 1) throw Error("invalid svm tolerance settings");
                          },
                          [](const MajoritySpec&) {}},
               spec);
}

Classifier fit_classifier(const ClassifierSpec& spec, const std::vector<SparseVector>& X,
                          const std::vector<Label>& y, std::size_t n_features) {
    validate(spec);
    return std::visit(
        overloaded{[&](const NbSpec& s) -> Classifier { return nb_fit(X, y, s.alpha, n_features); },
                   [&](const LogisticSpec& s) -> Classifier { return lr_fit(X, y, s.C, s.solver, n_features); },
                   [&](const SvmSpec& s) -> Classifier { return svm_fit(X, y, s.C, s.tol, s.max_iter, n_features); },
                   [&](const MajoritySpec&) -> Classifier {
                       if (y.empty()) throw Error("majority baseline: empty training set");
                       std::array<std::size_t, kNumLabels> counts{};
                       for (Label l : y) ++counts[static_cast<std::size_t>(to_index(l))];
                       std::size_t best = 0;
                       for (std::size_t c = 1; c < kNumLabels; ++c) {
                           if (counts[c] > counts[best]) best = c;
                       }
                       return MajorityModel{label_from_index(static_cast<int>(best)), n_features};
                   }},
        spec);
}

Prediction classify(const Classifier& model, const SparseVector& x) {
    return std::visit(overloaded{[&](const NbModel& m) {
                                     const auto p = nb_predict(m, x);
                                     Prediction out{p.label, {}};
                                     for (Label l : kAllLabels) {
                                         out.scores.emplace_back(l, p.log_joint[static_cast<std::size_t>(to_index(l))]);
                                     }
                                     return out;
                                 },
                                 [&](const LinearModel& m) {
                                     auto p = predict(m, x);
                                     return Prediction{p.label, std::move(p.decision)};
                                 },
                                 [&](const MajorityModel& m) {
                                     validate(x, m.n_features);
                                     Prediction out{m.label, {}};
                                     for (Label l : kAllLabels) out.scores.emplace_back(l, l == m.label ? 1.0 : 0.0);
                                     return out;
                                 }},
                      model);
}

std::size_t n_features(const Classifier& model) {
    return std::visit([](const auto& m) { return m.n_features; }, model);
}

std::string_view kind_name(const Classifier& model) {
    return std::visit(overloaded{[](const NbModel&) { return std::string_view("nb"); },
                                 [](const LinearModel& m) { return to_string(m.kind); },
                                 [](const MajorityModel&) { return std::string_view("majority"); }},
                      model);
}

}  // namespace tweetguard
