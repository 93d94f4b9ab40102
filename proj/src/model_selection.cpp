#include "tweetguard/model_selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "tweetguard/csv.hpp"
#include "tweetguard/error.hpp"
#include "tweetguard/rng.hpp"

namespace tweetguard {

using nlohmann::json;

std::string feature_label(const PipelineSpec& spec) {
    std::string norm(to_string(spec.norm));
    std::transform(norm.begin(), norm.end(), norm.begin(), [](char c) { return static_cast<char>(std::toupper(c)); });
    return "(" + std::to_string(spec.ngram_range.min_n) + "," + std::to_string(spec.ngram_range.max_n) + ")+" + norm;
}

std::string describe(const PipelineSpec& spec) { return feature_label(spec) + " " + describe(spec.classifier); }

namespace {

void check_folds(std::size_t n, std::size_t k) {
    if (k < 2) throw Error("k-fold: k must be at least 2");
    if (k > n) {
        throw Error("k-fold: k = " + std::to_string(k) + " exceeds the number of samples (" + std::to_string(n) + ")");
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
    check_folds(n, k);
    const auto perm = seeded_permutation(n, seed);
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = n / k + (f < n % k ? 1 : 0);
        folds[f].assign(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                        perm.begin() + static_cast<std::ptrdiff_t>(pos + size));
        pos += size;
    }
    return folds;
}

std::vector<std::vector<std::size_t>> stratified_kfold_indices(const std::vector<Label>& labels, std::size_t k,
                                                               std::uint64_t seed) {
    check_folds(labels.size(), k);
    auto order = seeded_permutation(labels.size(), seed);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return to_index(labels[a]) < to_index(labels[b]); });
    std::vector<std::vector<std::size_t>> folds(k);
    for (std::size_t i = 0; i < order.size(); ++i) folds[i % k].push_back(order[i]);
    return folds;
}

TokenizedData tokenize_dataset(const std::vector<LabeledTweet>& data, const StopwordList& stopwords) {
    TokenizedData out;
    out.docs.reserve(data.size());
    out.labels.reserve(data.size());
    for (const auto& t : data) {
        out.docs.push_back(preprocess(t.text, stopwords));
        out.labels.push_back(t.label);
    }
    return out;
}

std::vector<double> cross_validate(const PipelineSpec& spec, const TokenizedData& data,
                                   const std::vector<std::vector<std::size_t>>& folds) {
    const std::size_t n = data.docs.size();
    std::vector<double> accuracies;
    accuracies.reserve(folds.size());
    std::vector<char> held_out(n);
    for (const auto& fold : folds) {
        std::fill(held_out.begin(), held_out.end(), 0);
        for (std::size_t i : fold) held_out.at(i) = 1;

        std::vector<TokenSeq> train_docs;
        std::vector<Label> train_y;
        for (std::size_t i = 0; i < n; ++i) {
            if (held_out[i]) continue;
            train_docs.push_back(data.docs[i]);
            train_y.push_back(data.labels[i]);
        }
        const auto model = fit(train_docs, spec.ngram_range, spec.norm);
        std::vector<SparseVector> X;
        X.reserve(train_docs.size());
        for (const auto& d : train_docs) X.push_back(transform(d, model));
        const auto clf = fit_classifier(spec.classifier, X, train_y, model.n_features());

        std::size_t correct = 0;
        for (std::size_t i : fold) {
            if (classify(clf, transform(data.docs[i], model)).label == data.labels[i]) ++correct;
        }
        accuracies.push_back(static_cast<double>(correct) / static_cast<double>(fold.size()));
    }
    return accuracies;
}

std::vector<double> cross_validate(const PipelineSpec& spec, const std::vector<LabeledTweet>& data, std::size_t k,
                                   std::uint64_t seed, bool stratified) {
    const auto tokens = tokenize_dataset(data);
    const auto folds = stratified ? stratified_kfold_indices(tokens.labels, k, seed)
                                  : kfold_indices(tokens.docs.size(), k, seed);
    return cross_validate(spec, tokens, folds);
}

CvReport grid_search(const GridSpec& grid, const TokenizedData& data) {
    if (grid.specs.empty()) throw Error("grid search: empty grid");
    for (const auto& s : grid.specs) {
        validate(s.ngram_range);
        validate(s.classifier);
    }
    const auto folds = grid.stratified ? stratified_kfold_indices(data.labels, grid.k, grid.seed)
                                       : kfold_indices(data.docs.size(), grid.k, grid.seed);

    CvReport report;
    report.k = grid.k;
    report.seed = grid.seed;
    report.results.resize(grid.specs.size());

    auto run_cell = [&](std::size_t idx) {
        CvResult r;
        r.spec = grid.specs[idx];
        r.fold_accuracies = cross_validate(r.spec, data, folds);
        const double k = static_cast<double>(r.fold_accuracies.size());
        r.mean = std::accumulate(r.fold_accuracies.begin(), r.fold_accuracies.end(), 0.0) / k;
        double ss = 0.0;
        for (double a : r.fold_accuracies) ss += (a - r.mean) * (a - r.mean);
        r.stddev = std::sqrt(ss / k);
        report.results[idx] = std::move(r);
    };

    unsigned jobs = grid.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : grid.jobs;
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(grid.specs.size()));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < grid.specs.size(); ++i) run_cell(i);
    } else {
        // Cells write to their own slot, so completion order is irrelevant.
        std::atomic<std::size_t> next{0};
        std::vector<std::future<void>> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next++; i < grid.specs.size(); i = next++) run_cell(i);
            }));
        }
        for (auto& f : workers) f.get();
    }

    report.ranking.resize(report.results.size());
    std::iota(report.ranking.begin(), report.ranking.end(), std::size_t{0});
    std::stable_sort(report.ranking.begin(), report.ranking.end(),
                     [&](std::size_t a, std::size_t b) { return report.results[a].mean > report.results[b].mean; });
    report.chosen = report.ranking.front();
    return report;
}

CvReport grid_search(const GridSpec& grid, const std::vector<LabeledTweet>& data) {
    return grid_search(grid, tokenize_dataset(data));
}

namespace {

template <typename T>
std::vector<T> list_or_scalar(const json& j, const char* key, std::vector<T> fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (it->is_array()) return it->get<std::vector<T>>();
    return {it->get<T>()};
}

}  // namespace

GridSpec parse_grid_config(const json& config) {
    try {
        if (!config.is_object()) throw Error("grid config must be a JSON object");
        GridSpec grid;
        grid.k = config.value("k", std::size_t{10});
        grid.seed = config.value("seed", std::uint64_t{42});
        grid.stratified = config.value("stratified", false);
        grid.jobs = config.value("jobs", 1u);

        std::vector<NgramRange> ranges;
        for (const auto& r : config.at("ngram_ranges")) {
            NgramRange range{r.at(0).get<int>(), r.at(1).get<int>()};
            validate(range);
            ranges.push_back(range);
        }
        std::vector<Norm> norms;
        for (const auto& n : config.at("norms")) norms.push_back(norm_from_string(n.get<std::string>()));

        std::vector<ClassifierSpec> classifiers;
        for (const auto& m : config.at("models")) {
            const auto type = m.at("type").get<std::string>();
            if (type == "nb") {
                for (double a : list_or_scalar<double>(m, "alpha", {1.0})) classifiers.push_back(NbSpec{a});
            } else if (type == "logistic") {
                const auto solvers = list_or_scalar<std::string>(m, "solver", {"quasi_newton"});
                for (double c : list_or_scalar<double>(m, "C", {1.0})) {
                    for (const auto& s : solvers) {
                        auto solver = default_solver(solver_from_string(s));
                        solver.tol = m.value("tol", solver.tol);
                        solver.max_iter = m.value("max_iter", solver.max_iter);
                        solver.seed = grid.seed;
                        classifiers.push_back(LogisticSpec{c, solver});
                    }
                }
            } else if (type == "svm") {
                for (double c : list_or_scalar<double>(m, "C", {1.0})) {
                    SvmSpec s;
                    s.C = c;
                    s.tol = m.value("tol", s.tol);
                    s.max_iter = m.value("max_iter", s.max_iter);
                    classifiers.push_back(s);
                }
            } else if (type == "majority") {
                classifiers.push_back(MajoritySpec{});
            } else {
                throw Error("grid config: unknown model type \"" + type + "\"");
            }
        }

        // Norm varies slowest, then n-gram range, then classifier.
        for (Norm norm : norms) {
            for (const auto& range : ranges) {
                for (const auto& clf : classifiers) {
                    grid.specs.push_back({range, norm, clf});
                    validate(clf);
                }
            }
        }
        if (grid.specs.empty()) throw Error("grid config produces no cells");
        if (grid.k < 2) throw Error("grid config: k must be at least 2");
        return grid;
    } catch (const json::exception& e) {
        throw Error(std::string("grid config: ") + e.what());
    }
}

GridSpec load_grid_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open grid config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception&) {
        throw Error(path.string() + ": invalid JSON");
    }
    return parse_grid_config(j);
}

void write_report_csv(std::ostream& out, const CvReport& report) {
    std::vector<std::string> header{"rank", "ngram_range", "norm", "model", "classifier", "mean_accuracy",
                                    "std_accuracy"};
    for (std::size_t f = 0; f < report.k; ++f) header.push_back("fold_" + std::to_string(f + 1));
    csv::write_row(out, header);

    auto fmt = [](double v) {
        std::ostringstream os;
        os << std::setprecision(17) << v;
        return os.str();
    };
    std::size_t rank = 1;
    for (std::size_t idx : report.ranking) {
        const auto& r = report.results[idx];
        std::vector<std::string> row{std::to_string(rank++),
                                     "(" + std::to_string(r.spec.ngram_range.min_n) + "," +
                                         std::to_string(r.spec.ngram_range.max_n) + ")",
                                     std::string(to_string(r.spec.norm)),
                                     model_name(r.spec.classifier),
                                     describe(r.spec.classifier),
                                     fmt(r.mean),
                                     fmt(r.stddev)};
        for (double a : r.fold_accuracies) row.push_back(fmt(a));
        csv::write_row(out, row);
    }
}

void write_table_csv(std::ostream& out, const CvReport& report) {
    std::vector<std::string> rows, cols;
    std::map<std::pair<std::string, std::string>, double> cell;
    // A column per model family when each family has one setting, otherwise
    // one per distinct hyperparameter setting.
    std::map<std::string, std::vector<std::string>> settings;
    for (const auto& r : report.results) {
        auto& v = settings[model_name(r.spec.classifier)];
        const auto d = describe(r.spec.classifier);
        if (std::find(v.begin(), v.end(), d) == v.end()) v.push_back(d);
    }
    for (const auto& r : report.results) {
        const auto row = feature_label(r.spec);
        const auto family = model_name(r.spec.classifier);
        const auto col = settings[family].size() == 1 ? family : describe(r.spec.classifier);
        if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
        if (std::find(cols.begin(), cols.end(), col) == cols.end()) cols.push_back(col);
        cell[{row, col}] = r.mean;
    }
    std::vector<std::string> header{"features"};
    header.insert(header.end(), cols.begin(), cols.end());
    csv::write_row(out, header);
    for (const auto& row : rows) {
        std::vector<std::string> line{row};
        for (const auto& col : cols) {
            auto it = cell.find({row, col});
            if (it == cell.end()) {
                line.emplace_back();
            } else {
                std::ostringstream os;
                os << std::fixed << std::setprecision(3) << it->second;
                line.push_back(os.str());
            }
        }
        csv::write_row(out, line);
    }
}

}  // namespace tweetguard
