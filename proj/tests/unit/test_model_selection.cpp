#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "tweetguard/error.hpp"
#include "tweetguard/model_selection.hpp"

using namespace tweetguard;

namespace {

std::vector<LabeledTweet> separable(std::size_t per_class) {
    std::vector<LabeledTweet> d;
    for (std::size_t i = 0; i < per_class; ++i) {
        d.push_back({std::nullopt, "zebra stripes " + std::to_string(i % 3), Label::Hateful});
        d.push_back({std::nullopt, "mango juice", Label::Offensive});
        d.push_back({std::nullopt, "piano keys", Label::Clean});
    }
    return d;
}

std::vector<LabeledTweet> weighted(std::size_t h, std::size_t o, std::size_t c) {
    std::vector<LabeledTweet> d;
    for (std::size_t i = 0; i < h; ++i) d.push_back({std::nullopt, "word" + std::to_string(i), Label::Hateful});
    for (std::size_t i = 0; i < o; ++i) d.push_back({std::nullopt, "term" + std::to_string(i), Label::Offensive});
    for (std::size_t i = 0; i < c; ++i) d.push_back({std::nullopt, "item" + std::to_string(i), Label::Clean});
    return d;
}

GridSpec small_grid() {
    GridSpec g;
    g.k = 5;
    for (Norm norm : {Norm::L1, Norm::L2})
        for (int hi : {1, 2}) {
            g.specs.push_back({{1, hi}, norm, NbSpec{1.0}});
            g.specs.push_back({{1, hi}, norm, LogisticSpec{10.0, {}}});
        }
    return g;
}

void check_partition(const std::vector<std::vector<std::size_t>>& folds, std::size_t n, std::size_t k) {
    REQUIRE(folds.size() == k);
    std::vector<int> seen(n, 0);
    std::size_t lo = n, hi = 0;
    for (const auto& f : folds) {
        lo = std::min(lo, f.size());
        hi = std::max(hi, f.size());
        for (auto i : f) {
            REQUIRE(i < n);
            ++seen[i];
        }
    }
    CHECK(hi - lo <= 1);
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
}

}  // namespace

TEST_CASE("kfold examples") {
    auto f = kfold_indices(10, 10, 42);
    check_partition(f, 10, 10);
    for (const auto& fold : f) CHECK(fold.size() == 1);
    f = kfold_indices(100, 10, 42);
    for (const auto& fold : f) CHECK(fold.size() == 10);
    CHECK_THROWS_AS(kfold_indices(9, 10, 42), Error);
    CHECK_THROWS_AS(kfold_indices(9, 1, 42), Error);
}

TEST_CASE("kfold partitions for random n and k") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 400)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(2, std::min<std::size_t>(n, 25))(rng);
        check_partition(kfold_indices(n, k, rng()), n, k);
    }
}

TEST_CASE("stratified folds partition and balance classes") {
    std::vector<Label> labels;
    for (int i = 0; i < 97; ++i) labels.push_back(label_from_index(i % 3 == 0 ? 0 : (i % 5 == 0 ? 1 : 2)));
    const auto folds = stratified_kfold_indices(labels, 10, 5);
    check_partition(folds, labels.size(), 10);
    for (Label l : kAllLabels) {
        std::size_t lo = 1000, hi = 0;
        for (const auto& f : folds) {
            const auto c = static_cast<std::size_t>(
                std::count_if(f.begin(), f.end(), [&](std::size_t i) { return labels[i] == l; }));
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        CHECK(hi - lo <= 1);
    }
}

TEST_CASE("majority baseline on a 50/30/20 dataset scores about 0.5") {
    const auto acc = cross_validate({{1, 1}, Norm::L2, MajoritySpec{}}, weighted(50, 30, 20), 10, 42);
    const double mean = std::accumulate(acc.begin(), acc.end(), 0.0) / static_cast<double>(acc.size());
    CHECK(std::abs(mean - 0.5) <= 0.1);
}

TEST_CASE("separable data gives perfect folds") {
    const auto acc = cross_validate({{1, 1}, Norm::L2, LogisticSpec{10.0, {}}}, separable(10), 10, 42);
    REQUIRE(acc.size() == 10);
    for (double a : acc) CHECK(a == 1.0);
}

TEST_CASE("leave-one-out yields 0/1 accuracies") {
    const auto acc = cross_validate({{1, 1}, Norm::L2, NbSpec{1.0}}, separable(4), 12, 3);
    REQUIRE(acc.size() == 12);
    for (double a : acc) CHECK((a == 0.0 || a == 1.0));
}

TEST_CASE("cross_validate fits the vectorizer on training folds only") {
    const auto data = separable(8);
    const auto tokens = tokenize_dataset(data);
    const auto folds = kfold_indices(data.size(), 4, 11);
    const PipelineSpec spec{{1, 2}, Norm::L2, NbSpec{1.0}};
    const auto got = cross_validate(spec, tokens, folds);
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::set<std::size_t> held(folds[f].begin(), folds[f].end());
        std::vector<TokenSeq> docs;
        std::vector<Label> y;
        for (std::size_t i = 0; i < data.size(); ++i)
            if (!held.count(i)) {
                docs.push_back(tokens.docs[i]);
                y.push_back(tokens.labels[i]);
            }
        const auto model = fit(docs, spec.ngram_range, spec.norm);
        const auto before = model;
        std::vector<SparseVector> X;
        for (const auto& d : docs) X.push_back(transform(d, model));
        const auto clf = fit_classifier(spec.classifier, X, y, model.n_features());
        std::size_t correct = 0;
        for (auto i : folds[f]) correct += classify(clf, transform(tokens.docs[i], model)).label == tokens.labels[i];
        CHECK(model == before);
        CHECK(got[f] == static_cast<double>(correct) / static_cast<double>(folds[f].size()));
    }
}

TEST_CASE("grid search is deterministic, parallel-safe and picks the maximum") {
    const auto data = separable(10);
    auto g = small_grid();
    const auto a = grid_search(g, data);
    const auto b = grid_search(g, data);
    g.jobs = 4;
    const auto c = grid_search(g, data);
    std::ostringstream ra, rb, rc;
    write_report_csv(ra, a);
    write_report_csv(rb, b);
    write_report_csv(rc, c);
    CHECK(ra.str() == rb.str());
    CHECK(ra.str() == rc.str());
    REQUIRE(a.results.size() == g.specs.size());
    for (std::size_t i = 0; i < a.results.size(); ++i) {
        CHECK(a.results[i].spec == g.specs[i]);
        CHECK(a.results[i].fold_accuracies == c.results[i].fold_accuracies);
        const auto& r = a.results[i];
        const double mean = std::accumulate(r.fold_accuracies.begin(), r.fold_accuracies.end(), 0.0) / 5.0;
        CHECK(std::abs(mean - r.mean) <= 1e-12);
        CHECK(r.mean <= a.best().mean);
    }
    for (std::size_t i = 1; i < a.ranking.size(); ++i)
        CHECK(a.results[a.ranking[i - 1]].mean >= a.results[a.ranking[i]].mean);
}

TEST_CASE("ties go to the earlier grid cell") {
    GridSpec g;
    g.k = 3;
    g.specs = {{{1, 1}, Norm::L2, NbSpec{1.0}}, {{1, 1}, Norm::L2, NbSpec{1.0}}};
    const auto r = grid_search(g, separable(3));
    CHECK(r.results[0].mean == r.results[1].mean);
    CHECK(r.chosen == 0);
    CHECK(r.ranking == std::vector<std::size_t>{0, 1});
}

TEST_CASE("grid errors") {
    GridSpec g;
    CHECK_THROWS_AS(grid_search(g, separable(3)), Error);
    g = small_grid();
    g.k = 10;
    CHECK_THROWS_AS(grid_search(g, weighted(3, 3, 3)), Error);
}

TEST_CASE("grid config expansion order and the Table I layout") {
    const auto cfg = nlohmann::json::parse(R"({
        "k": 4, "seed": 9,
        "ngram_ranges": [[1,1],[1,2],[1,3]],
        "norms": ["l1","l2"],
        "models": [{"type":"nb","alpha":[1]},{"type":"logistic","C":1},{"type":"svm","C":[1]}]
    })");
    const auto g = parse_grid_config(cfg);
    CHECK(g.k == 4);
    CHECK(g.seed == 9);
    REQUIRE(g.specs.size() == 18);
    CHECK(feature_label(g.specs[0]) == "(1,1)+L1");
    CHECK(model_name(g.specs[0].classifier) == "NB");
    CHECK(model_name(g.specs[1].classifier) == "LR");
    CHECK(model_name(g.specs[2].classifier) == "SVM");
    CHECK(feature_label(g.specs[3]) == "(1,2)+L1");
    CHECK(feature_label(g.specs[9]) == "(1,1)+L2");

    const auto report = grid_search(g, separable(6));
    std::ostringstream table;
    write_table_csv(table, report);
    std::istringstream lines(table.str());
    std::vector<std::string> rows;
    for (std::string l; std::getline(lines, l);) rows.push_back(l);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == "features,NB,LR,SVM");
    CHECK(rows[1].rfind("\"(1,1)+L1\",", 0) == 0);
    CHECK(rows[6].rfind("\"(1,3)+L2\",", 0) == 0);

    CHECK_THROWS_AS(parse_grid_config(nlohmann::json::parse(R"({"ngram_ranges":[[2,1]],"norms":["l2"],"models":[{"type":"nb"}]})")), Error);
    CHECK_THROWS_AS(parse_grid_config(nlohmann::json::parse(R"({"ngram_ranges":[[1,1]],"norms":["l3"],"models":[{"type":"nb"}]})")), Error);
    CHECK_THROWS_AS(parse_grid_config(nlohmann::json::parse(R"({"ngram_ranges":[[1,1]],"norms":["l2"],"models":[{"type":"knn"}]})")), Error);
    CHECK_THROWS_AS(parse_grid_config(nlohmann::json::parse(R"({"k":1,"ngram_ranges":[[1,1]],"norms":["l2"],"models":[{"type":"nb"}]})")), Error);
    CHECK_THROWS_AS(parse_grid_config(nlohmann::json::parse(R"({"ngram_ranges":[[1,1]],"norms":["l2"],"models":[{"type":"nb","alpha":[-1]}]})")), Error);
}

TEST_CASE("bundled grid files parse") {
    CHECK(load_grid_config(TG_REPO_DATA_DIR "/grids/table1.json").specs.size() == 18);
    CHECK(load_grid_config(TG_REPO_DATA_DIR "/grids/nb_alpha.json").specs.size() == 4);
    CHECK(load_grid_config(TG_REPO_DATA_DIR "/grids/lr_tuning.json").specs.size() == 6);
}
