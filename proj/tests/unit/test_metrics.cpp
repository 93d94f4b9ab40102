#include <cmath>
#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "tweetguard/error.hpp"
#include "tweetguard/metrics.hpp"

using namespace tweetguard;
using L = Label;

TEST_CASE("confusion matrix examples") {
    auto cm = confusion_matrix({L::Hateful, L::Offensive, L::Clean}, {L::Hateful, L::Offensive, L::Clean});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(cm.at(i, j) == (i == j ? 1u : 0u));
    CHECK(cm.accuracy() == 1.0);
    cm = confusion_matrix({L::Hateful, L::Hateful}, {L::Offensive, L::Offensive});
    CHECK(cm.at(0, 1) == 2);
    CHECK(cm.trace() == 0);
    CHECK(cm.n_samples() == 2);
    CHECK_THROWS_AS(confusion_matrix({L::Clean}, {}), Error);
    CHECK_THROWS_AS(confusion_matrix({}, {}), Error);
}

TEST_CASE("two-class score examples") {
    auto r = scores(ConfusionMatrix::from_rows({{5, 0}, {0, 5}}));
    for (const auto& c : r.per_class) {
        CHECK(c.precision == 1.0);
        CHECK(c.recall == 1.0);
        CHECK(c.f1 == 1.0);
    }
    r = scores(ConfusionMatrix::from_rows({{3, 1}, {1, 3}}));
    for (const auto& c : r.per_class) {
        CHECK(c.precision == 0.75);
        CHECK(c.recall == 0.75);
        CHECK(c.f1 == 0.75);
    }
    CHECK(r.accuracy == 0.75);
    CHECK_FALSE(r.zero_division);
}

TEST_CASE("empty column sets the zero-division flag") {
    const auto r = scores(ConfusionMatrix::from_rows({{2, 0, 1}, {1, 0, 1}, {0, 0, 3}}));
    CHECK(r.per_class[1].precision == 0.0);
    CHECK(r.per_class[1].f1 == 0.0);
    CHECK(r.zero_division);
}

TEST_CASE("averages by hand") {
    // P = (3/4, 2/3, 4/5), R = (3/5, 4/5, 4/5), supports (5, 5, 5)
    const auto r = scores(ConfusionMatrix::from_rows({{3, 1, 1}, {0, 4, 1}, {1, 0, 4}}));
    CHECK(r.macro.precision == doctest::Approx((0.75 + 2.0 / 3 + 0.8) / 3));
    CHECK(r.macro.recall == doctest::Approx((0.6 + 0.8 + 0.8) / 3));
    CHECK(r.weighted.recall == r.accuracy);
    CHECK(r.accuracy == 11.0 / 15.0);
    CHECK(r.per_class[0].f1 == doctest::Approx(2 * 0.75 * 0.6 / (0.75 + 0.6)));
    CHECK(r.weighted.support == 15);
}

TEST_CASE("row normalization examples") {
    const auto rows = row_normalize(ConfusionMatrix::from_rows({{193, 4, 3}, {1, 0, 0}, {0, 0, 1}}));
    CHECK(rows[0][0] == doctest::Approx(0.965));
    CHECK(rows[0][1] == doctest::Approx(0.020));
    CHECK(rows[0][2] == doctest::Approx(0.015));
    const auto id = row_normalize(ConfusionMatrix::from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(id[i][j] == (i == j ? 1.0 : 0.0));
    CHECK_THROWS_AS(row_normalize(ConfusionMatrix::from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, 1}})), Error);
}

TEST_CASE("identities on random label vectors") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> lab(0, 2);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 300)(rng);
        std::vector<Label> yt(n), yp(n);
        std::size_t agree = 0;
        for (std::size_t i = 0; i < n; ++i) {
            yt[i] = label_from_index(lab(rng));
            yp[i] = label_from_index(lab(rng));
            agree += yt[i] == yp[i];
        }
        const auto cm = confusion_matrix(yt, yp);
        const auto r = scores(cm);
        REQUIRE(r.weighted.recall == r.accuracy);
        REQUIRE(r.accuracy == static_cast<double>(agree) / static_cast<double>(n));
        for (const auto& c : r.per_class) {
            const double hm = c.precision + c.recall == 0 ? 0.0 : 2 * c.precision * c.recall / (c.precision + c.recall);
            REQUIRE(c.f1 == doctest::Approx(hm).epsilon(1e-12));
        }

        // Jointly permuting the pairs changes nothing.
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<Label> pt(n), pp(n);
        for (std::size_t i = 0; i < n; ++i) {
            pt[i] = yt[order[i]];
            pp[i] = yp[order[i]];
        }
        REQUIRE(confusion_matrix(pt, pp) == cm);
    }
}

TEST_CASE("text and csv layouts") {
    const auto cm = ConfusionMatrix::from_rows({{193, 4, 3}, {6, 118, 1}, {2, 1, 150}});
    const auto text = format_scores(scores(cm));
    CHECK(text.find("Precision") != std::string::npos);
    CHECK(text.find("macro avg") != std::string::npos);
    CHECK(text.find("weighted avg") != std::string::npos);
    const auto conf = format_confusion(cm);
    CHECK(conf.find("Classified as") != std::string::npos);
    CHECK(conf.find("0.965") != std::string::npos);
    CHECK(conf.find("0.048") != std::string::npos);  // 6/125 in the offensive row

    std::ostringstream csv;
    write_confusion_csv(csv, cm);
    CHECK(csv.str().rfind("true\\predicted,hateful,offensive,clean\n", 0) == 0);
}
