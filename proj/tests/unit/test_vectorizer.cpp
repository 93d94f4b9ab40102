#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tweetguard/error.hpp"
#include "tweetguard/vectorizer.hpp"

using namespace tweetguard;

TEST_CASE("extract_ngrams examples") {
    CHECK(extract_ngrams({"a", "b", "c"}, {1, 2}) == std::vector<std::string>{"a", "b", "c", "a b", "b c"});
    CHECK(extract_ngrams({"a"}, {1, 3}) == std::vector<std::string>{"a"});
    CHECK(extract_ngrams({}, {1, 3}).empty());
    CHECK(extract_ngrams({"a", "b", "c", "d"}, {2, 3}).size() == 3 + 2);
    CHECK_THROWS_AS(validate(NgramRange{2, 1}), Error);
    CHECK_THROWS_AS(validate(NgramRange{0, 1}), Error);
}

TEST_CASE("fit example") {
    const auto m = fit({{"a"}, {"a", "b"}}, {1, 1}, Norm::None);
    REQUIRE(m.n_features() == 2);
    CHECK(m.vocabulary.find("a") == 0);
    CHECK(m.vocabulary.find("b") == 1);
    CHECK(m.vocabulary.find("c") == -1);
    CHECK(m.vocabulary.doc_freq() == std::vector<std::size_t>{2, 1});
    CHECK(m.idf[0] == 1.0);
    CHECK(m.idf[1] == doctest::Approx(1.405465).epsilon(1e-6));
    CHECK(fit({{"x"}}, {1, 1}, Norm::L2).idf[0] == 1.0);
    CHECK_THROWS_AS(fit({{}, {}}, {1, 1}, Norm::L2), Error);
    CHECK_THROWS_AS(fit({}, {1, 1}, Norm::L2), Error);
}

TEST_CASE("transform examples") {
    const auto raw = fit({{"a"}, {"a", "b"}}, {1, 1}, Norm::None);
    const auto v = transform({"a", "a", "b"}, raw);
    CHECK(v.indices == std::vector<std::uint32_t>{0, 1});
    CHECK(v.values[0] == 2.0);
    CHECK(v.values[1] == doctest::Approx(1.405465).epsilon(1e-6));
    CHECK(transform({"zz", "yy"}, raw).empty());

    auto l2 = raw;
    l2.norm = Norm::L2;
    const auto w = transform({"a", "a", "b"}, l2);
    const double len = std::sqrt(4.0 + raw.idf[1] * raw.idf[1]);
    CHECK(w.values[0] == doctest::Approx(2.0 / len).epsilon(1e-15));
    CHECK(w.values[1] == doctest::Approx(raw.idf[1] / len).epsilon(1e-15));
}

TEST_CASE("normalize examples") {
    SparseVector v{{0, 1}, {3.0, 1.0}};
    CHECK(normalize(v, Norm::L1).values == std::vector<double>{0.75, 0.25});
    SparseVector u{{0, 1}, {3.0, 4.0}};
    const auto n = normalize(u, Norm::L2);
    CHECK(n.values[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(n.values[1] == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(normalize(SparseVector{}, Norm::L1).empty());
    CHECK(normalize(SparseVector{}, Norm::L2).empty());
    CHECK(normalize(u, Norm::None) == u);
}

TEST_CASE("idf is positive and strictly decreasing in document frequency") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto corpus = oracle::random_corpus(rng, 30, 15, 10);
        const auto m = fit(corpus, {1, 2}, Norm::L2);
        const auto& df = m.vocabulary.doc_freq();
        for (std::size_t i = 0; i < m.n_features(); ++i) {
            CHECK(m.idf[i] > 0.0);
            CHECK(df[i] >= 1);
            CHECK(df[i] <= corpus.size());
            for (std::size_t j = 0; j < m.n_features(); ++j)
                if (df[i] < df[j]) REQUIRE(m.idf[i] > m.idf[j]);
        }
    }
}

TEST_CASE("fit is deterministic and vocabulary is lexicographic") {
    std::mt19937_64 rng(2);
    const auto corpus = oracle::random_corpus(rng, 40, 20, 12);
    const auto a = fit(corpus, {1, 3}, Norm::L1);
    const auto b = fit(corpus, {1, 3}, Norm::L1);
    CHECK(a == b);
    const auto& terms = a.vocabulary.terms();
    CHECK(std::is_sorted(terms.begin(), terms.end()));
    CHECK(std::adjacent_find(terms.begin(), terms.end()) == terms.end());
}

TEST_CASE("transform matches the dense oracle") {
    std::mt19937_64 rng(1);
    const NgramRange ranges[] = {{1, 1}, {1, 2}, {1, 3}};
    const std::pair<Norm, int> norms[] = {{Norm::L1, 1}, {Norm::L2, 2}, {Norm::None, 0}};
    for (int trial = 0; trial < 40; ++trial) {
        const auto corpus = oracle::random_corpus(rng, 50, 20, 12);
        for (const auto& r : ranges) {
            for (const auto& [norm, code] : norms) {
                const auto m = fit(corpus, r, norm);
                const oracle::DenseTfidf ref(corpus, r.min_n, r.max_n, code);
                REQUIRE(m.vocabulary.terms() == ref.terms);
                for (const auto& doc : corpus) {
                    const auto v = transform(doc, m);
                    validate(v, m.n_features());
                    const auto got = oracle::densify(v, m.n_features());
                    const auto want = ref.transform(doc);
                    for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(std::abs(got[i] - want[i]) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("transform does not mutate the model") {
    const auto m = fit({{"a", "b"}, {"b", "c"}}, {1, 2}, Norm::L2);
    const auto copy = m;
    transform({"a", "z", "q", "b"}, m);
    CHECK(m == copy);
}

TEST_CASE("sparse validation") {
    CHECK_NOTHROW(validate(SparseVector{{0, 3}, {1.0, -2.0}}, 4));
    CHECK_THROWS_AS(validate(SparseVector{{3, 3}, {1.0, 1.0}}), Error);
    CHECK_THROWS_AS(validate(SparseVector{{2, 1}, {1.0, 1.0}}), Error);
    CHECK_THROWS_AS(validate(SparseVector{{0}, {0.0}}), Error);
    CHECK_THROWS_AS(validate(SparseVector{{0}, {NAN}}), Error);
    CHECK_THROWS_AS(validate(SparseVector{{4}, {1.0}}, 4), Error);
    CHECK_THROWS_AS(validate(SparseVector{{0, 1}, {1.0}}), Error);
}
