// Independent reference implementations used by the unit and acceptance
// tests. They deliberately share no code with the library beyond its types.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tweetguard/label.hpp"
#include "tweetguard/sparse.hpp"

namespace oracle {

using Doc = std::vector<std::string>;
using Dense = std::vector<double>;

inline std::vector<std::string> ngrams(const Doc& doc, int lo, int hi) {
    std::vector<std::string> out;
    for (int n = lo; n <= hi; ++n) {
        for (std::size_t i = 0; i + n <= doc.size(); ++i) {
            std::string g = doc[i];
            for (int j = 1; j < n; ++j) g += " " + doc[i + j];
            out.push_back(g);
        }
    }
    return out;
}

/// Dictionary-of-counts TFIDF. norm: 0 none, 1 L1, 2 L2.
struct DenseTfidf {
    std::vector<std::string> terms;
    std::vector<double> idf;
    int lo = 1, hi = 1, norm = 2;

    DenseTfidf(const std::vector<Doc>& corpus, int lo_, int hi_, int norm_) : lo(lo_), hi(hi_), norm(norm_) {
        std::map<std::string, int> df;
        for (const auto& d : corpus) {
            const auto g = ngrams(d, lo, hi);
            for (const auto& t : std::set<std::string>(g.begin(), g.end())) ++df[t];
        }
        const double n = static_cast<double>(corpus.size());
        for (const auto& [t, f] : df) {
            terms.push_back(t);
            idf.push_back(std::log((1.0 + n) / (1.0 + f)) + 1.0);
        }
    }

    Dense transform(const Doc& d) const {
        Dense v(terms.size(), 0.0);
        for (const auto& g : ngrams(d, lo, hi)) {
            auto it = std::lower_bound(terms.begin(), terms.end(), g);
            if (it != terms.end() && *it == g) v[it - terms.begin()] += 1.0;
        }
        for (std::size_t i = 0; i < v.size(); ++i) v[i] *= idf[i];
        double denom = 0.0;
        for (double x : v) denom += norm == 1 ? std::abs(x) : x * x;
        if (norm == 2) denom = std::sqrt(denom);
        if (norm != 0 && denom > 0.0) {
            for (double& x : v) x /= denom;
        }
        return v;
    }
};

inline Dense densify(const tweetguard::SparseVector& s, std::size_t dim) {
    Dense v(dim, 0.0);
    for (std::size_t i = 0; i < s.nnz(); ++i) v.at(s.indices[i]) = s.values[i];
    return v;
}

/// Multinomial NB fitted and evaluated on dense count matrices; the joint is
/// computed as a product of probabilities and logged only at the end.
struct DenseNb {
    std::vector<double> prior;               // per class
    std::vector<std::vector<double>> theta;  // class x feature

    DenseNb(const std::vector<Dense>& X, const std::vector<int>& y, double alpha, std::size_t n_features) {
        const std::size_t k = tweetguard::kNumLabels;
        prior.assign(k, 0.0);
        theta.assign(k, std::vector<double>(n_features, 0.0));
        std::vector<double> total(k, 0.0);
        for (std::size_t i = 0; i < X.size(); ++i) {
            prior[y[i]] += 1.0;
            for (std::size_t t = 0; t < n_features; ++t) {
                theta[y[i]][t] += X[i][t];
                total[y[i]] += X[i][t];
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t t = 0; t < n_features; ++t)
                theta[c][t] = (theta[c][t] + alpha) / (total[c] + alpha * static_cast<double>(n_features));
            prior[c] /= static_cast<double>(X.size());
        }
    }

    std::vector<double> log_joint(const Dense& x) const {
        std::vector<double> out;
        for (std::size_t c = 0; c < prior.size(); ++c) {
            long double p = prior[c];
            for (std::size_t t = 0; t < x.size(); ++t) p *= std::pow(static_cast<long double>(theta[c][t]), x[t]);
            out.push_back(static_cast<double>(std::log(p)));
        }
        return out;
    }

    /// Lowest class whose score is within `tie_tol` (relative) of the best.
    int predict(const Dense& x, double tie_tol) const {
        const auto s = log_joint(x);
        const double best = *std::max_element(s.begin(), s.end());
        for (std::size_t c = 0; c < s.size(); ++c)
            if (s[c] >= best - tie_tol * std::max(1.0, std::abs(best))) return static_cast<int>(c);
        return 0;
    }
};

/// Central differences of f at x with step h.
template <typename F>
Dense central_difference(F&& f, Dense x, double h) {
    Dense g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double keep = x[i];
        x[i] = keep + h;
        const double up = f(x);
        x[i] = keep - h;
        const double down = f(x);
        x[i] = keep;
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

inline double rel_error(const Dense& a, const Dense& b) {
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    const double scale = std::max({std::sqrt(na), std::sqrt(nb), 1e-300});
    return std::sqrt(diff) / scale;
}

/// Random documents over a small alphabet ("t0".."t{alphabet-1}").
inline std::vector<Doc> random_corpus(std::mt19937_64& rng, std::size_t max_docs, std::size_t max_tokens,
                                      std::size_t alphabet) {
    std::uniform_int_distribution<std::size_t> n_docs(1, max_docs), n_tok(0, max_tokens), tok(0, alphabet - 1);
    std::vector<Doc> corpus(n_docs(rng));
    for (auto& d : corpus) {
        const std::size_t len = n_tok(rng);
        for (std::size_t i = 0; i < len; ++i) d.push_back("t" + std::to_string(tok(rng)));
    }
    if (std::all_of(corpus.begin(), corpus.end(), [](const Doc& d) { return d.empty(); })) corpus[0].push_back("t0");
    return corpus;
}

inline tweetguard::SparseVector random_sparse(std::mt19937_64& rng, std::size_t dim, double density) {
    std::bernoulli_distribution keep(density);
    std::normal_distribution<double> val(0.0, 1.0);
    tweetguard::SparseVector v;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!keep(rng)) continue;
        double x = val(rng);
        if (x == 0.0) x = 1.0;
        v.indices.push_back(static_cast<std::uint32_t>(i));
        v.values.push_back(x);
    }
    return v;
}

}  // namespace oracle
