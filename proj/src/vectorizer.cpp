#include "tweetguard/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tweetguard/error.hpp"
#include "tweetguard/text_util.hpp"

namespace tweetguard {

void validate(const NgramRange& range) {
    if (range.min_n < 1 || range.min_n > range.max_n) {
        throw Error("invalid n-gram range (" + std::to_string(range.min_n) + "," +
                    std::to_string(range.max_n) + ")");
    }
}

std::string_view to_string(Norm norm) noexcept {
    switch (norm) {
        case Norm::L1: return "l1";
        case Norm::L2: return "l2";
        case Norm::None: return "none";
    }
    return "none";
}

Norm norm_from_string(std::string_view s) {
    const auto key = ascii_lower(s);
    if (key == "l1") return Norm::L1;
    if (key == "l2") return Norm::L2;
    if (key == "none") return Norm::None;
    throw Error("unknown norm \"" + std::string(s) + "\"");
}

std::vector<std::string> extract_ngrams(const TokenSeq& tokens, const NgramRange& range) {
    validate(range);
    std::vector<std::string> out;
    const std::size_t len = tokens.size();
    for (int n = range.min_n; n <= range.max_n; ++n) {
        const auto w = static_cast<std::size_t>(n);
        if (w > len) break;
        for (std::size_t start = 0; start + w <= len; ++start) {
            std::string gram = tokens[start];
            for (std::size_t k = 1; k < w; ++k) {
                gram.push_back(' ');
                gram += tokens[start + k];
            }
            out.push_back(std::move(gram));
        }
    }
    return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq, std::size_t n_docs)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), n_docs_(n_docs) {
    if (terms_.size() != doc_freq_.size()) throw Error("vocabulary: term/doc_freq length mismatch");
    index_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0 && !(terms_[i - 1] < terms_[i])) throw Error("vocabulary: terms not strictly sorted");
        if (doc_freq_[i] < 1 || doc_freq_[i] > n_docs_) throw Error("vocabulary: doc_freq out of range");
        index_.emplace(terms_[i], i);
    }
}

long Vocabulary::find(std::string_view term) const {
    auto it = index_.find(term);
    return it == index_.end() ? -1 : static_cast<long>(it->second);
}

TfidfModel fit(const std::vector<TokenSeq>& corpus, const NgramRange& range, Norm norm) {
    validate(range);
    if (corpus.empty()) throw Error("cannot fit a vectorizer on an empty corpus");

    std::map<std::string, std::size_t> df;
    for (const auto& doc : corpus) {
        auto grams = extract_ngrams(doc, range);
        std::sort(grams.begin(), grams.end());
        grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
        for (auto& g : grams) ++df[std::move(g)];
    }
    if (df.empty()) throw Error("cannot fit a vectorizer: all documents are empty");

    std::vector<std::string> terms;
    std::vector<std::size_t> doc_freq;
    terms.reserve(df.size());
    doc_freq.reserve(df.size());
    for (auto& [term, count] : df) {
        terms.push_back(term);
        doc_freq.push_back(count);
    }

    const auto n_docs = corpus.size();
    TfidfModel model;
    model.idf.reserve(terms.size());
    for (std::size_t count : doc_freq) {
        model.idf.push_back(std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(count))) +
                            1.0);
    }
    model.vocabulary = Vocabulary(std::move(terms), std::move(doc_freq), n_docs);
    model.ngram_range = range;
    model.norm = norm;
    return model;
}

SparseVector transform(const TokenSeq& tokens, const TfidfModel& model) {
    std::vector<std::uint32_t> hits;
    for (const auto& gram : extract_ngrams(tokens, model.ngram_range)) {
        const long idx = model.vocabulary.find(gram);
        if (idx >= 0) hits.push_back(static_cast<std::uint32_t>(idx));
    }
    std::sort(hits.begin(), hits.end());

    SparseVector v;
    for (std::size_t i = 0; i < hits.size();) {
        std::size_t j = i;
        while (j < hits.size() && hits[j] == hits[i]) ++j;
        v.indices.push_back(hits[i]);
        v.values.push_back(static_cast<double>(j - i) * model.idf[hits[i]]);
        i = j;
    }
    return normalize(std::move(v), model.norm);
}

SparseVector normalize(SparseVector v, Norm norm) {
    if (v.empty() || norm == Norm::None) return v;
    double denom = 0.0;
    if (norm == Norm::L1) {
        for (double x : v.values) denom += std::abs(x);
    } else {
        for (double x : v.values) denom += x * x;
        denom = std::sqrt(denom);
    }
    if (denom == 0.0) return v;
    for (double& x : v.values) x /= denom;
    return v;
}

}  // namespace tweetguard
