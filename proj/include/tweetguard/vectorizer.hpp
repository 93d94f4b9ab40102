#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tweetguard/preprocess.hpp"
#include "tweetguard/sparse.hpp"

namespace tweetguard {

struct NgramRange {
    int min_n = 1;
    int max_n = 1;

    friend bool operator==(const NgramRange&, const NgramRange&) = default;
};

/// Throws Error unless 1 <= min_n <= max_n.
void validate(const NgramRange& range);

enum class Norm { L1, L2, None };

std::string_view to_string(Norm norm) noexcept;
/// "l1", "l2" or "none", case-insensitive.
Norm norm_from_string(std::string_view s);

/// Every contiguous window of n tokens for n in [min_n, max_n], grouped by n
/// and in text order, tokens joined by a single space.
std::vector<std::string> extract_ngrams(const TokenSeq& tokens, const NgramRange& range);

/// Fitted n-gram vocabulary. Terms are indexed in lexicographic order.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq, std::size_t n_docs);

    std::size_t size() const noexcept { return terms_.size(); }
    std::size_t n_docs() const noexcept { return n_docs_; }
    const std::vector<std::string>& terms() const noexcept { return terms_; }
    const std::vector<std::size_t>& doc_freq() const noexcept { return doc_freq_; }

    /// Index of `term`, or -1 when out of vocabulary.
    long find(std::string_view term) const;

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
        return a.terms_ == b.terms_ && a.doc_freq_ == b.doc_freq_ && a.n_docs_ == b.n_docs_;
    }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };
    std::vector<std::string> terms_;
    std::vector<std::size_t> doc_freq_;
    std::size_t n_docs_ = 0;
    std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

/// Fitted TFIDF weighting. Immutable once built; transform is pure.
struct TfidfModel {
    Vocabulary vocabulary;
    std::vector<double> idf;
    NgramRange ngram_range;
    Norm norm = Norm::L2;

    std::size_t n_features() const noexcept { return vocabulary.size(); }

    friend bool operator==(const TfidfModel&, const TfidfModel&) = default;
};

/// Builds the vocabulary over every distinct n-gram of the corpus and sets
/// idf[t] = ln((1 + n_docs) / (1 + df[t])) + 1.
/// Throws Error on an empty corpus or one whose documents are all empty.
TfidfModel fit(const std::vector<TokenSeq>& corpus, const NgramRange& range, Norm norm);

/// Raw n-gram counts times idf, out-of-vocabulary n-grams dropped, then
/// normalized per model.norm.
SparseVector transform(const TokenSeq& tokens, const TfidfModel& model);

/// L1 divides by the sum of absolute values, L2 by the Euclidean length.
/// The empty vector is returned unchanged.
SparseVector normalize(SparseVector v, Norm norm);

}  // namespace tweetguard
