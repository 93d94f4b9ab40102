#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tweetguard/label.hpp"

namespace tweetguard {

/// Square count matrix; rows are true classes, columns predicted classes.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::size_t n_classes = kNumLabels);
    /// Row-major square counts; throws Error if not square.
    static ConfusionMatrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows);

    std::size_t n_classes() const noexcept { return n_; }
    std::uint64_t n_samples() const noexcept { return total_; }
    std::uint64_t at(std::size_t truth, std::size_t predicted) const { return counts_.at(truth * n_ + predicted); }
    void add(std::size_t truth, std::size_t predicted, std::uint64_t count = 1);

    std::uint64_t row_sum(std::size_t c) const;
    std::uint64_t col_sum(std::size_t c) const;
    std::uint64_t trace() const;

    /// trace / n_samples (0 for an empty matrix)
    double accuracy() const;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::size_t n_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Throws Error on length mismatch or empty input.
ConfusionMatrix confusion_matrix(const std::vector<Label>& y_true, const std::vector<Label>& y_pred);

struct ClassScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::uint64_t support = 0;
};

struct MetricsReport {
    std::vector<ClassScore> per_class;
    ClassScore macro;     // unweighted mean over classes
    ClassScore weighted;  // mean weighted by class support
    double accuracy = 0.0;
    /// Set when some precision or recall had a zero denominator (reported as 0).
    bool zero_division = false;
};

/// Per-class precision, recall and F1 from counts. The averages are computed
/// in exact rational arithmetic and rounded once, so the weighted recall is
/// bit-identical to the accuracy.
MetricsReport scores(const ConfusionMatrix& cm);

/// Each row divided by its sum. Throws Error when a row is empty.
std::vector<std::vector<double>> row_normalize(const ConfusionMatrix& cm);

/// Text table: one row per class plus "macro avg" and "weighted avg", with
/// precision, recall, F-score and support at 3 decimals.
std::string format_scores(const MetricsReport& report);
/// Text table of the row-normalized matrix with a "Classified as" header.
std::string format_confusion(const ConfusionMatrix& cm);

void write_scores_csv(std::ostream& out, const MetricsReport& report);
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm);

}  // namespace tweetguard
