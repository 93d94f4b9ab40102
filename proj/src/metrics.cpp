#include "tweetguard/metrics.hpp"

#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tweetguard/error.hpp"

namespace tweetguard {
namespace {

// Exact non-negative rational, kept in lowest terms.
struct Fraction {
    unsigned __int128 num = 0;
    unsigned __int128 den = 1;

    static unsigned __int128 gcd(unsigned __int128 a, unsigned __int128 b) {
        while (b != 0) {
            const auto t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Fraction make(unsigned __int128 n, unsigned __int128 d) {
        if (d == 0 || n == 0) return {0, 1};
        const auto g = gcd(n, d);
        return {n / g, d / g};
    }

    Fraction operator+(const Fraction& o) const {
        const auto g = gcd(den, o.den);
        const auto l = den / g * o.den;
        return make(num * (l / den) + o.num * (l / o.den), l);
    }
    Fraction operator*(const Fraction& o) const {
        const auto a = make(num, o.den);
        const auto b = make(o.num, den);
        return make(a.num * b.num, a.den * b.den);
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

std::string class_name(std::size_t c, std::size_t n) {
    if (n == kNumLabels) return std::string(to_string(label_from_index(static_cast<int>(c))));
    return "class" + std::to_string(c);
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::size_t n_classes) : n_(n_classes), counts_(n_classes * n_classes, 0) {
    if (n_classes == 0) throw Error("confusion matrix needs at least one class");
}

ConfusionMatrix ConfusionMatrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows) {
    ConfusionMatrix cm(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw Error("confusion matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) cm.add(i, j, rows[i][j]);
    }
    return cm;
}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted, std::uint64_t count) {
    if (truth >= n_ || predicted >= n_) throw Error("confusion matrix index out of range");
    counts_[truth * n_ + predicted] += count;
    total_ += count;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t c) const {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += at(c, j);
    return s;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t c) const {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += at(i, c);
    return s;
}

std::uint64_t ConfusionMatrix::trace() const {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < n_; ++c) s += at(c, c);
    return s;
}

double ConfusionMatrix::accuracy() const {
    return total_ == 0 ? 0.0 : static_cast<double>(trace()) / static_cast<double>(total_);
}

ConfusionMatrix confusion_matrix(const std::vector<Label>& y_true, const std::vector<Label>& y_pred) {
    if (y_true.size() != y_pred.size()) throw Error("confusion matrix: label vectors differ in length");
    if (y_true.empty()) throw Error("confusion matrix: empty input");
    ConfusionMatrix cm(kNumLabels);
    for (std::size_t k = 0; k < y_true.size(); ++k) {
        cm.add(static_cast<std::size_t>(to_index(y_true[k])), static_cast<std::size_t>(to_index(y_pred[k])));
    }
    return cm;
}

MetricsReport scores(const ConfusionMatrix& cm) {
    const std::size_t n = cm.n_classes();
    MetricsReport r;
    r.accuracy = cm.accuracy();

    std::vector<Fraction> precision(n), recall(n), f1(n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto tp = cm.at(c, c);
        const auto rows = cm.row_sum(c);
        const auto cols = cm.col_sum(c);
        if (cols == 0 || rows == 0) r.zero_division = true;
        precision[c] = Fraction::make(tp, cols);
        recall[c] = Fraction::make(tp, rows);
        // harmonic mean of P and R reduces to 2 tp / (row + col)
        f1[c] = Fraction::make(2 * static_cast<unsigned __int128>(tp), static_cast<unsigned __int128>(rows) + cols);
        r.per_class.push_back({precision[c].value(), recall[c].value(), f1[c].value(), rows});
    }

    Fraction mp, mr, mf, wp, wr, wf;
    const Fraction inv_n = Fraction::make(1, n);
    for (std::size_t c = 0; c < n; ++c) {
        mp = mp + precision[c] * inv_n;
        mr = mr + recall[c] * inv_n;
        mf = mf + f1[c] * inv_n;
        const Fraction w = Fraction::make(cm.row_sum(c), cm.n_samples());
        wp = wp + precision[c] * w;
        wr = wr + recall[c] * w;
        wf = wf + f1[c] * w;
    }
    r.macro = {mp.value(), mr.value(), mf.value(), cm.n_samples()};
    r.weighted = {wp.value(), wr.value(), wf.value(), cm.n_samples()};
    return r;
}

std::vector<std::vector<double>> row_normalize(const ConfusionMatrix& cm) {
    const std::size_t n = cm.n_classes();
    std::vector<std::vector<double>> out(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto total = cm.row_sum(i);
        if (total == 0) throw Error("row_normalize: class " + class_name(i, n) + " absent from true labels");
        for (std::size_t j = 0; j < n; ++j) {
            out[i][j] = static_cast<double>(cm.at(i, j)) / static_cast<double>(total);
        }
    }
    return out;
}

std::string format_scores(const MetricsReport& report) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << std::left << std::setw(14) << "" << std::right << std::setw(10) << "Precision" << std::setw(10) << "Recall"
       << std::setw(10) << "F-score" << std::setw(10) << "Support" << '\n';
    auto row = [&](const std::string& name, const ClassScore& s) {
        os << std::left << std::setw(14) << name << std::right << std::setw(10) << s.precision << std::setw(10)
           << s.recall << std::setw(10) << s.f1 << std::setw(10) << s.support << '\n';
    };
    const auto n = report.per_class.size();
    for (std::size_t c = 0; c < n; ++c) row(class_name(c, n), report.per_class[c]);
    row("macro avg", report.macro);
    row("weighted avg", report.weighted);
    os << "accuracy " << report.accuracy << '\n';
    if (report.zero_division) os << "warning: some precision/recall values had a zero denominator and were set to 0\n";
    return os.str();
}

std::string format_confusion(const ConfusionMatrix& cm) {
    const auto n = cm.n_classes();
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << std::left << std::setw(12) << "Class" << "Classified as\n";
    os << std::left << std::setw(12) << "";
    for (std::size_t j = 0; j < n; ++j) os << std::right << std::setw(11) << class_name(j, n);
    os << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        os << std::left << std::setw(12) << class_name(i, n);
        const auto total = cm.row_sum(i);
        for (std::size_t j = 0; j < n; ++j) {
            os << std::right << std::setw(11);
            if (total == 0) {
                os << "-";
            } else {
                os << static_cast<double>(cm.at(i, j)) / static_cast<double>(total);
            }
        }
        os << '\n';
    }
    return os.str();
}

void write_scores_csv(std::ostream& out, const MetricsReport& report) {
    out << "class,precision,recall,f1,support\n";
    out << std::setprecision(17);
    auto row = [&](const std::string& name, const ClassScore& s) {
        out << name << ',' << s.precision << ',' << s.recall << ',' << s.f1 << ',' << s.support << '\n';
    };
    const auto n = report.per_class.size();
    for (std::size_t c = 0; c < n; ++c) row(class_name(c, n), report.per_class[c]);
    row("macro avg", report.macro);
    row("weighted avg", report.weighted);
    out << "accuracy,,,," << report.accuracy << '\n';
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
    const auto n = cm.n_classes();
    out << "true\\predicted";
    for (std::size_t j = 0; j < n; ++j) out << ',' << class_name(j, n);
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << class_name(i, n);
        for (std::size_t j = 0; j < n; ++j) out << ',' << cm.at(i, j);
        out << '\n';
    }
}

}  // namespace tweetguard
