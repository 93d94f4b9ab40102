#include "tweetguard/porter.hpp"

#include <algorithm>

namespace tweetguard {
namespace {

// Working state mirrors the reference implementation: the word lives in
// b[0..k], and `j` marks the end of the stem once a suffix has matched.
class PorterStemmer {
public:
    explicit PorterStemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

    std::string run() {
        if (k_ <= 1) return b_;
        step1ab();
        if (k_ > 0) {
            step1c();
            step2();
            step3();
            step4();
            step5();
        }
        return b_.substr(0, static_cast<std::size_t>(k_ + 1));
    }

private:
    std::string b_;
    int k_;
    int j_ = 0;

    bool cons(int i) const {
        switch (b_[static_cast<std::size_t>(i)]) {
            case 'a': case 'e': case 'i': case 'o': case 'u': return false;
            case 'y': return i == 0 ? true : !cons(i - 1);
            default: return true;
        }
    }

    // Number of VC sequences in b[0..j].
    int m() const {
        int n = 0;
        int i = 0;
        for (;;) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        for (;;) {
            for (;;) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            for (;;) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i) {
            if (!cons(i)) return true;
        }
        return false;
    }

    bool double_cons(int j) const {
        if (j < 1) return false;
        if (b_[static_cast<std::size_t>(j)] != b_[static_cast<std::size_t>(j - 1)]) return false;
        return cons(j);
    }

    // consonant-vowel-consonant ending at i, where the last consonant is not w, x or y
    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        const char ch = b_[static_cast<std::size_t>(i)];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(std::string_view s) {
        const int len = static_cast<int>(s.size());
        if (len > k_ + 1) return false;
        if (std::string_view(b_).substr(static_cast<std::size_t>(k_ + 1 - len), s.size()) != s) return false;
        j_ = k_ - len;
        return true;
    }

    void set_to(std::string_view s) {
        b_.replace(static_cast<std::size_t>(j_ + 1), b_.size() - static_cast<std::size_t>(j_ + 1), s);
        k_ = j_ + static_cast<int>(s.size());
    }

    void replace_if_measure(std::string_view s) {
        if (m() > 0) set_to(s);
    }

    char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

    // plurals and -ed / -ing
    void step1ab() {
        if (at(k_) == 's') {
            if (ends("sses")) {
                k_ -= 2;
            } else if (ends("ies")) {
                set_to("i");
            } else if (at(k_ - 1) != 's') {
                --k_;
            }
        }
        b_.resize(static_cast<std::size_t>(k_ + 1));
        if (ends("eed")) {
            if (m() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            b_.resize(static_cast<std::size_t>(k_ + 1));
            if (ends("at")) {
                set_to("ate");
            } else if (ends("bl")) {
                set_to("ble");
            } else if (ends("iz")) {
                set_to("ize");
            } else if (double_cons(k_)) {
                --k_;
                const char ch = at(k_);
                if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
            } else if (j_ = k_, m() == 1 && cvc(k_)) {
                set_to("e");
            }
        }
        b_.resize(static_cast<std::size_t>(k_ + 1));
    }

    // terminal y -> i when another vowel is in the stem
    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
    }

    bool rule(std::string_view suffix, std::string_view replacement) {
        if (!ends(suffix)) return false;
        replace_if_measure(replacement);
        return true;
    }

    // double suffixes -> single ones, for stems with m() > 0
    void step2() {
        if (k_ < 1) return;
        switch (at(k_ - 1)) {
            case 'a':
                rule("ational", "ate") || rule("tional", "tion");
                break;
            case 'c':
                rule("enci", "ence") || rule("anci", "ance");
                break;
            case 'e':
                rule("izer", "ize");
                break;
            case 'l':
                rule("bli", "ble") || rule("alli", "al") || rule("entli", "ent") || rule("eli", "e") ||
                    rule("ousli", "ous");
                break;
            case 'o':
                rule("ization", "ize") || rule("ation", "ate") || rule("ator", "ate");
                break;
            case 's':
                rule("alism", "al") || rule("iveness", "ive") || rule("fulness", "ful") ||
                    rule("ousness", "ous");
                break;
            case 't':
                rule("aliti", "al") || rule("iviti", "ive") || rule("biliti", "ble");
                break;
            case 'g':
                rule("logi", "log");
                break;
            default:
                break;
        }
        b_.resize(static_cast<std::size_t>(k_ + 1));
    }

    // -ic-, -full, -ness etc.
    void step3() {
        switch (at(k_)) {
            case 'e':
                rule("icate", "ic") || rule("ative", "") || rule("alize", "al");
                break;
            case 'i':
                rule("iciti", "ic");
                break;
            case 'l':
                rule("ical", "ic") || rule("ful", "");
                break;
            case 's':
                rule("ness", "");
                break;
            default:
                break;
        }
        b_.resize(static_cast<std::size_t>(k_ + 1));
    }

    // -ant, -ence etc. in context <c>vcvc<v>
    void step4() {
        if (k_ < 1) return;
        bool matched = false;
        switch (at(k_ - 1)) {
            case 'a': matched = ends("al"); break;
            case 'c': matched = ends("ance") || ends("ence"); break;
            case 'e': matched = ends("er"); break;
            case 'i': matched = ends("ic"); break;
            case 'l': matched = ends("able") || ends("ible"); break;
            case 'n': matched = ends("ant") || ends("ement") || ends("ment") || ends("ent"); break;
            case 'o':
                matched = (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) || ends("ou");
                break;
            case 's': matched = ends("ism"); break;
            case 't': matched = ends("ate") || ends("iti"); break;
            case 'u': matched = ends("ous"); break;
            case 'v': matched = ends("ive"); break;
            case 'z': matched = ends("ize"); break;
            default: break;
        }
        if (matched && m() > 1) k_ = j_;
        b_.resize(static_cast<std::size_t>(k_ + 1));
    }

    // final -e, and -ll -> -l for m() > 1
    void step5() {
        j_ = k_;
        if (at(k_) == 'e') {
            const int a = m();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
        }
        if (at(k_) == 'l' && double_cons(k_) && m() > 1) --k_;
        b_.resize(static_cast<std::size_t>(k_ + 1));
    }
};

}  // namespace

std::string porter_stem(std::string_view token) {
    const bool alphabetic =
        !token.empty() && std::all_of(token.begin(), token.end(), [](char c) { return c >= 'a' && c <= 'z'; });
    if (!alphabetic) return std::string(token);
    return PorterStemmer(token).run();
}

}  // namespace tweetguard
