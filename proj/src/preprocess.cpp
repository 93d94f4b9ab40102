#include "tweetguard/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tweetguard/error.hpp"
#include "tweetguard/porter.hpp"
#include "tweetguard/text_util.hpp"

namespace tweetguard {
namespace detail {
extern const char* const kEnglishStopwordsText;
}

StopwordList::StopwordList(std::vector<std::string> words, std::string version)
    : version_(std::move(version)) {
    for (auto& w : words) {
        if (w.empty()) throw Error("empty stopword");
        if (ascii_lower(w) != w) throw Error("stopword not lowercase: " + w);
        words_.insert(std::move(w));
    }
}

StopwordList StopwordList::parse(std::istream& in) {
    std::vector<std::string> words;
    std::string version = "unversioned";
    std::string line;
    while (std::getline(in, line)) {
        std::string_view v = trim(line);
        if (v.empty()) continue;
        if (v.front() == '#') {
            v.remove_prefix(1);
            v = trim(v);
            constexpr std::string_view tag = "version:";
            if (v.starts_with(tag)) version = std::string(trim(v.substr(tag.size())));
            continue;
        }
        words.emplace_back(v);
    }
    return StopwordList(std::move(words), std::move(version));
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open stopword list " + path.string());
    return parse(in);
}

const StopwordList& StopwordList::english() {
    static const StopwordList list = [] {
        std::istringstream in(detail::kEnglishStopwordsText);
        return parse(in);
    }();
    return list;
}

bool StopwordList::contains(std::string_view word) const { return words_.find(word) != words_.end(); }

std::vector<std::string> StopwordList::words() const {
    std::vector<std::string> out(words_.begin(), words_.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool is_word_char(char c) noexcept { return is_ascii_alnum(c) || c == '_'; }

// Replaces [from, to) with a single space so removal never fuses neighbours.
void blank_out(std::string& s, std::size_t from, std::size_t to) {
    s.replace(from, to - from, " ");
}

void remove_urls(std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const std::string_view rest = std::string_view(s).substr(i);
        if (rest.starts_with("http://") || rest.starts_with("https://") || rest.starts_with("www.")) {
            std::size_t end = i;
            while (end < s.size() && !is_ascii_space(s[end])) ++end;
            blank_out(s, i, end);
        }
        ++i;
    }
    // Truncated links ("http", "https:/", "...http...") are dropped whole.
    for (std::size_t start = 0; start < s.size();) {
        if (is_ascii_space(s[start])) {
            ++start;
            continue;
        }
        std::size_t end = start;
        while (end < s.size() && !is_ascii_space(s[end])) ++end;
        if (std::string_view(s).substr(start, end - start).find("http") != std::string_view::npos) {
            blank_out(s, start, end);
            end = start + 1;
        }
        start = end;
    }
}

void remove_mentions(std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '@' && i + 1 < s.size() && is_word_char(s[i + 1])) {
            std::size_t end = i + 1;
            while (end < s.size() && is_word_char(s[end])) ++end;
            blank_out(s, i, end);
        }
        ++i;
    }
}

void remove_retweet_tokens(std::string& s) {
    for (std::size_t i = 0; i + 1 < s.size() + 1; ++i) {
        const bool start_ok = i == 0 || is_ascii_space(s[i - 1]);
        if (!start_ok || s.compare(i, 2, "rt") != 0) continue;
        const bool end_ok = i + 2 == s.size() || is_ascii_space(s[i + 2]);
        if (end_ok) blank_out(s, i, i + 2);
    }
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
        if (is_ascii_space(c)) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string clean(std::string_view raw) {
    std::string s = ascii_lower(raw);
    remove_urls(s);
    remove_mentions(s);
    remove_retweet_tokens(s);
    return collapse_whitespace(s);
}

TokenSeq tokenize(std::string_view cleaned) {
    TokenSeq tokens;
    std::string current;
    const std::size_t n = cleaned.size();
    for (std::size_t i = 0; i < n; ++i) {
        const char c = cleaned[i];
        if (is_ascii_alnum(c)) {
            current.push_back(c);
        } else if (c == '\'' && !current.empty() && i + 1 < n && is_ascii_alnum(cleaned[i + 1])) {
            current.push_back(c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

TokenSeq remove_stopwords(const TokenSeq& tokens, const StopwordList& stop) {
    TokenSeq out;
    out.reserve(tokens.size());
    std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(out),
                 [&](const std::string& t) { return !stop.contains(t); });
    return out;
}

TokenSeq preprocess(std::string_view raw, const StopwordList& stop) {
    TokenSeq tokens = remove_stopwords(tokenize(clean(raw)), stop);
    for (auto& t : tokens) t = porter_stem(t);
    return tokens;
}

}  // namespace tweetguard
