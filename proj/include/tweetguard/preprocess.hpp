#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tweetguard {

using TokenSeq = std::vector<std::string>;

/// Immutable set of lowercase stopwords plus a version tag.
class StopwordList {
public:
    StopwordList() = default;
    StopwordList(std::vector<std::string> words, std::string version);

    /// Plain-text format: one word per line; `#` starts a comment. A comment
    /// line of the form `# version: <tag>` sets the version tag.
    static StopwordList parse(std::istream& in);
    static StopwordList load(const std::filesystem::path& path);

    /// The bundled 318-entry classic English list.
    static const StopwordList& english();

    bool contains(std::string_view word) const;
    const std::string& version() const noexcept { return version_; }
    std::size_t size() const noexcept { return words_.size(); }
    /// Sorted word list.
    std::vector<std::string> words() const;

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };
    std::unordered_set<std::string, Hash, std::equal_to<>> words_;
    std::string version_;
};

/// Lowercase, then remove URLs, mentions and standalone `rt`, then collapse
/// whitespace runs and strip the ends. A URL runs from `http://`, `https://`
/// or `www.` to the next whitespace; any other whitespace-delimited chunk
/// containing "http" is treated as a truncated link and removed too.
/// Idempotent.
std::string clean(std::string_view raw);

/// Maximal runs of ASCII alphanumerics, keeping apostrophes that sit between
/// two alphanumerics. Everything else separates tokens.
TokenSeq tokenize(std::string_view cleaned);

TokenSeq remove_stopwords(const TokenSeq& tokens, const StopwordList& stop);

/// porter_stem over remove_stopwords(tokenize(clean(raw))).
TokenSeq preprocess(std::string_view raw, const StopwordList& stop);

}  // namespace tweetguard
