#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tweetguard/label.hpp"

namespace tweetguard {

/// A record as found in a source file, before label mapping.
struct RawRecord {
    std::optional<std::string> id;
    std::string text;
    std::string raw_label;
    std::size_t line = 0;  // 1-based source line, for diagnostics

    friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

struct LabeledTweet {
    std::optional<std::string> id;
    std::string text;
    Label label = Label::Clean;

    friend bool operator==(const LabeledTweet&, const LabeledTweet&) = default;
};

enum class RecordFormat { Csv, Jsonl };

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 42;
};

/// Picks jsonl for `.jsonl`/`.json`/`.ndjson` extensions, csv otherwise.
RecordFormat format_from_path(const std::filesystem::path& path);

/// Reads a canonical dataset. CSV must start with the header `id,text,label`;
/// JSONL holds one object per line with `text`, `label` and optional `id`.
/// Errors name the 1-based line number.
std::vector<RawRecord> load_records(const std::filesystem::path& path, RecordFormat format);
std::vector<RawRecord> parse_records(std::istream& in, RecordFormat format);

/// Case-insensitive mapping of the known source vocabularies:
/// hateful/sexism/racism -> Hateful, offensive -> Offensive, clean/neither -> Clean.
Label map_label(std::string_view raw_label);

/// Maps every record's label; the error message carries the source line.
std::vector<LabeledTweet> to_labeled(const std::vector<RawRecord>& records);

struct Split {
    std::vector<LabeledTweet> train;
    std::vector<LabeledTweet> test;
};

/// Seeded Fisher-Yates shuffle, then the first floor(n * train_fraction)
/// records become the training set.
Split shuffle_split(const std::vector<LabeledTweet>& records, const SplitSpec& spec);

/// Writes the canonical CSV (header `id,text,label`, lowercase class names).
void write_csv(std::ostream& out, const std::vector<LabeledTweet>& records);
void write_csv(const std::filesystem::path& path, const std::vector<LabeledTweet>& records);

/// Loads a dataset and maps its labels in one step.
std::vector<LabeledTweet> load_labeled(const std::filesystem::path& path);

}  // namespace tweetguard
