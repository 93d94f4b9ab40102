#include "tweetguard/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "tweetguard/csv.hpp"
#include "tweetguard/error.hpp"
#include "tweetguard/rng.hpp"
#include "tweetguard/text_util.hpp"

namespace tweetguard {
namespace {

std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

void check_text(const std::string& text, std::size_t line) {
    if (!is_valid_utf8(text)) throw Error(line_prefix(line) + "text is not valid UTF-8");
    if (text.empty()) throw Error(line_prefix(line) + "empty text");
}

std::vector<RawRecord> parse_csv(std::istream& in) {
    const auto rows = csv::read_rows(in);
    if (rows.empty()) throw Error("line 1: missing header `id,text,label`");
    const auto& header = rows.front();
    if (header.fields != std::vector<std::string>{"id", "text", "label"}) {
        throw Error(line_prefix(header.line) + "expected header `id,text,label`");
    }
    std::vector<RawRecord> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 3) {
            throw Error(line_prefix(row.line) + "expected 3 columns, found " +
                        std::to_string(row.fields.size()));
        }
        RawRecord rec;
        if (!row.fields[0].empty()) rec.id = row.fields[0];
        rec.text = row.fields[1];
        rec.raw_label = row.fields[2];
        rec.line = row.line;
        check_text(rec.text, rec.line);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<RawRecord> parse_jsonl(std::istream& in) {
    std::vector<RawRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
            continue;
        }
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error&) {
            throw Error(line_prefix(lineno) + "invalid JSON");
        }
        if (!obj.is_object()) throw Error(line_prefix(lineno) + "expected a JSON object");
        RawRecord rec;
        rec.line = lineno;
        if (auto it = obj.find("id"); it != obj.end() && !it->is_null()) {
            if (it->is_string()) {
                rec.id = it->get<std::string>();
            } else if (it->is_number_integer()) {
                rec.id = it->dump();
            } else {
                throw Error(line_prefix(lineno) + "`id` must be a string");
            }
        }
        auto text = obj.find("text");
        auto label = obj.find("label");
        if (text == obj.end() || !text->is_string()) {
            throw Error(line_prefix(lineno) + "missing string field `text`");
        }
        if (label == obj.end() || !label->is_string()) {
            throw Error(line_prefix(lineno) + "missing string field `label`");
        }
        rec.text = text->get<std::string>();
        rec.raw_label = label->get<std::string>();
        check_text(rec.text, lineno);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

RecordFormat format_from_path(const std::filesystem::path& path) {
    const auto ext = ascii_lower(path.extension().string());
    if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") return RecordFormat::Jsonl;
    return RecordFormat::Csv;
}

std::vector<RawRecord> parse_records(std::istream& in, RecordFormat format) {
    return format == RecordFormat::Csv ? parse_csv(in) : parse_jsonl(in);
}

std::vector<RawRecord> load_records(const std::filesystem::path& path, RecordFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return parse_records(in, format);
}

Label map_label(std::string_view raw_label) {
    const std::string key = ascii_lower(trim(raw_label));
    if (key == "hateful" || key == "sexism" || key == "racism") return Label::Hateful;
    if (key == "offensive") return Label::Offensive;
    if (key == "clean" || key == "neither") return Label::Clean;
    throw Error("unknown label \"" + std::string(raw_label) + "\"");
}

std::vector<LabeledTweet> to_labeled(const std::vector<RawRecord>& records) {
    std::vector<LabeledTweet> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        try {
            out.push_back({r.id, r.text, map_label(r.raw_label)});
        } catch (const Error& e) {
            throw Error(line_prefix(r.line) + e.what());
        }
    }
    return out;
}

Split shuffle_split(const std::vector<LabeledTweet>& records, const SplitSpec& spec) {
    if (records.empty()) throw Error("cannot split an empty dataset");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw Error("train fraction must lie in (0, 1)");
    }
    const auto perm = seeded_permutation(records.size(), spec.seed);
    const auto n_train = static_cast<std::size_t>(
        std::floor(static_cast<double>(records.size()) * spec.train_fraction));
    Split split;
    split.train.reserve(n_train);
    split.test.reserve(records.size() - n_train);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        (i < n_train ? split.train : split.test).push_back(records[perm[i]]);
    }
    return split;
}

void write_csv(std::ostream& out, const std::vector<LabeledTweet>& records) {
    csv::write_row(out, {"id", "text", "label"});
    for (const auto& r : records) {
        csv::write_row(out, {r.id.value_or(""), r.text, std::string(to_string(r.label))});
    }
}

void write_csv(const std::filesystem::path& path, const std::vector<LabeledTweet>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    write_csv(out, records);
    if (!out) throw Error("write failed: " + path.string());
}

std::vector<LabeledTweet> load_labeled(const std::filesystem::path& path) {
    try {
        return to_labeled(load_records(path, format_from_path(path)));
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

}  // namespace tweetguard
