#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tweetguard::csv {

struct Row {
    std::size_t line;  // 1-based line on which the row starts
    std::vector<std::string> fields;
};

/// RFC-4180 reader: comma separator, double-quote quoting with "" escapes,
/// quoted fields may span lines. CRLF and LF line endings are accepted.
/// Throws Error on an unterminated quote or stray characters after a
/// closing quote.
std::vector<Row> read_rows(std::istream& in);

/// Quotes the field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace tweetguard::csv
