#include "tweetguard/csv.hpp"

#include <istream>
#include <iterator>
#include <ostream>

#include "tweetguard/error.hpp"

namespace tweetguard::csv {

std::vector<Row> read_rows(std::istream& in) {
    const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::vector<Row> rows;

    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = data.size();
    while (i < n) {
        Row row{line, {}};
        std::string field;
        bool row_done = false;
        while (!row_done) {
            field.clear();
            if (i < n && data[i] == '"') {
                const std::size_t start_line = line;
                ++i;
                for (;;) {
                    if (i >= n) {
                        throw Error("line " + std::to_string(start_line) + ": unterminated quoted field");
                    }
                    const char c = data[i++];
                    if (c == '"') {
                        if (i < n && data[i] == '"') {
                            field.push_back('"');
                            ++i;
                        } else {
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        field.push_back(c);
                    }
                }
                if (i < n && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
                    throw Error("line " + std::to_string(line) + ": unexpected character after closing quote");
                }
            } else {
                while (i < n && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
                    field.push_back(data[i++]);
                }
            }
            row.fields.push_back(field);

            if (i >= n) {
                row_done = true;
            } else if (data[i] == ',') {
                ++i;
            } else {
                if (data[i] == '\r') ++i;
                if (i < n && data[i] == '\n') ++i;
                ++line;
                row_done = true;
            }
        }
        // A bare newline is a blank line, not a one-field row.
        if (row.fields.size() == 1 && row.fields[0].empty()) continue;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

}  // namespace tweetguard::csv
