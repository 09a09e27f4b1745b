#include "sigvote/csv.hpp"

#include "sigvote/error.hpp"

#include <fstream>
#include <iterator>

namespace sigvote::csv {

std::vector<Row> read(std::istream& in, const std::string& source_name) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::size_t pos = 0;
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) pos = 3;

    std::vector<Row> rows;
    std::size_t line = 1;
    Row current{line, {}};
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        // a bare empty line is not a record
        if (!(current.fields.size() == 1 && current.fields[0].empty())) rows.push_back(std::move(current));
        current = Row{line, {}};
    };

    while (pos < text.size()) {
        const char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    pos += 2;
                    continue;
                }
                in_quotes = false;
                ++pos;
                continue;
            }
            if (c == '\n') ++line;
            field += c;
            ++pos;
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || field_was_quoted) {
                    throw ParseError(source_name, line, "unexpected quote inside unquoted field");
                }
                in_quotes = true;
                field_was_quoted = true;
                ++pos;
                break;
            case ',':
                end_field();
                ++pos;
                break;
            case '\r':
                ++pos;
                if (pos < text.size() && text[pos] == '\n') ++pos;
                ++line;
                end_record();
                break;
            case '\n':
                ++pos;
                ++line;
                end_record();
                break;
            default:
                if (field_was_quoted) {
                    throw ParseError(source_name, line, "characters after closing quote");
                }
                field += c;
                ++pos;
        }
    }
    if (in_quotes) throw ParseError(source_name, current.line, "unterminated quoted field");
    if (!field.empty() || field_was_quoted || !current.fields.empty()) end_record();
    return rows;
}

std::vector<Row> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return read(in, path);
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

}  // namespace sigvote::csv
