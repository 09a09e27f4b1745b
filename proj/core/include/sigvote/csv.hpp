#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sigvote::csv {

struct Row {
    std::size_t line = 0;  // line on which the record starts
    std::vector<std::string> fields;
};

// RFC-4180 reader: quoted fields may contain commas, doubled quotes and line
// breaks. CRLF and LF line endings are both accepted; a UTF-8 BOM is skipped.
// Throws ParseError on an unterminated quote or stray quote character.
std::vector<Row> read(std::istream& in, const std::string& source_name);
std::vector<Row> read_file(const std::string& path);

std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace sigvote::csv
