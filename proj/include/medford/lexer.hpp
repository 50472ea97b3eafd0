#pragma once

#include "medford/diagnostic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace medford {

struct RawLine {
    std::string text;
    int line_no = 0;
};

enum class StatementKind {
    Tag,
    MacroDefinition,
};

/// One logical statement: a column-1 tag (or macro definition) line plus any
/// continuation lines that follow it.
struct Statement {
    StatementKind kind = StatementKind::Tag;
    std::string head_token;
    std::string body;
    int start_line = 0;
    int end_line = 0;

    friend bool operator==(const Statement&, const Statement&) = default;
};

struct ScanResult {
    std::vector<Statement> statements;
    Diagnostics diagnostics;
};

/// Splits text into physical lines. A leading UTF-8 BOM is dropped and a
/// trailing `\r` is removed from each line.
std::vector<RawLine> split_lines(std::string_view file_text);

/// Truncates the line at the first `#` outside a `$$...$$` span and trims
/// trailing whitespace.
std::string strip_comment(std::string_view line);

/// True if the (comment-stripped) line holds an odd number of `$$` markers.
bool has_unterminated_math(std::string_view stripped);

ScanResult scan(std::string_view file_text);

} // namespace medford
