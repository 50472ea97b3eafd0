#include "medford/lexer.hpp"

#include "text_util.hpp"

namespace medford {

namespace detail {

bool is_valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        unsigned lo = 0x80, hi = 0xBF;
        if (c >= 0xC2 && c <= 0xDF) {
            len = 2;
        } else if (c >= 0xE0 && c <= 0xEF) {
            len = 3;
            if (c == 0xE0)
                lo = 0xA0;
            else if (c == 0xED)
                hi = 0x9F;
        } else if (c >= 0xF0 && c <= 0xF4) {
            len = 4;
            if (c == 0xF0)
                lo = 0x90;
            else if (c == 0xF4)
                hi = 0x8F;
        } else {
            return false;
        }
        if (i + len > s.size())
            return false;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            const unsigned min = k == 1 ? lo : 0x80;
            const unsigned max = k == 1 ? hi : 0xBF;
            if (cc < min || cc > max)
                return false;
        }
        i += len;
    }
    return true;
}

} // namespace detail

std::vector<RawLine> split_lines(std::string_view file_text) {
    constexpr std::string_view bom = "\xEF\xBB\xBF";
    if (file_text.starts_with(bom))
        file_text.remove_prefix(bom.size());

    std::vector<RawLine> lines;
    int line_no = 0;
    while (!file_text.empty()) {
        const auto nl = file_text.find('\n');
        std::string_view text = file_text.substr(0, nl);
        if (text.ends_with('\r'))
            text.remove_suffix(1);
        lines.push_back({std::string(text), ++line_no});
        if (nl == std::string_view::npos)
            break;
        file_text.remove_prefix(nl + 1);
    }
    return lines;
}

std::string strip_comment(std::string_view line) {
    bool in_math = false;
    std::size_t end = line.size();
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '$' && i + 1 < line.size() && line[i + 1] == '$') {
            in_math = !in_math;
            ++i;
        } else if (line[i] == '#' && !in_math) {
            end = i;
            break;
        }
    }
    return std::string(detail::trim_right(line.substr(0, end)));
}

bool has_unterminated_math(std::string_view stripped) {
    std::size_t count = 0;
    for (std::size_t pos = stripped.find("$$"); pos != std::string_view::npos;
         pos = stripped.find("$$", pos + 2))
        ++count;
    return count % 2 == 1;
}

namespace {

Statement open_statement(StatementKind kind, std::string_view rest, int line_no) {
    std::size_t token_end = 0;
    while (token_end < rest.size() && !detail::is_space(rest[token_end]))
        ++token_end;
    Statement st;
    st.kind = kind;
    st.head_token = std::string(rest.substr(0, token_end));
    st.body = std::string(detail::trim(rest.substr(token_end)));
    st.start_line = line_no;
    st.end_line = line_no;
    return st;
}

TagPath path_of(std::string_view token) {
    const auto dash = token.find('-');
    if (dash == std::string_view::npos)
        return {std::string(token), std::nullopt};
    return {std::string(token.substr(0, dash)), std::string(token.substr(dash + 1))};
}

} // namespace

ScanResult scan(std::string_view file_text) {
    ScanResult result;
    auto& statements = result.statements;

    for (const RawLine& raw : split_lines(file_text)) {
        if (!detail::is_valid_utf8(raw.text)) {
            result.diagnostics.push_back({raw.line_no, TagPath{"line", std::nullopt}, Category::Syntax,
                                          "text is not valid UTF-8"});
            continue;
        }
        const std::string text = strip_comment(raw.text);
        if (detail::trim(text).empty())
            continue;

        if (has_unterminated_math(text)) {
            TagPath where{"line", std::nullopt};
            if (text.starts_with('@'))
                where = path_of(open_statement(StatementKind::Tag, std::string_view(text).substr(1), 0).head_token);
            else if (!statements.empty())
                where = path_of(statements.back().head_token);
            result.diagnostics.push_back(
                {raw.line_no, where, Category::Syntax, "math span opened with $$ is not closed on the same line"});
        }

        if (text.starts_with('@')) {
            statements.push_back(open_statement(StatementKind::Tag, std::string_view(text).substr(1), raw.line_no));
        } else if (text.starts_with("`@")) {
            statements.push_back(
                open_statement(StatementKind::MacroDefinition, std::string_view(text).substr(2), raw.line_no));
        } else if (statements.empty()) {
            result.diagnostics.push_back({raw.line_no, TagPath{"line", std::nullopt}, Category::Syntax,
                                          "text appears before the first tag"});
        } else {
            Statement& open = statements.back();
            const auto piece = detail::trim_left(text);
            if (!open.body.empty())
                open.body += ' ';
            open.body += piece;
            open.end_line = raw.line_no;
        }
    }
    return result;
}

} // namespace medford
