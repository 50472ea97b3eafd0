#pragma once

#include "medford/diagnostic.hpp"
#include "medford/lexer.hpp"
#include "medford/macro.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace medford {

/// Reserved attribute name under which a block's head value is addressed.
inline constexpr std::string_view kDescName = "desc";

struct Attribute {
    std::string minor;
    std::string value;
    int line = 0;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Block {
    std::string major;
    std::string desc;
    std::vector<Attribute> attributes;
    int head_line = 0;

    friend bool operator==(const Block&, const Block&) = default;
};

struct Document {
    std::string source_name;
    std::vector<Block> blocks;
    MacroTable macro_table;

    friend bool operator==(const Document&, const Document&) = default;
};

/// Splits at the first `-`. Returns nullopt for an empty major.
std::optional<TagPath> split_tag_token(std::string_view token);

struct AssembleResult {
    Document document;
    Diagnostics diagnostics;
};

/// Builds blocks from macro-expanded tag statements. A minor attaches to the
/// most recently opened block only if the majors match.
AssembleResult assemble(const std::vector<Statement>& statements,
                        std::string source_name = {},
                        MacroTable macros = {});

/// scan -> collect -> expand -> assemble.
AssembleResult parse_document(std::string_view file_text, std::string source_name = {});

/// Canonical MEDFORD text: macro definitions first, then one statement per
/// line in stored order.
std::string serialize_mfd(const Document& doc);

} // namespace medford
