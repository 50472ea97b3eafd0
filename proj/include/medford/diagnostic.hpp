#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace medford {

/// A tag token split into its major and (optional) minor part.
/// `Code_Ref-Type` is {Code_Ref, Type}; `Software` is {Software, none}.
struct TagPath {
    std::string major;
    std::optional<std::string> minor;

    friend bool operator==(const TagPath&, const TagPath&) = default;
};

/// Renders `major[-minor]` without the leading `@`.
std::string to_string(const TagPath& path);

enum class Category {
    Syntax,
    Validation,
    MissingData,
};

std::string_view category_name(Category category);

struct Diagnostic {
    int line = 0;
    TagPath path;
    Category category = Category::Syntax;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

/// Stable sort by line; diagnostics on one line keep discovery order.
void sort_by_line(Diagnostics& diags);

} // namespace medford
