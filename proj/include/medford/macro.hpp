#pragma once

#include "medford/diagnostic.hpp"
#include "medford/lexer.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace medford {

struct MacroEntry {
    std::string body;
    int defined_at = 0;

    friend bool operator==(const MacroEntry&, const MacroEntry&) = default;
};

/// Macro name -> definition. Names are one word of `[A-Za-z0-9_]`.
class MacroTable {
public:
    /// Returns false (and leaves the table untouched) if the name exists.
    bool define(std::string name, std::string body, int line);

    const MacroEntry* find(std::string_view name) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Entries in definition order.
    const std::vector<std::pair<std::string, MacroEntry>>& entries() const { return entries_; }

    friend bool operator==(const MacroTable&, const MacroTable&) = default;

private:
    std::vector<std::pair<std::string, MacroEntry>> entries_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

bool is_macro_name(std::string_view name);

struct CollectResult {
    MacroTable table;
    std::vector<Statement> tags;
    Diagnostics diagnostics;
};

CollectResult collect(std::vector<Statement> statements);

struct ExpandResult {
    std::string text;
    Diagnostics diagnostics;
};

/// Replaces every `` `@name `` with the macro body, re-scanning substituted
/// text until nothing changes. Undefined names are left in place and
/// reported; a table that never reaches a fixpoint is reported as a cycle.
/// `line` anchors any diagnostics.
ExpandResult expand(std::string_view body, const MacroTable& table, int line = 0);

/// Macro names chained from `start` back to a repeated name, or empty if
/// expansion of `start` terminates.
std::vector<std::string> find_cycle(const MacroTable& table, std::string_view start);

} // namespace medford
