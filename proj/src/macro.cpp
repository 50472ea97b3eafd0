#include "medford/macro.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <set>

namespace medford {

bool MacroTable::define(std::string name, std::string body, int line) {
    if (index_.contains(name))
        return false;
    index_.emplace(name, entries_.size());
    entries_.emplace_back(std::move(name), MacroEntry{std::move(body), line});
    return true;
}

const MacroEntry* MacroTable::find(std::string_view name) const {
    const auto it = index_.find(name);
    return it == index_.end() ? nullptr : &entries_[it->second].second;
}

bool is_macro_name(std::string_view name) {
    return !name.empty() && std::all_of(name.begin(), name.end(), detail::is_word_char);
}

CollectResult collect(std::vector<Statement> statements) {
    CollectResult result;
    for (Statement& st : statements) {
        if (st.kind == StatementKind::Tag) {
            result.tags.push_back(std::move(st));
            continue;
        }
        if (!is_macro_name(st.head_token)) {
            result.diagnostics.push_back(
                {st.start_line,
                 TagPath{"macro", st.head_token.empty() ? std::nullopt : std::optional(st.head_token)},
                 Category::Syntax, "macro name must be one word of letters, digits or underscores"});
            continue;
        }
        if (const MacroEntry* first = result.table.find(st.head_token)) {
            result.diagnostics.push_back({st.start_line, TagPath{"macro", st.head_token}, Category::Syntax,
                                          "multiple uses of the same macro name (lines " +
                                              std::to_string(first->defined_at) + " and " +
                                              std::to_string(st.start_line) + ")"});
            continue;
        }
        result.table.define(st.head_token, std::move(st.body), st.start_line);
    }
    return result;
}

namespace {

struct Invocation {
    std::size_t begin;
    std::size_t end;
    std::string_view name;
};

// Finds the next `` `@name `` at or after `from`. The name is the maximal
// word-character run after the marker and may be empty.
std::optional<Invocation> next_invocation(std::string_view text, std::size_t from) {
    const auto pos = text.find("`@", from);
    if (pos == std::string_view::npos)
        return std::nullopt;
    std::size_t end = pos + 2;
    while (end < text.size() && detail::is_word_char(text[end]))
        ++end;
    return Invocation{pos, end, text.substr(pos + 2, end - pos - 2)};
}

std::vector<std::string> referenced_names(std::string_view text) {
    std::vector<std::string> names;
    for (auto inv = next_invocation(text, 0); inv; inv = next_invocation(text, inv->end))
        if (!inv->name.empty())
            names.emplace_back(inv->name);
    return names;
}

bool cycle_dfs(const MacroTable& table, const std::string& name, std::vector<std::string>& stack) {
    if (std::find(stack.begin(), stack.end(), name) != stack.end()) {
        stack.push_back(name);
        return true;
    }
    const MacroEntry* entry = table.find(name);
    if (!entry)
        return false;
    stack.push_back(name);
    for (const auto& next : referenced_names(entry->body))
        if (cycle_dfs(table, next, stack))
            return true;
    stack.pop_back();
    return false;
}

} // namespace

std::vector<std::string> find_cycle(const MacroTable& table, std::string_view start) {
    std::vector<std::string> stack;
    if (cycle_dfs(table, std::string(start), stack))
        return stack;
    return {};
}

ExpandResult expand(std::string_view body, const MacroTable& table, int line) {
    ExpandResult result;
    std::set<std::string, std::less<>> reported;
    std::string text(body);

    // An acyclic table nests at most |table| deep, so one more pass than
    // that with substitutions still happening means a cycle.
    const std::size_t max_passes = table.size() + 1;
    for (std::size_t pass = 0;; ++pass) {
        std::string out;
        bool changed = false;
        std::size_t copied = 0;
        for (auto inv = next_invocation(text, 0); inv; inv = next_invocation(text, inv->end)) {
            if (inv->name.empty())
                continue;
            const MacroEntry* entry = table.find(inv->name);
            if (!entry) {
                if (reported.insert(std::string(inv->name)).second)
                    result.diagnostics.push_back({line, TagPath{"macro", std::string(inv->name)}, Category::Syntax,
                                                  "macro is used but never defined"});
                continue;
            }
            if (pass >= max_passes) {
                std::string entry_point(inv->name);
                std::vector<std::string> cycle;
                for (const auto& name : referenced_names(body)) {
                    cycle = find_cycle(table, name);
                    if (!cycle.empty()) {
                        entry_point = name;
                        break;
                    }
                }
                std::string chain;
                for (const auto& name : cycle)
                    chain += (chain.empty() ? "" : ", ") + name;
                std::string message = "macro expansion never terminates";
                if (!chain.empty())
                    message += " (cycle: " + chain + ")";
                result.diagnostics.push_back(
                    {line, TagPath{"macro", entry_point}, Category::Syntax, std::move(message)});
                result.text = std::string(body);
                return result;
            }
            out.append(text, copied, inv->begin - copied);
            out += entry->body;
            copied = inv->end;
            changed = true;
        }
        if (!changed) {
            result.text = std::move(text);
            return result;
        }
        out.append(text, copied, std::string::npos);
        text = std::move(out);
    }
}

} // namespace medford
