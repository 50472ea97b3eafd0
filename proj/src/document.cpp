#include "medford/document.hpp"

#include "text_util.hpp"

namespace medford {

std::optional<TagPath> split_tag_token(std::string_view token) {
    const auto dash = token.find('-');
    if (token.empty() || dash == 0)
        return std::nullopt;
    if (dash == std::string_view::npos)
        return TagPath{std::string(token), std::nullopt};
    return TagPath{std::string(token.substr(0, dash)), std::string(token.substr(dash + 1))};
}

AssembleResult assemble(const std::vector<Statement>& statements, std::string source_name, MacroTable macros) {
    AssembleResult result;
    Document& doc = result.document;
    doc.source_name = std::move(source_name);
    doc.macro_table = std::move(macros);

    // Only the most recently opened block accepts minors; once a minor is
    // rejected the block stays open for later matching minors.
    std::optional<std::size_t> open;
    for (const Statement& st : statements) {
        if (st.kind != StatementKind::Tag)
            continue;
        const auto path = split_tag_token(st.head_token);
        if (!path) {
            TagPath shown{"", std::nullopt};
            if (st.head_token.starts_with('-'))
                shown.minor = st.head_token.substr(1);
            result.diagnostics.push_back(
                {st.start_line, shown, Category::Syntax, "tag has no major name before the first '-'"});
            continue;
        }
        if (!path->minor) {
            doc.blocks.push_back(Block{path->major, st.body, {}, st.start_line});
            open = doc.blocks.size() - 1;
            continue;
        }
        if (!open || doc.blocks[*open].major != path->major) {
            std::string message = "minor tag has no @" + path->major + " major tag to attach to";
            if (open)
                message += " (the open block is @" + doc.blocks[*open].major + ")";
            result.diagnostics.push_back({st.start_line, *path, Category::MissingData, std::move(message)});
            continue;
        }
        doc.blocks[*open].attributes.push_back(Attribute{*path->minor, st.body, st.start_line});
    }
    return result;
}

AssembleResult parse_document(std::string_view file_text, std::string source_name) {
    ScanResult scanned = scan(file_text);
    CollectResult collected = collect(std::move(scanned.statements));

    Diagnostics diags = std::move(scanned.diagnostics);
    diags.insert(diags.end(), collected.diagnostics.begin(), collected.diagnostics.end());

    for (Statement& st : collected.tags) {
        ExpandResult expanded = expand(st.body, collected.table, st.start_line);
        st.body = std::move(expanded.text);
        diags.insert(diags.end(), expanded.diagnostics.begin(), expanded.diagnostics.end());
    }

    AssembleResult result = assemble(collected.tags, std::move(source_name), std::move(collected.table));
    diags.insert(diags.end(), result.diagnostics.begin(), result.diagnostics.end());
    sort_by_line(diags);
    result.diagnostics = std::move(diags);
    return result;
}

namespace {

void append_statement(std::string& out, std::string_view prefix, std::string_view token, std::string_view body) {
    out += prefix;
    out += token;
    if (!body.empty()) {
        out += ' ';
        out += body;
    }
    out += '\n';
}

} // namespace

std::string serialize_mfd(const Document& doc) {
    std::string out;
    for (const auto& [name, entry] : doc.macro_table.entries())
        append_statement(out, "`@", name, entry.body);
    for (const Block& block : doc.blocks) {
        append_statement(out, "@", block.major, block.desc);
        for (const Attribute& attr : block.attributes)
            append_statement(out, "@", block.major + "-" + attr.minor, attr.value);
    }
    return out;
}

} // namespace medford
