#include "medford/render.hpp"

#include <json.hpp>

#include <algorithm>

namespace medford {

std::string to_string(const TagPath& path) {
    if (!path.minor)
        return path.major;
    return path.major + "-" + *path.minor;
}

std::string_view category_name(Category category) {
    switch (category) {
    case Category::Syntax:
        return "Syntax";
    case Category::Validation:
        return "Validation";
    case Category::MissingData:
        return "MissingData";
    }
    return "Syntax";
}

void sort_by_line(Diagnostics& diags) {
    std::stable_sort(diags.begin(), diags.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
}

namespace {

std::string_view verb_phrase(Category category) {
    switch (category) {
    case Category::MissingData:
        return "has incomplete information";
    case Category::Validation:
        return "is of the wrong type";
    case Category::Syntax:
        return "is invalid";
    }
    return "is invalid";
}

} // namespace

std::string render(const Diagnostic& diag) {
    std::string out = "Line " + std::to_string(diag.line) + " : @" + to_string(diag.path) + " ";
    out += verb_phrase(diag.category);
    out += ": ";
    out += diag.message;
    out += '.';
    return out;
}

Report report(const Diagnostics& diags) {
    Report rep;
    if (diags.empty())
        return rep;
    for (const Diagnostic& d : diags) {
        rep.text += render(d);
        rep.text += '\n';
        switch (d.category) {
        case Category::Syntax:
            ++rep.counts.syntax;
            break;
        case Category::Validation:
            ++rep.counts.validation;
            break;
        case Category::MissingData:
            ++rep.counts.missing_data;
            break;
        }
    }
    const int total = rep.counts.total();
    rep.text += std::to_string(total) + (total == 1 ? " problem (" : " problems (") +
                std::to_string(rep.counts.syntax) + " syntax, " + std::to_string(rep.counts.validation) +
                " validation, " + std::to_string(rep.counts.missing_data) + " missing data)\n";
    return rep;
}

std::string to_json_lines(const Diagnostics& diags) {
    std::string out;
    for (const Diagnostic& d : diags) {
        nlohmann::ordered_json obj;
        obj["line"] = d.line;
        obj["major"] = d.path.major;
        obj["minor"] = d.path.minor ? nlohmann::ordered_json(*d.path.minor) : nlohmann::ordered_json(nullptr);
        obj["category"] = category_name(d.category);
        obj["message"] = d.message;
        out += obj.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
        out += '\n';
    }
    return out;
}

} // namespace medford
