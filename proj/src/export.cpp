#include "medford/export.hpp"

#include <json.hpp>

namespace medford {

using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormatName = "medford-export";
constexpr int kFormatVersion = 1;

} // namespace

ExportFormatError::ExportFormatError(std::string location, const std::string& what)
    : std::runtime_error(location + ": " + what), location_(std::move(location)) {}

std::string to_canonical_export(const Document& doc) {
    json root;
    root["format"] = kFormatName;
    root["version"] = kFormatVersion;
    root["source_name"] = doc.source_name;

    json macros = json::array();
    for (const auto& [name, entry] : doc.macro_table.entries())
        macros.push_back(json{{"name", name}, {"body", entry.body}, {"defined_at", entry.defined_at}});
    root["macros"] = std::move(macros);

    json blocks = json::array();
    for (const Block& block : doc.blocks) {
        json attributes = json::array();
        for (const Attribute& attr : block.attributes)
            attributes.push_back(json{{"minor", attr.minor}, {"value", attr.value}, {"line", attr.line}});
        blocks.push_back(json{{"major", block.major},
                              {"desc", block.desc},
                              {"line", block.head_line},
                              {"attributes", std::move(attributes)}});
    }
    root["blocks"] = std::move(blocks);
    return root.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

namespace {

const json& member(const json& obj, const char* key, json::value_t type, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ExportFormatError(where, std::string("missing key '") + key + "'");
    const bool ok = type == json::value_t::number_integer ? it->is_number_integer() : it->type() == type;
    if (!ok)
        throw ExportFormatError(where + "/" + key, "unexpected value type");
    return *it;
}

std::string text_member(const json& obj, const char* key, const std::string& where) {
    return member(obj, key, json::value_t::string, where).get<std::string>();
}

int int_member(const json& obj, const char* key, const std::string& where) {
    return member(obj, key, json::value_t::number_integer, where).get<int>();
}

} // namespace

Document from_canonical_export(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ExportFormatError("byte " + std::to_string(e.byte), e.what());
    }
    if (!root.is_object())
        throw ExportFormatError("/", "expected an object");
    if (text_member(root, "format", "") != kFormatName)
        throw ExportFormatError("/format", "not a medford export");
    if (int_member(root, "version", "") != kFormatVersion)
        throw ExportFormatError("/version", "unsupported export version");

    Document doc;
    doc.source_name = text_member(root, "source_name", "");

    const json& macros = member(root, "macros", json::value_t::array, "");
    for (std::size_t i = 0; i < macros.size(); ++i) {
        const std::string where = "/macros/" + std::to_string(i);
        if (!macros[i].is_object())
            throw ExportFormatError(where, "expected an object");
        const std::string name = text_member(macros[i], "name", where);
        if (!is_macro_name(name))
            throw ExportFormatError(where + "/name", "invalid macro name");
        if (!doc.macro_table.define(name, text_member(macros[i], "body", where),
                                    int_member(macros[i], "defined_at", where)))
            throw ExportFormatError(where + "/name", "duplicate macro name");
    }

    const json& blocks = member(root, "blocks", json::value_t::array, "");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::string where = "/blocks/" + std::to_string(i);
        const json& b = blocks[i];
        if (!b.is_object())
            throw ExportFormatError(where, "expected an object");
        Block block;
        block.major = text_member(b, "major", where);
        if (block.major.empty())
            throw ExportFormatError(where + "/major", "empty major tag");
        block.desc = text_member(b, "desc", where);
        block.head_line = int_member(b, "line", where);
        const json& attributes = member(b, "attributes", json::value_t::array, where);
        for (std::size_t k = 0; k < attributes.size(); ++k) {
            const std::string at = where + "/attributes/" + std::to_string(k);
            if (!attributes[k].is_object())
                throw ExportFormatError(at, "expected an object");
            block.attributes.push_back(Attribute{text_member(attributes[k], "minor", at),
                                                 text_member(attributes[k], "value", at),
                                                 int_member(attributes[k], "line", at)});
        }
        doc.blocks.push_back(std::move(block));
    }
    return doc;
}

} // namespace medford
