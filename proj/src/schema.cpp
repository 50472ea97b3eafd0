#include "medford/schema.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>

namespace medford {

namespace {

constexpr std::array<std::pair<FieldType, std::string_view>, 8> kTypeNames{{
    {FieldType::FreeText, "FreeText"},
    {FieldType::DateOrDateTime, "DateOrDateTime"},
    {FieldType::Orcid, "Orcid"},
    {FieldType::Email, "Email"},
    {FieldType::Latitude, "Latitude"},
    {FieldType::Longitude, "Longitude"},
    {FieldType::Uri, "Uri"},
    {FieldType::LocalPath, "LocalPath"},
}};

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

bool has_space(std::string_view s) { return std::any_of(s.begin(), s.end(), detail::is_space); }

constexpr std::string_view kBuiltinSchema = R"(# Built-in MEDFORD vocabulary.
#
#   major.minor = type[,required][,repeatable]
#   rule major.minor == "value" requires minor as type: message
#
# `desc` is the value written on the major-only line. Minors not listed
# here are accepted as FreeText.

Contributor.desc = FreeText, required
Contributor.ORCID = Orcid
Contributor.Email = Email
Contributor.Role = FreeText, repeatable
Contributor.Association = FreeText, repeatable
Contributor.Note = FreeText, repeatable
rule Contributor.Role == "Corresponding Author" requires Email as Email: Corresponding Authors must have a provided validated email

Software.desc = FreeText, required
Software.Version = FreeText
Software.Notes = FreeText, repeatable
Software.Note = FreeText, repeatable

Method.desc = FreeText, required
Method.Type = FreeText
Method.Company = FreeText
Method.Sample = FreeText, repeatable
Method.Note = FreeText, repeatable

Species.desc = FreeText, required
Species.Loc = FreeText, repeatable
Species.ReefCollection = FreeText
Species.Cultured = FreeText
Species.CultureCollection = FreeText
Species.Note = FreeText, repeatable

Date.desc = DateOrDateTime, required
Date.Note = FreeText, required, repeatable
time.desc = DateOrDateTime, required
time.Note = FreeText, repeatable
Time.desc = DateOrDateTime, required
Time.Note = FreeText, repeatable

Image.desc = FreeText, required
Image.Date = DateOrDateTime
Image.Site = FreeText
Image.Habitat = FreeText
Image.Pole = FreeText
Image.Quadrant = FreeText
Image.Coral = FreeText, repeatable
Image.Coverage = FreeText
Image.Note = FreeText, repeatable

Taxonomy.desc = FreeText, required
Taxonomy.Type = FreeText
Taxonomy.Parent = FreeText
Taxonomy.Note = FreeText, repeatable

Region.desc = FreeText, required
Region.NorthernCoord = Latitude
Region.SouthernCoord = Latitude
Region.EasternCoord = Longitude
Region.WesternCoord = Longitude
Region.Note = FreeText, repeatable

Expedition.desc = FreeText, required
Expedition.ShipName = FreeText
Expedition.CruiseID = FreeText
Expedition.Date = DateOrDateTime
Expedition.Note = FreeText, repeatable

Freeform.desc = FreeText
Freeform.Note = FreeText, repeatable

# Provenance. Primary and Copy resources travel inside the bag and are
# located by Path, relative to the bag's base directory; Ref resources stay
# outside and are located by URI.
Data_Primary.desc = FreeText, required
Data_Primary.Path = LocalPath, required
Data_Copy.desc = FreeText, required
Data_Copy.Path = LocalPath, required
Data_Ref.desc = FreeText, required
Data_Ref.URI = Uri, required
Code_Primary.desc = FreeText, required
Code_Primary.Path = LocalPath, required
Code_Copy.desc = FreeText, required
Code_Copy.Path = LocalPath, required
Code_Ref.desc = FreeText, required
Code_Ref.URI = Uri, required
Paper_Primary.desc = FreeText, required
Paper_Primary.Path = LocalPath, required
Paper_Copy.desc = FreeText, required
Paper_Copy.Path = LocalPath, required
Paper_Ref.desc = FreeText, required
Paper_Ref.URI = Uri, required
)";

} // namespace

std::string_view field_type_name(FieldType type) {
    for (const auto& [t, name] : kTypeNames)
        if (t == type)
            return name;
    return "FreeText";
}

std::optional<FieldType> parse_field_type(std::string_view name) {
    for (const auto& [t, canonical] : kTypeNames)
        if (iequals(name, canonical))
            return t;
    if (iequals(name, "Text"))
        return FieldType::FreeText;
    if (iequals(name, "Date") || iequals(name, "DateTime"))
        return FieldType::DateOrDateTime;
    if (iequals(name, "Path"))
        return FieldType::LocalPath;
    return std::nullopt;
}

bool is_unstructured_name(std::string_view minor) {
    return minor == "Unstructured" || minor.ends_with("-Unstructured");
}

FieldSpec TagSchema::field(std::string_view minor) const {
    constexpr FieldSpec free_text{FieldType::FreeText, false, true};
    if (is_unstructured_name(minor))
        return free_text;
    const auto it = fields.find(minor);
    return it == fields.end() ? free_text : it->second;
}

SchemaFormatError::SchemaFormatError(int line, const std::string& what)
    : std::runtime_error("schema line " + std::to_string(line) + ": " + what), line_(line) {}

TagSchema SchemaRegistry::lookup(std::string_view major) const {
    if (const auto it = schemas_.find(major); it != schemas_.end())
        return it->second;
    TagSchema synthetic;
    synthetic.major = std::string(major);
    synthetic.known = false;
    return synthetic;
}

bool SchemaRegistry::contains(std::string_view major) const { return schemas_.find(major) != schemas_.end(); }

namespace {

std::pair<std::string, std::string> split_field_name(std::string_view name, int line) {
    const auto dot = name.find('.');
    if (dot == std::string_view::npos)
        throw SchemaFormatError(line, "expected 'major.minor', got '" + std::string(name) + "'");
    const auto major = name.substr(0, dot);
    const auto minor = name.substr(dot + 1);
    if (major.empty() || minor.empty() || has_space(major) || has_space(minor))
        throw SchemaFormatError(line, "expected 'major.minor', got '" + std::string(name) + "'");
    if (major.find('-') != std::string_view::npos)
        throw SchemaFormatError(line, "major tag '" + std::string(major) + "' may not contain '-'");
    return {std::string(major), std::string(minor)};
}

FieldType require_type(std::string_view name, int line) {
    const auto type = parse_field_type(name);
    if (!type)
        throw SchemaFormatError(line, "unknown field type '" + std::string(name) + "'");
    return *type;
}

} // namespace

void SchemaRegistry::overlay(std::string_view definition_text) {
    static const std::regex rule_re(R"re(^rule\s+(\S+)\s*==\s*"([^"]*)"\s+requires\s+(\S+)\s+as\s+(\S+)\s*:\s*(.*\S)\s*$)re");

    // Parse everything first so a bad line leaves the registry untouched.
    SchemaRegistry next = *this;
    int line_no = 0;
    std::size_t pos = 0;
    bool more = true;
    while (more) {
        const auto nl = definition_text.find('\n', pos);
        std::string_view raw = definition_text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        more = nl != std::string_view::npos;
        pos = more ? nl + 1 : pos;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        const auto line = detail::trim(raw);
        if (line.empty())
            continue;

        if (line.starts_with("rule ") || line.starts_with("rule\t")) {
            std::cmatch m;
            if (!std::regex_match(line.data(), line.data() + line.size(), m, rule_re))
                throw SchemaFormatError(line_no, "expected 'rule major.minor == \"value\" requires minor as "
                                                 "type: message'");
            auto [major, when_minor] = split_field_name(std::string_view(m[1].first, m[1].length()), line_no);
            std::string message = m[5].str();
            while (message.ends_with('.'))
                message.pop_back();
            ConditionalRule rule{when_minor, m[2].str(), m[3].str(), require_type(m[4].str(), line_no),
                                 std::move(message)};
            TagSchema& schema = next.schemas_[major];
            schema.major = major;
            const auto same_key = [&](const ConditionalRule& r) {
                return r.when_minor == rule.when_minor && r.when_value == rule.when_value &&
                       r.require_minor == rule.require_minor;
            };
            if (auto it = std::find_if(schema.rules.begin(), schema.rules.end(), same_key); it != schema.rules.end())
                *it = std::move(rule);
            else
                schema.rules.push_back(std::move(rule));
        } else {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw SchemaFormatError(line_no, "expected 'major.minor = type[,required][,repeatable]'");
            auto [major, minor] = split_field_name(detail::trim(line.substr(0, eq)), line_no);

            FieldSpec spec;
            std::string_view flags = line.substr(eq + 1);
            bool first = true;
            while (true) {
                const auto comma = flags.find(',');
                const auto item = detail::trim(flags.substr(0, comma));
                if (item.empty())
                    throw SchemaFormatError(line_no, "empty entry in field definition");
                if (first)
                    spec.type = require_type(item, line_no);
                else if (iequals(item, "required"))
                    spec.required = true;
                else if (iequals(item, "repeatable"))
                    spec.repeatable = true;
                else
                    throw SchemaFormatError(line_no, "unknown flag '" + std::string(item) + "'");
                first = false;
                if (comma == std::string_view::npos)
                    break;
                flags = flags.substr(comma + 1);
            }
            TagSchema& schema = next.schemas_[major];
            schema.major = major;
            schema.fields[minor] = spec;
        }
    }
    *this = std::move(next);
}

std::string_view builtin_schema_text() { return kBuiltinSchema; }

SchemaRegistry builtin_vocabulary() {
    static const SchemaRegistry registry = [] {
        SchemaRegistry r;
        r.overlay(kBuiltinSchema);
        return r;
    }();
    return registry;
}

SchemaRegistry load_schema(std::string_view definition_text) {
    SchemaRegistry registry = builtin_vocabulary();
    registry.overlay(definition_text);
    return registry;
}

} // namespace medford
