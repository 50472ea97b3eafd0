#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace medford {

enum class FieldType {
    FreeText,
    DateOrDateTime,
    Orcid,
    Email,
    Latitude,
    Longitude,
    Uri,
    LocalPath,
};

std::string_view field_type_name(FieldType type);
std::optional<FieldType> parse_field_type(std::string_view name);

struct FieldSpec {
    FieldType type = FieldType::FreeText;
    bool required = false;
    bool repeatable = false;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// When any `when_minor` attribute equals `when_value`, the block must also
/// carry a `require_minor` whose value validates as `require_type`.
struct ConditionalRule {
    std::string when_minor;
    std::string when_value;
    std::string require_minor;
    FieldType require_type = FieldType::FreeText;
    std::string message;

    friend bool operator==(const ConditionalRule&, const ConditionalRule&) = default;
};

struct TagSchema {
    std::string major;
    std::map<std::string, FieldSpec, std::less<>> fields;
    std::vector<ConditionalRule> rules;
    /// False for the all-FreeText schema handed out for unknown majors.
    bool known = true;

    /// Spec for a minor (or `desc`). Unknown minors and anything named
    /// `Unstructured` / `*-Unstructured` come back as optional FreeText.
    FieldSpec field(std::string_view minor) const;

    friend bool operator==(const TagSchema&, const TagSchema&) = default;
};

bool is_unstructured_name(std::string_view minor);

class SchemaFormatError : public std::runtime_error {
public:
    SchemaFormatError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

/// Vocabulary of known tags. Lookup is total: unknown majors yield a
/// synthetic schema with `known == false`.
class SchemaRegistry {
public:
    TagSchema lookup(std::string_view major) const;
    bool contains(std::string_view major) const;
    const std::map<std::string, TagSchema, std::less<>>& schemas() const { return schemas_; }

    /// Applies schema-file text on top of the current entries. Field lines
    /// replace the whole FieldSpec; rules with the same (when, require) key
    /// replace earlier ones. Throws SchemaFormatError.
    void overlay(std::string_view definition_text);

    friend bool operator==(const SchemaRegistry&, const SchemaRegistry&) = default;

private:
    std::map<std::string, TagSchema, std::less<>> schemas_;
};

/// Schema-file text of the built-in vocabulary.
std::string_view builtin_schema_text();

SchemaRegistry builtin_vocabulary();

/// Built-in defaults overlaid with `definition_text`.
SchemaRegistry load_schema(std::string_view definition_text);

} // namespace medford
