#pragma once

#include "medford/diagnostic.hpp"
#include "medford/document.hpp"
#include "medford/schema.hpp"

#include <string_view>

namespace medford {

/// Literal placeholder that must be replaced before a file validates.
inline constexpr std::string_view kTemplateToken = "[..]";

enum class DateForm {
    Invalid,
    Date,
    DateTime,
};

/// `YYYY-MM-DD`, or `YYYY-MM-DDThh:mm:ss[.frac][Z|+hh:mm|-hh:mm]`.
/// The date form is tried first, then the datetime form.
DateForm check_date(std::string_view value);

/// `DDDD-DDDD-DDDD-DDDC` with an ISO 7064 mod 11-2 check character.
bool check_orcid(std::string_view value);
char orcid_check_char(std::string_view base_digits);

bool check_email(std::string_view value);
bool check_latitude(std::string_view value);
bool check_longitude(std::string_view value);
bool check_uri(std::string_view value);
bool check_local_path(std::string_view value);

bool value_matches(FieldType type, std::string_view value);

/// The single message reported when a value fails `type`.
std::string_view type_error_message(FieldType type);

Diagnostics detect_template_tokens(const Document& doc);

/// Runs every check (types, required fields, repeat limits, conditional
/// rules, template placeholders) and returns diagnostics ordered by line.
Diagnostics validate_document(const Document& doc, const SchemaRegistry& registry);

} // namespace medford
