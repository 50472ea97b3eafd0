#include "medford/validator.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <regex>

namespace medford {

namespace {

// Reads exactly `width` digits starting at `pos`.
bool read_number(std::string_view s, std::size_t pos, std::size_t width, int& out) {
    if (pos + width > s.size())
        return false;
    out = 0;
    for (std::size_t i = pos; i < pos + width; ++i) {
        if (!detail::is_digit(s[i]))
            return false;
        out = out * 10 + (s[i] - '0');
    }
    return true;
}

bool is_leap(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

int days_in_month(int year, int month) {
    constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return month == 2 && is_leap(year) ? 29 : days[month - 1];
}

// YYYY-MM-DD at the start of s.
bool parse_calendar_date(std::string_view s) {
    int year = 0, month = 0, day = 0;
    if (s.size() < 10 || s[4] != '-' || s[7] != '-')
        return false;
    if (!read_number(s, 0, 4, year) || !read_number(s, 5, 2, month) || !read_number(s, 8, 2, day))
        return false;
    return year >= 1 && month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

bool parse_clock(std::string_view s, std::size_t pos, bool with_seconds, std::size_t& end) {
    int hour = 0, minute = 0, second = 0;
    if (!read_number(s, pos, 2, hour) || pos + 2 >= s.size() || s[pos + 2] != ':' ||
        !read_number(s, pos + 3, 2, minute))
        return false;
    end = pos + 5;
    if (hour > 23 || minute > 59)
        return false;
    if (!with_seconds)
        return true;
    if (end >= s.size() || s[end] != ':' || !read_number(s, end + 1, 2, second) || second > 59)
        return false;
    end += 3;
    return true;
}

bool parse_datetime(std::string_view s) {
    if (s.size() < 19 || !parse_calendar_date(s) || s[10] != 'T')
        return false;
    std::size_t pos = 0;
    if (!parse_clock(s, 11, true, pos))
        return false;
    if (pos < s.size() && s[pos] == '.') {
        const std::size_t frac_start = ++pos;
        while (pos < s.size() && detail::is_digit(s[pos]))
            ++pos;
        if (pos == frac_start)
            return false;
    }
    if (pos == s.size())
        return true;
    if (s[pos] == 'Z')
        return pos + 1 == s.size();
    if (s[pos] == '+' || s[pos] == '-') {
        std::size_t end = 0;
        return parse_clock(s, pos + 1, false, end) && end == s.size();
    }
    return false;
}

std::optional<double> parse_decimal(std::string_view s) {
    static const std::regex decimal_re(R"(^[+-]?(\d+(\.\d*)?|\.\d+)$)");
    if (!std::regex_match(s.begin(), s.end(), decimal_re))
        return std::nullopt;
    if (s.starts_with('+'))
        s.remove_prefix(1);
    double value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return value;
}

} // namespace

DateForm check_date(std::string_view value) {
    value = detail::trim(value);
    if (value.size() == 10 && parse_calendar_date(value))
        return DateForm::Date;
    if (parse_datetime(value))
        return DateForm::DateTime;
    return DateForm::Invalid;
}

char orcid_check_char(std::string_view base_digits) {
    int total = 0;
    for (char c : base_digits)
        total = (total + (c - '0')) * 2 % 11;
    const int result = (12 - total % 11) % 11;
    return result == 10 ? 'X' : static_cast<char>('0' + result);
}

bool check_orcid(std::string_view value) {
    value = detail::trim(value);
    if (value.size() != 19)
        return false;
    std::string base;
    for (std::size_t i = 0; i < 18; ++i) {
        if (i == 4 || i == 9 || i == 14) {
            if (value[i] != '-')
                return false;
        } else if (detail::is_digit(value[i])) {
            base += value[i];
        } else {
            return false;
        }
    }
    const char check = value[18];
    if (!detail::is_digit(check) && check != 'X')
        return false;
    return orcid_check_char(base) == check;
}

bool check_email(std::string_view value) {
    value = detail::trim(value);
    if (std::any_of(value.begin(), value.end(), detail::is_space))
        return false;
    const auto at = value.find('@');
    if (at == std::string_view::npos || at == 0 || value.find('@', at + 1) != std::string_view::npos)
        return false;
    const auto domain = value.substr(at + 1);
    if (domain.find('.') == std::string_view::npos)
        return false;
    std::size_t start = 0;
    while (true) {
        const auto dot = domain.find('.', start);
        const auto label = domain.substr(start, dot == std::string_view::npos ? dot : dot - start);
        if (label.empty())
            return false;
        if (dot == std::string_view::npos)
            return true;
        start = dot + 1;
    }
}

bool check_latitude(std::string_view value) {
    const auto v = parse_decimal(detail::trim(value));
    return v && *v >= -90.0 && *v <= 90.0;
}

bool check_longitude(std::string_view value) {
    const auto v = parse_decimal(detail::trim(value));
    return v && *v >= -180.0 && *v <= 180.0;
}

bool check_uri(std::string_view value) {
    static const std::regex uri_re(R"(^[A-Za-z][A-Za-z0-9+.\-]*:\S+$)");
    value = detail::trim(value);
    return std::regex_match(value.begin(), value.end(), uri_re);
}

bool check_local_path(std::string_view value) {
    value = detail::trim(value);
    if (value.empty() || value.front() == '/' || value.front() == '\\')
        return false;
    if (value.size() >= 2 && value[1] == ':')
        return false;
    std::string normalized(value);
    std::replace(normalized.begin(), normalized.end(), '\\', '/');
    std::size_t start = 0;
    while (true) {
        const auto slash = normalized.find('/', start);
        const auto segment = std::string_view(normalized).substr(start, slash == std::string::npos ? slash : slash - start);
        if (segment == "..")
            return false;
        if (slash == std::string::npos)
            return true;
        start = slash + 1;
    }
}

bool value_matches(FieldType type, std::string_view value) {
    switch (type) {
    case FieldType::FreeText:
        return true;
    case FieldType::DateOrDateTime:
        return check_date(value) != DateForm::Invalid;
    case FieldType::Orcid:
        return check_orcid(value);
    case FieldType::Email:
        return check_email(value);
    case FieldType::Latitude:
        return check_latitude(value);
    case FieldType::Longitude:
        return check_longitude(value);
    case FieldType::Uri:
        return check_uri(value);
    case FieldType::LocalPath:
        return check_local_path(value);
    }
    return false;
}

std::string_view type_error_message(FieldType type) {
    switch (type) {
    case FieldType::FreeText:
        return "invalid text";
    case FieldType::DateOrDateTime:
        return "invalid date format";
    case FieldType::Orcid:
        return "invalid ORCID identifier";
    case FieldType::Email:
        return "invalid email address";
    case FieldType::Latitude:
        return "latitude must be a decimal number between -90 and 90";
    case FieldType::Longitude:
        return "longitude must be a decimal number between -180 and 180";
    case FieldType::Uri:
        return "invalid URI, expected a scheme such as https: or doi:";
    case FieldType::LocalPath:
        return "path must be relative and may not contain '..'";
    }
    return "invalid value";
}

Diagnostics detect_template_tokens(const Document& doc) {
    Diagnostics diags;
    const std::string message =
        "template placeholder " + std::string(kTemplateToken) + " must be filled in before validation";
    for (const Block& block : doc.blocks) {
        if (block.desc.find(kTemplateToken) != std::string::npos)
            diags.push_back({block.head_line, TagPath{block.major, std::string(kDescName)}, Category::Validation,
                             message});
        for (const Attribute& attr : block.attributes)
            if (attr.value.find(kTemplateToken) != std::string::npos)
                diags.push_back({attr.line, TagPath{block.major, attr.minor}, Category::Validation, message});
    }
    return diags;
}

namespace {

void check_value(const Block& block, const std::string& name, std::string_view value, int line,
                 const FieldSpec& spec, Diagnostics& out) {
    const auto trimmed = detail::trim(value);
    if (trimmed.empty()) {
        if (spec.required)
            out.push_back({line, TagPath{block.major, name}, Category::MissingData, "a value is required"});
        return;
    }
    // Placeholders are reported once, by detect_template_tokens.
    if (trimmed.find(kTemplateToken) != std::string_view::npos)
        return;
    if (!value_matches(spec.type, trimmed))
        out.push_back({line, TagPath{block.major, name}, Category::Validation,
                       std::string(type_error_message(spec.type))});
}

void validate_block(const Block& block, const TagSchema& schema, Diagnostics& out) {
    const std::string desc_name(kDescName);
    const bool has_unstructured = std::any_of(block.attributes.begin(), block.attributes.end(),
                                              [](const Attribute& a) { return a.minor == "Unstructured"; });
    FieldSpec desc_spec = schema.field(kDescName);
    desc_spec.required = desc_spec.required && !has_unstructured;
    check_value(block, desc_name, block.desc, block.head_line, desc_spec, out);

    std::map<std::string, int, std::less<>> first_seen;
    for (const Attribute& attr : block.attributes) {
        const FieldSpec spec = schema.field(attr.minor);
        check_value(block, attr.minor, attr.value, attr.line, spec, out);
        const auto [it, inserted] = first_seen.emplace(attr.minor, attr.line);
        if (!inserted && !spec.repeatable)
            out.push_back({attr.line, TagPath{block.major, attr.minor}, Category::Validation,
                           "may be given only once per block (first given on line " + std::to_string(it->second) +
                               ")"});
    }

    // An `X-Unstructured` attribute stands in for a required `X`.
    for (const auto& [name, spec] : schema.fields)
        if (name != desc_name && spec.required && !first_seen.contains(name) &&
            !first_seen.contains(name + "-Unstructured"))
            out.push_back(
                {block.head_line, TagPath{block.major, name}, Category::MissingData, "required field is missing"});

    for (const ConditionalRule& rule : schema.rules) {
        const bool triggered = std::any_of(block.attributes.begin(), block.attributes.end(), [&](const Attribute& a) {
            return a.minor == rule.when_minor && detail::trim(a.value) == rule.when_value;
        });
        if (!triggered)
            continue;
        const bool satisfied = std::any_of(block.attributes.begin(), block.attributes.end(), [&](const Attribute& a) {
            return a.minor == rule.require_minor && value_matches(rule.require_type, detail::trim(a.value)) &&
                   !detail::trim(a.value).empty();
        });
        if (!satisfied)
            out.push_back({block.head_line, TagPath{block.major, std::nullopt}, Category::MissingData, rule.message});
    }
}

} // namespace

Diagnostics validate_document(const Document& doc, const SchemaRegistry& registry) {
    Diagnostics diags;
    for (const Block& block : doc.blocks) {
        const TagSchema schema = registry.lookup(block.major);
        if (schema.known)
            validate_block(block, schema, diags);
    }
    const Diagnostics placeholders = detect_template_tokens(doc);
    diags.insert(diags.end(), placeholders.begin(), placeholders.end());
    sort_by_line(diags);
    return diags;
}

} // namespace medford
