#pragma once

#include "medford/diagnostic.hpp"

#include <string>
#include <string_view>

namespace medford {

/// `Line {n} : @{major}[-{minor}] {verb phrase}: {message}.`
std::string render(const Diagnostic& diag);

struct ReportCounts {
    int syntax = 0;
    int validation = 0;
    int missing_data = 0;

    int total() const { return syntax + validation + missing_data; }
    friend bool operator==(const ReportCounts&, const ReportCounts&) = default;
};

struct Report {
    std::string text;
    ReportCounts counts;
};

/// One rendered line per diagnostic followed by a summary line. Empty input
/// gives empty text.
Report report(const Diagnostics& diags);

/// One JSON object per line with keys line, major, minor, category, message.
std::string to_json_lines(const Diagnostics& diags);

} // namespace medford
