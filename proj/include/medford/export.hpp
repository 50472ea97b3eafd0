#pragma once

#include "medford/document.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace medford {

class ExportFormatError : public std::runtime_error {
public:
    ExportFormatError(std::string location, const std::string& what);
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

/// Deterministic JSON rendering of a document: fixed key order, two-space
/// indent, trailing newline.
std::string to_canonical_export(const Document& doc);

Document from_canonical_export(std::string_view text);

} // namespace medford
