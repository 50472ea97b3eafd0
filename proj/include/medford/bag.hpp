#pragma once

#include "medford/diagnostic.hpp"
#include "medford/document.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace medford {

enum class ProvenanceKind { Data, Code, Paper };
enum class ProvenanceRole { Primary, Copy, Ref };

struct ProvenanceEntry {
    ProvenanceKind kind = ProvenanceKind::Data;
    ProvenanceRole role = ProvenanceRole::Primary;
    std::string desc;
    std::string locator;
    /// Index into Document::blocks.
    std::size_t block_index = 0;
    int line = 0;

    friend bool operator==(const ProvenanceEntry&, const ProvenanceEntry&) = default;
};

/// Recognizes `Data_Primary` ... `Paper_Ref`. Returns false for other majors.
bool parse_provenance_major(std::string_view major, ProvenanceKind& kind, ProvenanceRole& role);

struct ProvenanceResult {
    std::vector<ProvenanceEntry> entries;
    Diagnostics diagnostics;
};

/// Primary/Copy blocks take their locator from `Path`, Ref blocks from `URI`.
ProvenanceResult extract_provenance(const Document& doc);

struct PayloadEntry {
    /// Empty for the generated .mfd file, whose bytes live in BagPlan.
    std::filesystem::path source_path;
    std::string bag_path;
    std::string sha512;

    friend bool operator==(const PayloadEntry&, const PayloadEntry&) = default;
};

struct FetchEntry {
    std::string uri;
    /// BagIt allows `-` when the size is unknown.
    std::string length = "-";
    std::string bag_path;

    friend bool operator==(const FetchEntry&, const FetchEntry&) = default;
};

struct BagPlan {
    std::string mfd_bag_path;
    std::string mfd_text;
    std::vector<PayloadEntry> payload;
    std::vector<FetchEntry> fetch;
};

class BagError : public std::runtime_error {
public:
    enum class Kind {
        MissingLocator,
        UnsafePath,
        UnreadableFile,
        DuplicateBagPath,
        Io,
        NotABag,
    };

    BagError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Normalizes a relative locator to `/`-separated segments. Throws
/// BagError(UnsafePath) for absolute paths or `..` segments.
std::string sanitize_relative_path(std::string_view locator);

/// Percent-encodes `%`, CR and LF for manifest and fetch lines.
std::string encode_bag_path(std::string_view path);
std::string decode_bag_path(std::string_view encoded);

BagPlan plan_bag(const Document& doc, const std::filesystem::path& base_dir);

/// Writes into a fresh directory. Refuses a non-empty `out_dir`.
void write_bag(const BagPlan& plan, const std::filesystem::path& out_dir);

struct BagMismatch {
    enum class Kind {
        MissingFile,
        ExtraFile,
        DigestMismatch,
        MalformedManifest,
    };
    Kind kind;
    std::string path;
    std::string detail;
};

std::string_view mismatch_kind_name(BagMismatch::Kind kind);

struct VerifyResult {
    std::vector<BagMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Throws BagError(NotABag) when bagit.txt or manifest-sha512.txt is absent.
VerifyResult verify_bag(const std::filesystem::path& bag_dir);

} // namespace medford
