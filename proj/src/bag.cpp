#include "medford/bag.hpp"

#include "medford/sha512.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace medford {

bool parse_provenance_major(std::string_view major, ProvenanceKind& kind, ProvenanceRole& role) {
    const auto underscore = major.find('_');
    if (underscore == std::string_view::npos)
        return false;
    const auto kind_name = major.substr(0, underscore);
    const auto role_name = major.substr(underscore + 1);

    if (kind_name == "Data")
        kind = ProvenanceKind::Data;
    else if (kind_name == "Code")
        kind = ProvenanceKind::Code;
    else if (kind_name == "Paper")
        kind = ProvenanceKind::Paper;
    else
        return false;

    if (role_name == "Primary")
        role = ProvenanceRole::Primary;
    else if (role_name == "Copy")
        role = ProvenanceRole::Copy;
    else if (role_name == "Ref")
        role = ProvenanceRole::Ref;
    else
        return false;
    return true;
}

ProvenanceResult extract_provenance(const Document& doc) {
    ProvenanceResult result;
    for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
        const Block& block = doc.blocks[i];
        ProvenanceEntry entry;
        if (!parse_provenance_major(block.major, entry.kind, entry.role))
            continue;
        const std::string locator_name = entry.role == ProvenanceRole::Ref ? "URI" : "Path";
        const auto it = std::find_if(block.attributes.begin(), block.attributes.end(), [&](const Attribute& a) {
            return a.minor == locator_name && !detail::trim(a.value).empty();
        });
        if (it == block.attributes.end()) {
            result.diagnostics.push_back({block.head_line, TagPath{block.major, locator_name}, Category::MissingData,
                                          entry.role == ProvenanceRole::Ref
                                              ? "referenced resources need a URI"
                                              : "packaged resources need a Path to the file"});
            continue;
        }
        entry.desc = block.desc;
        entry.locator = std::string(detail::trim(it->value));
        entry.block_index = i;
        entry.line = block.head_line;
        result.entries.push_back(std::move(entry));
    }
    return result;
}

std::string sanitize_relative_path(std::string_view locator) {
    std::string path(detail::trim(locator));
    std::replace(path.begin(), path.end(), '\\', '/');
    if (path.empty())
        throw BagError(BagError::Kind::UnsafePath, "empty path");
    if (path.front() == '/' || (path.size() >= 2 && path[1] == ':'))
        throw BagError(BagError::Kind::UnsafePath, "path must be relative: " + std::string(locator));

    std::string out;
    std::size_t start = 0;
    while (start <= path.size()) {
        const auto slash = path.find('/', start);
        const auto segment = path.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
        if (segment == "..")
            throw BagError(BagError::Kind::UnsafePath, "path may not contain '..': " + std::string(locator));
        if (!segment.empty() && segment != ".") {
            if (!out.empty())
                out += '/';
            out += segment;
        }
        if (slash == std::string::npos)
            break;
        start = slash + 1;
    }
    if (out.empty())
        throw BagError(BagError::Kind::UnsafePath, "path names no file: " + std::string(locator));
    return out;
}

std::string encode_bag_path(std::string_view path) {
    std::string out;
    for (char c : path) {
        if (c == '%')
            out += "%25";
        else if (c == '\r')
            out += "%0D";
        else if (c == '\n')
            out += "%0A";
        else
            out += c;
    }
    return out;
}

std::string decode_bag_path(std::string_view encoded) {
    std::string out;
    for (std::size_t i = 0; i < encoded.size(); ++i) {
        if (encoded[i] == '%' && i + 2 < encoded.size()) {
            const auto code = encoded.substr(i + 1, 2);
            if (code == "25" || code == "0D" || code == "0d" || code == "0A" || code == "0a") {
                out += code == "25" ? '%' : (code[1] == 'D' || code[1] == 'd') ? '\r' : '\n';
                i += 2;
                continue;
            }
        }
        out += encoded[i];
    }
    return out;
}

namespace {

// Name for a fetched resource: the block's desc, falling back to the last
// URI segment, reduced to a portable character set.
std::string ref_file_name(const ProvenanceEntry& entry) {
    std::string_view source = detail::trim(entry.desc);
    if (source.empty()) {
        std::string_view uri = entry.locator;
        while (uri.ends_with('/'))
            uri.remove_suffix(1);
        const auto slash = uri.find_last_of("/:");
        source = slash == std::string_view::npos ? uri : uri.substr(slash + 1);
    }
    std::string name;
    for (char c : source) {
        const bool keep = detail::is_word_char(c) || c == '.' || c == '-';
        if (keep)
            name += c;
        else if (!name.empty() && name.back() != '_')
            name += '_';
    }
    while (!name.empty() && (name.back() == '_' || name.back() == '.'))
        name.pop_back();
    while (!name.empty() && name.front() == '.')
        name.erase(name.begin());
    return name.empty() ? "resource" : name;
}

bool is_within(const fs::path& base, const fs::path& candidate) {
    const auto rel = candidate.lexically_relative(base);
    return !rel.empty() && *rel.begin() != "..";
}

} // namespace

BagPlan plan_bag(const Document& doc, const fs::path& base_dir) {
    ProvenanceResult provenance = extract_provenance(doc);
    if (!provenance.diagnostics.empty())
        throw BagError(BagError::Kind::MissingLocator,
                       "@" + to_string(provenance.diagnostics.front().path) + " on line " +
                           std::to_string(provenance.diagnostics.front().line) + ": " +
                           provenance.diagnostics.front().message);

    BagPlan plan;
    std::string mfd_name = doc.source_name.empty() ? "metadata" : doc.source_name;
    if (!mfd_name.ends_with(".mfd"))
        mfd_name += ".mfd";
    plan.mfd_bag_path = "data/" + sanitize_relative_path(mfd_name);
    plan.mfd_text = serialize_mfd(doc);

    std::set<std::string> used{plan.mfd_bag_path};
    plan.payload.push_back({{}, plan.mfd_bag_path, sha512_hex(plan.mfd_text)});

    std::error_code ec;
    const fs::path base = fs::weakly_canonical(base_dir, ec);
    if (ec)
        throw BagError(BagError::Kind::UnreadableFile, "cannot resolve base directory " + base_dir.string());

    for (const ProvenanceEntry& entry : provenance.entries) {
        if (entry.role == ProvenanceRole::Ref)
            continue;
        const std::string rel = sanitize_relative_path(entry.locator);
        const fs::path source = fs::weakly_canonical(base / fs::path(rel), ec);
        if (ec || !is_within(base, source))
            throw BagError(BagError::Kind::UnsafePath, "line " + std::to_string(entry.line) + ": " + entry.locator +
                                                           " resolves outside " + base.string());
        if (!fs::is_regular_file(source, ec))
            throw BagError(BagError::Kind::UnreadableFile,
                           "line " + std::to_string(entry.line) + ": cannot read " + source.string());
        const std::string bag_path = "data/" + rel;
        if (!used.insert(bag_path).second)
            throw BagError(BagError::Kind::DuplicateBagPath,
                           "line " + std::to_string(entry.line) + ": " + bag_path + " is already in the bag");
        std::string digest;
        try {
            digest = sha512_file(source);
        } catch (const std::runtime_error& e) {
            throw BagError(BagError::Kind::UnreadableFile, "line " + std::to_string(entry.line) + ": " + e.what());
        }
        plan.payload.push_back({source, bag_path, std::move(digest)});
    }

    for (const ProvenanceEntry& entry : provenance.entries) {
        if (entry.role != ProvenanceRole::Ref)
            continue;
        if (std::any_of(entry.locator.begin(), entry.locator.end(), detail::is_space))
            throw BagError(BagError::Kind::UnsafePath,
                           "line " + std::to_string(entry.line) + ": URI contains whitespace: " + entry.locator);
        const std::string stem = "data/ref/" + ref_file_name(entry);
        std::string bag_path = stem;
        for (int n = 2; used.contains(bag_path); ++n)
            bag_path = stem + "-" + std::to_string(n);
        used.insert(bag_path);
        plan.fetch.push_back({entry.locator, "-", bag_path});
    }
    return plan;
}

namespace {

void write_text(const fs::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out)
        throw BagError(BagError::Kind::Io, "cannot write " + path.string());
}

fs::path staging_dir_for(const fs::path& out_dir) {
    std::random_device rd;
    const auto parent = out_dir.parent_path().empty() ? fs::path(".") : out_dir.parent_path();
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto candidate = parent / ("." + out_dir.filename().string() + ".partial-" + std::to_string(rd()));
        if (!fs::exists(candidate))
            return candidate;
    }
    throw BagError(BagError::Kind::Io, "cannot pick a staging directory next to " + out_dir.string());
}

} // namespace

void write_bag(const BagPlan& plan, const fs::path& out_dir) {
    std::error_code ec;
    if (fs::exists(out_dir, ec)) {
        if (!fs::is_directory(out_dir, ec) || !fs::is_empty(out_dir, ec))
            throw BagError(BagError::Kind::Io, "output directory is not empty: " + out_dir.string());
    }

    // Build next to the target and rename at the end, so a failure never
    // leaves a half-written bag behind.
    const fs::path staging = staging_dir_for(fs::absolute(out_dir));
    try {
        fs::create_directories(staging / "data");
        write_text(staging / "bagit.txt", "BagIt-Version: 1.0\nTag-File-Character-Encoding: UTF-8\n");

        for (const PayloadEntry& entry : plan.payload) {
            const fs::path target = staging / fs::path(entry.bag_path);
            fs::create_directories(target.parent_path());
            if (entry.bag_path == plan.mfd_bag_path && entry.source_path.empty()) {
                write_text(target, plan.mfd_text);
            } else {
                fs::copy_file(entry.source_path, target, fs::copy_options::overwrite_existing, ec);
                if (ec)
                    throw BagError(BagError::Kind::Io,
                                   "cannot copy " + entry.source_path.string() + ": " + ec.message());
            }
        }

        std::vector<const PayloadEntry*> sorted;
        for (const PayloadEntry& entry : plan.payload)
            sorted.push_back(&entry);
        std::sort(sorted.begin(), sorted.end(),
                  [](const PayloadEntry* a, const PayloadEntry* b) { return a->bag_path < b->bag_path; });
        std::string manifest;
        for (const PayloadEntry* entry : sorted)
            manifest += entry->sha512 + "  " + encode_bag_path(entry->bag_path) + "\n";
        write_text(staging / "manifest-sha512.txt", manifest);

        if (!plan.fetch.empty()) {
            std::string fetch;
            for (const FetchEntry& entry : plan.fetch)
                fetch += entry.uri + " " + entry.length + " " + encode_bag_path(entry.bag_path) + "\n";
            write_text(staging / "fetch.txt", fetch);
        }

        if (fs::exists(out_dir))
            fs::remove(out_dir);
        fs::rename(staging, out_dir);
    } catch (const fs::filesystem_error& e) {
        fs::remove_all(staging, ec);
        throw BagError(BagError::Kind::Io, e.what());
    } catch (...) {
        fs::remove_all(staging, ec);
        throw;
    }
}

std::string_view mismatch_kind_name(BagMismatch::Kind kind) {
    switch (kind) {
    case BagMismatch::Kind::MissingFile:
        return "missing";
    case BagMismatch::Kind::ExtraFile:
        return "not in manifest";
    case BagMismatch::Kind::DigestMismatch:
        return "checksum mismatch";
    case BagMismatch::Kind::MalformedManifest:
        return "malformed manifest";
    }
    return "mismatch";
}

VerifyResult verify_bag(const fs::path& bag_dir) {
    if (!fs::is_regular_file(bag_dir / "bagit.txt"))
        throw BagError(BagError::Kind::NotABag, bag_dir.string() + " has no bagit.txt");
    const fs::path manifest_path = bag_dir / "manifest-sha512.txt";
    std::ifstream manifest(manifest_path, std::ios::binary);
    if (!manifest)
        throw BagError(BagError::Kind::NotABag, bag_dir.string() + " has no manifest-sha512.txt");

    VerifyResult result;
    std::map<std::string, std::string> expected;
    std::string line;
    int line_no = 0;
    while (std::getline(manifest, line)) {
        ++line_no;
        if (line.ends_with('\r'))
            line.pop_back();
        if (detail::trim(line).empty())
            continue;
        const auto sep = line.find_first_of(" \t");
        const auto path_start = sep == std::string::npos ? sep : line.find_first_not_of(" \t", sep);
        if (sep != 128 || path_start == std::string::npos) {
            result.mismatches.push_back({BagMismatch::Kind::MalformedManifest, "manifest-sha512.txt",
                                         "line " + std::to_string(line_no)});
            continue;
        }
        std::string digest = line.substr(0, sep);
        std::transform(digest.begin(), digest.end(), digest.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        std::string path = decode_bag_path(line.substr(path_start));
        if (!path.starts_with("data/") || fs::path(path).lexically_normal().generic_string() != path ||
            path.find("/../") != std::string::npos) {
            result.mismatches.push_back({BagMismatch::Kind::MalformedManifest, path,
                                         "line " + std::to_string(line_no) + ": path is outside data/"});
            continue;
        }
        expected[std::move(path)] = std::move(digest);
    }

    std::set<std::string> present;
    std::error_code ec;
    if (fs::is_directory(bag_dir / "data")) {
        for (auto it = fs::recursive_directory_iterator(bag_dir / "data", ec); it != fs::recursive_directory_iterator();
             it.increment(ec)) {
            if (ec)
                throw BagError(BagError::Kind::Io, ec.message());
            if (it->is_regular_file())
                present.insert(it->path().lexically_relative(bag_dir).generic_string());
        }
    }

    for (const auto& [path, digest] : expected) {
        if (!present.contains(path)) {
            result.mismatches.push_back({BagMismatch::Kind::MissingFile, path, {}});
            continue;
        }
        std::string actual;
        try {
            actual = sha512_file(bag_dir / fs::path(path));
        } catch (const std::runtime_error& e) {
            throw BagError(BagError::Kind::Io, e.what());
        }
        if (actual != digest)
            result.mismatches.push_back({BagMismatch::Kind::DigestMismatch, path, "expected " + digest.substr(0, 16) +
                                                                                      "..., got " +
                                                                                      actual.substr(0, 16) + "..."});
    }
    for (const auto& path : present)
        if (!expected.contains(path))
            result.mismatches.push_back({BagMismatch::Kind::ExtraFile, path, {}});
    return result;
}

} // namespace medford
