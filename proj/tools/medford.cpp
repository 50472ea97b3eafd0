// medford: validate MEDFORD metadata files, export them, and package them
// into BagIt bags.

#include "medford/bag.hpp"
#include "medford/document.hpp"
#include "medford/export.hpp"
#include "medford/render.hpp"
#include "medford/schema.hpp"
#include "medford/validator.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitProblems = 1;
constexpr int kExitError = 2;

constexpr const char* kSchemaEnv = "MEDFORD_SCHEMA";

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoFailure("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoFailure("cannot read " + path.string());
    return buffer.str();
}

medford::SchemaRegistry load_registry(const std::string& schema_flag) {
    std::string path = schema_flag;
    if (path.empty())
        if (const char* env = std::getenv(kSchemaEnv))
            path = env;
    if (path.empty())
        return medford::builtin_vocabulary();
    return medford::load_schema(read_file(path));
}

struct Checked {
    medford::Document doc;
    medford::Diagnostics diags;
};

Checked check_file(const fs::path& file, const medford::SchemaRegistry& registry) {
    auto parsed = medford::parse_document(read_file(file), file.stem().string());
    Checked out{std::move(parsed.document), std::move(parsed.diagnostics)};
    auto more = medford::validate_document(out.doc, registry);
    out.diags.insert(out.diags.end(), more.begin(), more.end());
    medford::sort_by_line(out.diags);
    return out;
}

int cmd_validate(const std::vector<std::string>& files, const std::string& schema, bool json) {
    const auto registry = load_registry(schema);

    struct Outcome {
        medford::Diagnostics diags;
        std::optional<std::string> error;
    };
    std::vector<std::future<Outcome>> jobs;
    for (const auto& file : files)
        jobs.push_back(std::async(std::launch::async, [&registry, file] {
            try {
                return Outcome{check_file(file, registry).diags, std::nullopt};
            } catch (const IoFailure& e) {
                return Outcome{{}, e.what()};
            }
        }));

    int code = kExitOk;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Outcome outcome = jobs[i].get();
        if (outcome.error) {
            std::cerr << "medford: " << *outcome.error << "\n";
            code = kExitError;
            continue;
        }
        const auto rep = medford::report(outcome.diags);
        if (files.size() > 1 && !rep.text.empty())
            std::cerr << files[i] << ":\n";
        std::cerr << rep.text;
        if (json)
            std::cout << medford::to_json_lines(outcome.diags);
        if (!outcome.diags.empty() && code == kExitOk)
            code = kExitProblems;
    }
    std::cout.flush();
    return code;
}

int cmd_export(const std::string& file, const std::string& out_path) {
    const auto parsed = medford::parse_document(read_file(file), fs::path(file).stem().string());
    std::cerr << medford::report(parsed.diagnostics).text;
    const std::string text = medford::to_canonical_export(parsed.document);
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return std::cout ? kExitOk : kExitError;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) {
        std::cerr << "medford: cannot write " << out_path << "\n";
        return kExitError;
    }
    return kExitOk;
}

int cmd_bag(const std::string& file, const std::string& base_dir, const std::string& out_dir,
            const std::string& schema) {
    const auto registry = load_registry(schema);
    Checked checked = check_file(file, registry);
    if (checked.diags.empty())
        checked.diags = medford::extract_provenance(checked.doc).diagnostics;
    if (!checked.diags.empty()) {
        std::cerr << medford::report(checked.diags).text;
        std::cerr << "medford: not creating a bag until the file validates\n";
        return kExitProblems;
    }

    const fs::path base = base_dir.empty() ? fs::absolute(file).parent_path() : fs::path(base_dir);
    try {
        const auto plan = medford::plan_bag(checked.doc, base);
        medford::write_bag(plan, out_dir);
        std::cerr << "wrote bag " << out_dir << " (" << plan.payload.size() << " payload files, "
                  << plan.fetch.size() << " fetch entries)\n";
    } catch (const medford::BagError& e) {
        std::cerr << "medford: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}

int cmd_verify_bag(const std::string& dir) {
    try {
        const auto result = medford::verify_bag(dir);
        for (const auto& m : result.mismatches) {
            std::cerr << medford::mismatch_kind_name(m.kind) << ": " << m.path;
            if (!m.detail.empty())
                std::cerr << " (" << m.detail << ")";
            std::cerr << "\n";
        }
        if (!result.ok()) {
            std::cerr << result.mismatches.size() << " problems in " << dir << "\n";
            return kExitProblems;
        }
        std::cerr << "bag ok: " << dir << "\n";
        return kExitOk;
    } catch (const medford::BagError& e) {
        std::cerr << "medford: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MEDFORD metadata validator and BagIt compiler"};
    app.require_subcommand(1);

    std::string schema;
    std::string out;
    std::string base_dir;
    bool json = false;
    std::vector<std::string> files;
    std::string file;
    std::string dir;

    auto* validate = app.add_subcommand("validate", "Check files and report diagnostics");
    validate->add_option("files", files, "MEDFORD files")->required();
    validate->add_option("--schema", schema, std::string("Schema overlay file (default: $") + kSchemaEnv + ")");
    validate->add_flag("--json-diagnostics", json, "Also print diagnostics as JSON lines on stdout");

    auto* exporter = app.add_subcommand("export", "Write the canonical JSON export");
    exporter->add_option("file", file, "MEDFORD file")->required();
    exporter->add_option("--out", out, "Output path (default: stdout)");

    auto* bag = app.add_subcommand("bag", "Validate, then compile into a BagIt bag");
    bag->add_option("file", file, "MEDFORD file")->required();
    bag->add_option("--out", out, "Bag directory to create")->required();
    bag->add_option("--base-dir", base_dir, "Directory that Path locators are relative to (default: the file's)");
    bag->add_option("--schema", schema, std::string("Schema overlay file (default: $") + kSchemaEnv + ")");

    auto* verify = app.add_subcommand("verify-bag", "Recompute and compare payload checksums");
    verify->add_option("dir", dir, "Bag directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*validate)
            return cmd_validate(files, schema, json);
        if (*exporter)
            return cmd_export(file, out);
        if (*bag)
            return cmd_bag(file, base_dir, out, schema);
        return cmd_verify_bag(dir);
    } catch (const IoFailure& e) {
        std::cerr << "medford: " << e.what() << "\n";
    } catch (const medford::SchemaFormatError& e) {
        std::cerr << "medford: " << e.what() << "\n";
    }
    return kExitError;
}
