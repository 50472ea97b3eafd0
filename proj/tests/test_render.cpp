#include "medford/render.hpp"

#include <doctest.h>

#include <json.hpp>

#include <set>

using namespace medford;

TEST_CASE("render") {
    CHECK(render({1, {"Contributor", std::nullopt}, Category::MissingData,
                  "Corresponding Authors must have a provided validated email"}) ==
          "Line 1 : @Contributor has incomplete information: Corresponding Authors must have a provided validated "
          "email.");
    CHECK(render({7, {"Date", "desc"}, Category::Validation, "invalid date format"}) ==
          "Line 7 : @Date-desc is of the wrong type: invalid date format.");
    CHECK(render({9, {"macro", "myinstitute"}, Category::Syntax, "multiple uses of the same macro name"}) ==
          "Line 9 : @macro-myinstitute is invalid: multiple uses of the same macro name.");
}

TEST_CASE("render is injective") {
    std::set<std::string> seen;
    int count = 0;
    for (int line : {1, 2, 12})
        for (const TagPath& path : {TagPath{"A", std::nullopt}, TagPath{"A", "b"}, TagPath{"A", "b-c"}, TagPath{"B", "c"}})
            for (auto cat : {Category::Syntax, Category::Validation, Category::MissingData})
                for (const char* msg : {"x", "x.", "y z"}) {
                    const std::string text = render({line, path, cat, msg});
                    CHECK(text.find("__root__") == std::string::npos);
                    CHECK(text.find("->") == std::string::npos);
                    seen.insert(text);
                    ++count;
                }
    CHECK(seen.size() == static_cast<std::size_t>(count));
}

TEST_CASE("report") {
    SUBCASE("empty") {
        const auto rep = report({});
        CHECK(rep.text.empty());
        CHECK(rep.counts == ReportCounts{});
    }
    SUBCASE("mixed") {
        const auto rep = report({{1, {"Contributor", std::nullopt}, Category::MissingData, "m"},
                                 {7, {"Date", "desc"}, Category::Validation, "invalid date format"}});
        CHECK(rep.text == "Line 1 : @Contributor has incomplete information: m.\n"
                          "Line 7 : @Date-desc is of the wrong type: invalid date format.\n"
                          "2 problems (0 syntax, 1 validation, 1 missing data)\n");
        CHECK(rep.counts == ReportCounts{0, 1, 1});
    }
    SUBCASE("syntax only") {
        Diagnostics diags(3, Diagnostic{1, {"macro", "a"}, Category::Syntax, "x"});
        const auto rep = report(diags);
        CHECK(rep.text.ends_with("3 problems (3 syntax, 0 validation, 0 missing data)\n"));
        CHECK(rep.counts.total() == 3);
    }
    SUBCASE("singular") {
        const auto rep = report({{2, {"A", "b"}, Category::Syntax, "x"}});
        CHECK(rep.text.ends_with("\n1 problem (1 syntax, 0 validation, 0 missing data)\n"));
    }
}

TEST_CASE("json diagnostics") {
    const std::string out = to_json_lines({{1, {"Contributor", std::nullopt}, Category::MissingData, "m"},
                                           {7, {"Date", "desc"}, Category::Validation, "bad"}});
    CHECK(out == "{\"line\":1,\"major\":\"Contributor\",\"minor\":null,\"category\":\"MissingData\",\"message\":\"m\"}\n"
                 "{\"line\":7,\"major\":\"Date\",\"minor\":\"desc\",\"category\":\"Validation\",\"message\":\"bad\"}\n");
    CHECK(to_json_lines({}).empty());
}
