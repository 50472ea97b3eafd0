#include "medford/macro.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <regex>

using namespace medford;

namespace {

// Oracle: global regex replacement of every defined `` `@name `` until the
// text stops changing.
std::string naive_expand(std::string text, const std::map<std::string, std::string>& table) {
    static const std::regex invocation("`@([A-Za-z0-9_]+)");
    for (int guard = 0; guard < 1000; ++guard) {
        std::string out;
        std::size_t last = 0;
        for (auto it = std::sregex_iterator(text.begin(), text.end(), invocation); it != std::sregex_iterator(); ++it) {
            const auto found = table.find((*it)[1].str());
            if (found == table.end())
                continue;
            out += text.substr(last, static_cast<std::size_t>(it->position()) - last);
            out += found->second;
            last = static_cast<std::size_t>(it->position() + it->length());
        }
        out += text.substr(last);
        if (out == text)
            return text;
        text = out;
    }
    throw std::runtime_error("oracle did not converge");
}

MacroTable table_of(std::initializer_list<std::pair<std::string, std::string>> defs) {
    MacroTable t;
    int line = 0;
    for (const auto& [name, body] : defs)
        t.define(name, body, ++line);
    return t;
}

} // namespace

TEST_CASE("collect") {
    SUBCASE("single definition") {
        const auto result = collect(scan("`@myinstitute 100 Institute Drive, State, Zip\n@Contributor A\n").statements);
        CHECK(result.table.size() == 1);
        CHECK(result.tags.size() == 1);
        CHECK(result.diagnostics.empty());
        REQUIRE(result.table.find("myinstitute"));
        CHECK(result.table.find("myinstitute")->defined_at == 1);
    }
    SUBCASE("duplicate name names both lines") {
        std::string text = "`@myinstitute first\n";
        for (int i = 2; i <= 8; ++i)
            text += "@Note " + std::to_string(i) + "\n";
        text += "`@myinstitute second\n";
        const auto result = collect(scan(text).statements);
        REQUIRE(result.diagnostics.size() == 1);
        const Diagnostic& d = result.diagnostics[0];
        CHECK(d.line == 9);
        CHECK(d.category == Category::Syntax);
        CHECK(d.path == TagPath{"macro", "myinstitute"});
        CHECK(d.message == "multiple uses of the same macro name (lines 1 and 9)");
        CHECK(result.table.find("myinstitute")->body == "first");
    }
    SUBCASE("no definitions") {
        const auto statements = scan("@A x\n@A-b y\n").statements;
        const auto result = collect(statements);
        CHECK(result.table.empty());
        CHECK(result.tags == statements);
    }
    SUBCASE("macro names are one word") {
        const auto result = collect(scan("`@my-inst x\n`@ y\n").statements);
        CHECK(result.table.empty());
        CHECK(result.diagnostics.size() == 2);
    }
}

TEST_CASE("expand") {
    const MacroTable inst = table_of({{"myinstitute", "100 Institute Drive, State, Zip"}});
    CHECK(expand("`@myinstitute", inst).text == "100 Institute Drive, State, Zip");
    CHECK(expand("no backtick here", inst).text == "no backtick here");
    CHECK(expand("at `@myinstitute.", inst).text == "at 100 Institute Drive, State, Zip.");

    const MacroTable nested = table_of({{"a", "x `@b y"}, {"b", "z"}});
    const std::map<std::string, std::string> plain{{"a", "x `@b y"}, {"b", "z"}};
    CHECK(naive_expand("`@a", plain) == "x z y");
    CHECK(expand("`@a", nested).text == "x z y");

    SUBCASE("the name is the maximal word run") {
        const MacroTable t = table_of({{"a", "1"}, {"ab", "2"}});
        CHECK(expand("`@ab `@a-`@a_", t).text == "2 1-`@a_");
    }
    SUBCASE("undefined macro") {
        const auto result = expand("see `@nowhere and `@nowhere", inst, 4);
        CHECK(result.text == "see `@nowhere and `@nowhere");
        REQUIRE(result.diagnostics.size() == 1);
        CHECK(result.diagnostics[0].line == 4);
        CHECK(result.diagnostics[0].path == TagPath{"macro", "nowhere"});
    }
    SUBCASE("self reference") {
        const auto result = expand("`@loop", table_of({{"loop", "again `@loop"}}), 2);
        REQUIRE(result.diagnostics.size() == 1);
        CHECK(result.diagnostics[0].path == TagPath{"macro", "loop"});
        CHECK(result.diagnostics[0].message == "macro expansion never terminates (cycle: loop, loop)");
    }
    SUBCASE("cycle entered through an acyclic macro") {
        const MacroTable t = table_of({{"start", "`@a"}, {"a", "`@b"}, {"b", "`@a"}});
        const auto result = expand("x `@start", t, 3);
        REQUIRE(result.diagnostics.size() == 1);
        CHECK(result.diagnostics[0].path == TagPath{"macro", "start"});
        CHECK(result.diagnostics[0].message == "macro expansion never terminates (cycle: start, a, b, a)");
        CHECK(result.text == "x `@start");
    }
}

TEST_CASE("find_cycle") {
    const MacroTable t = table_of({{"a", "`@b"}, {"b", "`@c"}, {"c", "`@a"}, {"d", "plain"}});
    CHECK(find_cycle(t, "a") == std::vector<std::string>{"a", "b", "c", "a"});
    CHECK(find_cycle(t, "d").empty());
    CHECK(find_cycle(t, "missing").empty());
}

TEST_CASE("property: expansion matches the oracle and is idempotent") {
    testing::DocumentGenerator gen(11);
    for (int round = 0; round < 200; ++round) {
        // Macro i only refers to macros with larger indices, so the table is acyclic.
        const std::size_t n = 1 + gen.pick(8);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i)
            names.push_back("m" + std::to_string(i) + "_" + gen.word(1, 3));
        MacroTable table;
        std::map<std::string, std::string> plain;
        for (std::size_t i = 0; i < n; ++i) {
            std::string body = gen.value();
            for (std::size_t j = i + 1; j < n; ++j)
                if (gen.pick(3) == 0)
                    body += " `@" + names[j] + " " + gen.word();
            table.define(names[i], body, static_cast<int>(i + 1));
            plain[names[i]] = body;
        }
        std::string text = gen.value();
        for (int k = 0; k < 3; ++k)
            text += " `@" + names[gen.pick(n)] + " " + gen.word();

        const auto once = expand(text, table);
        CHECK(once.diagnostics.empty());
        CHECK(once.text == naive_expand(text, plain));
        CHECK(expand(once.text, table).text == once.text);
    }
}
