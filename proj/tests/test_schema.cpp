#include "medford/schema.hpp"

#include <doctest.h>

using namespace medford;

TEST_CASE("built-in vocabulary") {
    const SchemaRegistry reg = builtin_vocabulary();

    SUBCASE("Contributor") {
        const TagSchema s = reg.lookup("Contributor");
        CHECK(s.known);
        CHECK(s.field("ORCID").type == FieldType::Orcid);
        CHECK(s.field("Email").type == FieldType::Email);
        CHECK(s.field("Role") == FieldSpec{FieldType::FreeText, false, true});
        REQUIRE(s.rules.size() == 1);
        CHECK(s.rules[0].when_minor == "Role");
        CHECK(s.rules[0].when_value == "Corresponding Author");
        CHECK(s.rules[0].require_minor == "Email");
        CHECK(s.rules[0].require_type == FieldType::Email);
        CHECK(s.rules[0].message == "Corresponding Authors must have a provided validated email");
    }
    SUBCASE("Date") {
        const TagSchema s = reg.lookup("Date");
        CHECK(s.field("desc").type == FieldType::DateOrDateTime);
        CHECK(s.field("desc").required);
        CHECK(s.field("Note").type == FieldType::FreeText);
        CHECK(s.field("Note").required);
    }
    SUBCASE("Region") {
        const TagSchema s = reg.lookup("Region");
        CHECK(s.field("NorthernCoord").type == FieldType::Latitude);
        CHECK(s.field("SouthernCoord").type == FieldType::Latitude);
    }
    SUBCASE("provenance majors") {
        const TagSchema ref = reg.lookup("Data_Ref");
        CHECK(ref.field("URI") == FieldSpec{FieldType::Uri, true, false});
        CHECK_FALSE(ref.fields.contains("Path"));
        for (const char* major : {"Data_Primary", "Data_Copy", "Code_Primary", "Code_Copy", "Paper_Primary",
                                  "Paper_Copy"}) {
            CAPTURE(major);
            CHECK(reg.lookup(major).field("Path") == FieldSpec{FieldType::LocalPath, true, false});
        }
        for (const char* major : {"Code_Ref", "Paper_Ref"})
            CHECK(reg.lookup(major).field("URI").type == FieldType::Uri);
    }
    SUBCASE("coverage of majors") {
        for (const char* major : {"Contributor", "Software", "Method", "Species", "Date", "Image", "Taxonomy",
                                  "Region", "Expedition", "Freeform", "time"}) {
            CAPTURE(major);
            CHECK(reg.contains(major));
        }
    }
}

TEST_CASE("unknown majors and minors are FreeText") {
    const SchemaRegistry reg = builtin_vocabulary();
    const TagSchema s = reg.lookup("NeverSeenMajor");
    CHECK_FALSE(s.known);
    CHECK(s.major == "NeverSeenMajor");
    CHECK(s.field("anything").type == FieldType::FreeText);
    CHECK(s.field("desc").type == FieldType::FreeText);
    CHECK(reg.lookup("Contributor").field("Shoe_Size") == FieldSpec{FieldType::FreeText, false, true});
}

TEST_CASE("Unstructured names are never type checked") {
    const SchemaRegistry reg = builtin_vocabulary();
    CHECK(reg.lookup("Date").field("Unstructured").type == FieldType::FreeText);
    CHECK(reg.lookup("Image").field("Date-Unstructured").type == FieldType::FreeText);
    const auto forced = load_schema("Image.Date-Unstructured = DateOrDateTime\n");
    CHECK(forced.lookup("Image").field("Date-Unstructured").type == FieldType::FreeText);
}

TEST_CASE("overlay wins") {
    const auto reg = load_schema("# lab additions\nImage.Coverage = FreeText, required\nImage.Site = Uri\n");
    CHECK(reg.lookup("Image").field("Coverage") == FieldSpec{FieldType::FreeText, true, false});
    CHECK(reg.lookup("Image").field("Site").type == FieldType::Uri);
    CHECK(reg.lookup("Image").field("Date").type == FieldType::DateOrDateTime);

    const auto added = load_schema("Code_Ref.OS = FreeText, required, repeatable\n");
    CHECK(added.lookup("Code_Ref").field("OS") == FieldSpec{FieldType::FreeText, true, true});
    CHECK(added.lookup("Code_Ref").field("URI").required);
}

TEST_CASE("overlay rules") {
    const auto reg = load_schema(
        "rule Expedition.Funding == \"NSF\" requires Grant as FreeText: NSF expeditions need a grant number.\n");
    const auto s = reg.lookup("Expedition");
    REQUIRE(s.rules.size() == 1);
    CHECK(s.rules[0].message == "NSF expeditions need a grant number");

    const auto replaced = load_schema(
        "rule Contributor.Role == \"Corresponding Author\" requires Email as Email: corresponding authors need email\n");
    REQUIRE(replaced.lookup("Contributor").rules.size() == 1);
    CHECK(replaced.lookup("Contributor").rules[0].message == "corresponding authors need email");
}

TEST_CASE("overlay is associative") {
    const std::string a = "Image.Coverage = Latitude\nFoo.Bar = Email, required\n";
    const std::string b = "Image.Coverage = FreeText\nFoo.Baz = Uri\n";
    SchemaRegistry sequential = load_schema(a);
    sequential.overlay(b);
    CHECK(sequential == load_schema(a + b));
}

TEST_CASE("schema format errors carry the line") {
    const auto expect_error_at = [](const std::string& text, int line) {
        try {
            load_schema(text);
            FAIL("expected SchemaFormatError");
        } catch (const SchemaFormatError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_error_at("Image.Coverage = Number\n", 1);
    expect_error_at("# ok\n\nImage Coverage = FreeText\n", 3);
    expect_error_at("A.b = FreeText, mandatory\n", 1);
    expect_error_at("A.b = FreeText\nrule A.b = x\n", 2);
    expect_error_at("A-x.b = FreeText\n", 1);

    SchemaRegistry reg = builtin_vocabulary();
    CHECK_THROWS_AS(reg.overlay("Image.Coverage = Latitude\nbroken\n"), SchemaFormatError);
    CHECK(reg == builtin_vocabulary());
}

TEST_CASE("field type names") {
    for (auto t : {FieldType::FreeText, FieldType::DateOrDateTime, FieldType::Orcid, FieldType::Email,
                   FieldType::Latitude, FieldType::Longitude, FieldType::Uri, FieldType::LocalPath})
        CHECK(parse_field_type(field_type_name(t)) == t);
    CHECK(parse_field_type("date") == FieldType::DateOrDateTime);
    CHECK_FALSE(parse_field_type("Number"));
}
