#include "doctest.h"

#include "transim/toml.hpp"

using namespace transim;

TEST_CASE("toml parses scalars, tables, and arrays of tables") {
    const char* text = R"(
# top comment
name = "demo"        # trailing comment
count = 42
ratio = 6.5e-3
flag = true
values = [1.0, 2.5, 3e1]

[device]
rate_hz = 1_000_000

[device.sub]
deep = -4.5

[[modes]]
f = 1.0
[[modes]]
f = 2.0
)";
    const toml::Table table = toml::parse(text);
    CHECK(toml::get_string(table, "name") == "demo");
    CHECK(toml::get_number(table, "count") == 42.0);
    CHECK(toml::get_number(table, "ratio") == doctest::Approx(6.5e-3));
    CHECK(toml::get_bool_or(table, "flag", false) == true);
    CHECK(toml::get_array(table, "values").size() == 3);
    CHECK(toml::get_array(table, "values")[2].as_number() == doctest::Approx(30.0));
    CHECK(toml::get_number(table, "device.rate_hz") == doctest::Approx(1e6));
    CHECK(toml::get_number(table, "device.sub.deep") == doctest::Approx(-4.5));
    const toml::Array& modes = toml::get_array(table, "modes");
    REQUIRE(modes.size() == 2);
    CHECK(toml::get_number(modes[1].as_table(), "f") == doctest::Approx(2.0));
}

TEST_CASE("toml errors carry the offending path") {
    CHECK_THROWS_AS(toml::parse("key value"), SchemaError);
    CHECK_THROWS_AS(toml::parse("key = "), SchemaError);
    CHECK_THROWS_AS(toml::parse("key = \"unterminated"), SchemaError);
    CHECK_THROWS_AS(toml::parse("bad key = 1"), SchemaError);

    const toml::Table table = toml::parse("x = 1.0");
    CHECK_THROWS_WITH_AS(toml::get_number(table, "missing.path"),
                         doctest::Contains("missing.path"), SchemaError);
    CHECK_THROWS_AS(toml::get_string(table, "x"), SchemaError);
    CHECK(toml::get_number_or(table, "absent", 7.0) == 7.0);
}

TEST_CASE("overrides replace scalars by dotted path") {
    toml::Table table = toml::parse("[a]\nb = 1.0\n");
    toml::set_scalar(table, "a.b", "2.5");
    toml::set_scalar(table, "a.c", "true");
    toml::set_scalar(table, "fresh.leaf", "\"text\"");
    CHECK(toml::get_number(table, "a.b") == doctest::Approx(2.5));
    CHECK(toml::get_bool_or(table, "a.c", false) == true);
    CHECK(toml::get_string(table, "fresh.leaf") == "text");
}
