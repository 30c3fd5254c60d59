#include "simseed/config.hpp"
#include "simseed/csv.hpp"
#include "simseed/error.hpp"

#include <doctest.h>

#include <sstream>

using namespace simseed;

TEST_CASE("csv table round trips values and empty cells") {
    CsvTable table;
    table.columns = {"name", "count", "ratio", "note"};
    table.rows.push_back({std::string("plain"), 42LL, 0.125, std::string("x")});
    table.rows.push_back({std::string("with,comma"), -1LL, 13.995, std::monostate{}});
    table.rows.push_back({std::string("quote\"inside"), 0LL, 1e-9, std::string("multi\nline")});

    std::ostringstream sink;
    write_table_csv(table, sink);
    std::istringstream source(sink.str());
    const RawCsv raw = read_table_csv(source);

    REQUIRE(raw.columns == table.columns);
    REQUIRE(raw.rows.size() == 3);
    CHECK(raw.rows[0][0] == "plain");
    CHECK(raw.rows[0][1] == "42");
    CHECK(raw.rows[0][2] == "0.125");
    CHECK(raw.rows[1][0] == "with,comma");
    CHECK(raw.rows[1][3] == "");
    CHECK(raw.rows[2][0] == "quote\"inside");
    CHECK(raw.rows[2][3] == "multi\nline");
}

TEST_CASE("csv reader rejects ragged and malformed input") {
    std::istringstream ragged("a,b\n1,2,3\n");
    CHECK_THROWS_AS(read_table_csv(ragged), ParseError);

    std::istringstream unterminated("a,b\n\"open,2\n");
    CHECK_THROWS_AS(read_table_csv(unterminated), ParseError);

    std::istringstream empty("");
    CHECK_THROWS_AS(read_table_csv(empty), ParseError);
}

TEST_CASE("csv writer enforces the declared schema") {
    CsvTable table;
    table.columns = {"a", "b"};
    table.rows.push_back({1LL});
    std::ostringstream sink;
    CHECK_THROWS_AS(write_table_csv(table, sink), ValidationError);
}

TEST_CASE("csv column lookup names the missing column") {
    std::istringstream source("lat,lon\n1,2\n");
    const RawCsv raw = read_table_csv(source);
    CHECK(raw.column("lon") == 1);
    CHECK_THROWS_WITH_AS(raw.column("wrsi"), "csv is missing column 'wrsi'", ParseError);
}

TEST_CASE("config parses key-value lines with comments") {
    std::istringstream in(
        "# a manifest\n"
        "id = sample\n"
        "count = 12\n"
        "scale = 0.5\n"
        "flag = true\n"
        "items = a b, c\n"
        "checksum.f.asc = abc123\n"
        "\n");
    const Config cfg = Config::parse(in, "test");
    CHECK(cfg.get_string("id") == "sample");
    CHECK(cfg.get_int("count") == 12);
    CHECK(cfg.get_double("scale") == 0.5);
    CHECK(cfg.get_bool("flag"));
    CHECK(cfg.get_list("items") == std::vector<std::string>{"a", "b", "c"});
    CHECK(cfg.keys_with_prefix("checksum.") == std::vector<std::string>{"checksum.f.asc"});
    CHECK(cfg.get_string_or("missing", "fallback") == "fallback");
    CHECK_FALSE(cfg.find("missing").has_value());
    CHECK_THROWS_AS(cfg.get_string("missing"), ValidationError);
    CHECK_THROWS_AS(cfg.get_int("id"), ValidationError);
}

TEST_CASE("config rejects repeated and malformed keys") {
    std::istringstream repeated("a = 1\na = 2\n");
    CHECK_THROWS_AS(Config::parse(repeated, "test"), ParseError);

    std::istringstream noequals("just a line\n");
    CHECK_THROWS_AS(Config::parse(noequals, "test"), ParseError);

    std::istringstream badkey("sp ace = 1\n");
    CHECK_THROWS_AS(Config::parse(badkey, "test"), ParseError);
}

TEST_CASE("parse errors carry the line number") {
    std::istringstream in("ok = 1\nbroken\n");
    try {
        Config::parse(in, "test");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("(line 2)") != std::string::npos);
    }
}
