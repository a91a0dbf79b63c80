#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paving/report.hpp"

using namespace paving;

TEST_CASE("csv round trip") {
    Table t{"t", 2, {"k|h", "l", "m=3"}, {{"00|00", "2", "5,0"}, {"10|21", "1", "E"}, {"a\"b", "1", "-"}}};
    const auto text = to_csv(t);
    CHECK(text.find("\"5,0\"") != std::string::npos);
    const auto back = parse_csv(text, "t", 2);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.find("10|21 l=1") != nullptr);
    CHECK_THROWS_AS(parse_csv("a,b\n1\n", "x", 1), ConfigError);
    CHECK_THROWS_AS(parse_csv("a\n\"1\n", "x", 1), ConfigError);
}

TEST_CASE("table diff") {
    Table g{"g", 1, {"U", "delta"}, {{"a", "3"}, {"b", "4"}}};
    Table c{"g", 1, {"U", "delta"}, {{"b", "4"}, {"a", "3"}}};
    CHECK(diff_tables(g, c).empty());
    c.rows[0][1] = "5";
    c.rows.push_back({"z", "3"});
    const auto d = diff_tables(g, c);
    REQUIRE(d.size() == 2);
    CHECK(d[0].expected == "4");
    CHECK(d[0].actual == "5");
    CHECK(d[1].actual == "present");
    c.header[1] = "dim";
    CHECK(diff_tables(g, c).size() == 1);
}

TEST_CASE("config checks") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.primes = {3, 9};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.primes = {3, 5};
    c.holdouts = {5};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.holdouts = {};
    c.jobs = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK(RunConfig{}.primes_for(CaseId::E7a4) == default_primes(CaseId::E7a4));
}

TEST_CASE("unknown tuples") {
    CHECK(require_params(CaseId::E7a4, "0,0|1,0|2|3").label() == "00|10|2|3");
    CHECK_THROWS_AS(require_params(CaseId::E7a4, "00|40|2|3"), ConfigError);
    const auto near = nearest_params(CaseId::E7a4, "00|40|2|3");
    REQUIRE(near.size() == 3);
    CHECK(near[0] == "00|30|2|3");
    try {
        require_params(CaseId::E7a5, "000|100|9");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("nearest valid: 000|100|3") != std::string::npos);
    }
}

TEST_CASE("E7a4 report") {
    RunConfig c;
    c.cases = {CaseId::E7a4};
    const auto r = analyze_case(CaseId::E7a4, c);
    CHECK(r.discrepancies.empty());
    CHECK(r.at(SubspaceParams::parse(CaseId::E7a4, "00|10|2|3")).paving == "cells");
    CHECK(r.at(SubspaceParams::parse(CaseId::E7a4, "00|00|2|3")).paving == "dim<=2");
    REQUIRE(r.bad_reduction.size() == 2);
    const auto tables = report_tables(r);
    REQUIRE(tables.size() == 2);
    CHECK(tables[1].rows == std::vector<std::vector<std::string>>{{"10|21", "2", "-", "0,0", "E"}});
    CHECK(tables[0].rows.size() == 18);
    CHECK(report_json(r).rfind("{\n  \"schema_version\": 1", 0) == 0);
    CHECK(compare_golden(r, PAVING_GOLDEN_DIR).empty());
    CHECK_FALSE(compare_golden(r, "/nonexistent").empty());
}
