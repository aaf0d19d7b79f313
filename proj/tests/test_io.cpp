#include <doctest.h>

#include "helpers.hpp"
#include "nmu/io.hpp"

using namespace nmu;

namespace {

int error_line(const std::string& text) {
    try {
        parse_poset(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("poset files round trip") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const Poset p = testing::random_poset(1 + trial % 9, 0.3, rng);
        const PosetFile f = parse_poset(format_poset("r" + std::to_string(trial), p));
        CHECK(f.name == "r" + std::to_string(trial));
        CHECK(f.poset == p);
    }
    const PosetFile f = parse_poset("# a diamond\nposet d\n\nelements 4\ncover 1 2 # left\ncover 1 3\ncover 2 4\ncover 3 4\n");
    CHECK(f.poset == grid_poset(2, 2));
}

TEST_CASE("poset parse errors carry the line") {
    CHECK(error_line("poset x\nelements 3\nedge 1 2\n") == 3);
    CHECK(error_line("poset x\nelements 3\ncover 1\n") == 3);
    CHECK(error_line("poset x\nelements 3\ncover 1 4\n") == 3);
    CHECK(error_line("poset x\nelements 3\ncover 1 two\n") == 3);
    CHECK(error_line("elements 3\n") == 1);
    CHECK(error_line("poset x\ncover 1 2\n") == 2);
    // The cycle closes on line 5.
    CHECK(error_line("poset x\nelements 3\ncover 1 2\ncover 2 3\ncover 3 1\n") == 5);
    // Duplicate and transitive covers.
    CHECK(error_line("poset x\nelements 3\ncover 1 2\ncover 1 2\n") == 4);
    CHECK(error_line("poset x\nelements 3\ncover 1 2\ncover 2 3\ncover 1 3\n") == 5);
    CHECK(error_line("poset x\nelements 65\n") == 2);
    CHECK_THROWS_AS(read_poset_file("/nonexistent/file.poset"), Error);
}

TEST_CASE("cover pair files") {
    const Poset g = grid_poset(2, 3);
    const CoverPair pair = grid_cover_pair(2, 3);
    const CoverPairFile f = parse_cover_pair(format_cover_pair(pair, "rows", "cols"), g);
    CHECK(f.first_name == "rows");
    CHECK(f.second_name == "cols");
    CHECK(f.pair.first == pair.first);
    CHECK(f.pair.second == pair.second);

    CHECK_THROWS_AS(parse_cover_pair("cover a\nchain 1 2\n", g), ParseError);
    CHECK_THROWS_AS(parse_cover_pair("cover a\nchain 1 7\n---\ncover b\nchain 1\n", g), ParseError);
    CHECK_THROWS_AS(parse_cover_pair("chain 1\n", g), ParseError);
    CHECK_THROWS_AS(parse_cover_pair("cover a\nchain 1\ncover b\nchain 2\n", g), ParseError);
    // Chains are not checked against the poset here.
    CHECK_NOTHROW(parse_cover_pair("cover a\nchain 1 6\n---\ncover b\nchain 2\n", g));
}

TEST_CASE("JSON records round trip") {
    OracleOptions o;
    o.max_n = 4;
    o.variants = true;
    const OracleReport report = oracle_compare(o);
    for (const OracleRecord& r : report.records) {
        const auto j = to_json(r);
        CHECK_FALSE(j.contains("seconds"));
        const OracleRecord back = record_from_json(j);
        CHECK(back.key == r.key);
        CHECK(back.poset == r.poset);
        CHECK(back.theorem_n2 == r.theorem_n2);
        CHECK(back.brute_n2 == r.brute_n2);
        CHECK(back.brute_n2_prime == r.brute_n2_prime);
        CHECK(back.agrees() == r.agrees());
        CHECK(to_json(back)["brute_force"] == j["brute_force"]);
        CHECK(to_json(back)["theorem"]["witness"] == j["theorem"]["witness"]);
    }
    const auto s = summary_json(report, o);
    CHECK(s["posets"] == report.records.size());
    CHECK(s["mismatches"].empty());
    CHECK(to_json(report.records[0], true).contains("seconds"));
}

TEST_CASE("classification JSON uses 1-based ids") {
    const Poset claw = testing::make(4, {{0, 1}, {0, 2}, {0, 3}});
    const auto j = to_json(classify_N2(claw));
    CHECK(j["n2"] == false);
    CHECK(j["obstruction"]["kind"] == "DegreeBound");
    CHECK(j["obstruction"]["element"] == 1);
    CHECK(j["witness"].is_null());
    const auto g = to_json(grid_cover_pair(2, 2));
    CHECK(g["red"] == nlohmann::json::parse("[[1,2],[3,4]]"));
    CHECK(g["blue"] == nlohmann::json::parse("[[1,3],[2,4]]"));
}
