#include "doctest.h"

#include "ordvote/election_io.hpp"

using namespace ordvote;

TEST_SUITE_BEGIN("io");

namespace {

const char* kExample =
    "# running example\n"
    "candidates: w b c d e\n"
    "poll: 29 26 22 17 6\n"
    "e>d>c>b>w | 0 1 0 0 0\n"
    "w>b=c>d>e\n";

}  // namespace

TEST_CASE("parsing the example file") {
    const auto e = parse_election(kExample);
    CHECK(e.names == std::vector<std::string>{"w", "b", "c", "d", "e"});
    REQUIRE(e.poll.has_value());
    CHECK(*e.poll == ScoreVector({29, 26, 22, 17, 6}));
    REQUIRE(e.voters() == 2);
    CHECK(e.prefs[0] == PreferenceOrder::from_order({4, 3, 2, 1, 0}));
    REQUIRE(e.ballots[0].has_value());
    CHECK(*e.ballots[0] == Ballot({0, 1, 0, 0, 0}));
    // weak order: w first, b and c tied, then d, then e
    CHECK(e.prefs[1].ranks == std::vector<int>{0, 1, 1, 2, 3});
    CHECK(!e.ballots[1].has_value());
    CHECK(e.candidate("c") == 2);
    CHECK_THROWS_AS(e.candidate("z"), ParseError);
}

TEST_CASE("round trip is identity on the structure") {
    const auto e = parse_election(kExample);
    const std::string canon = write_election(e);
    const auto e2 = parse_election(canon);
    CHECK(e2.names == e.names);
    CHECK(e2.poll == e.poll);
    CHECK(e2.prefs == e.prefs);
    CHECK(e2.ballots == e.ballots);
    CHECK(write_election(e2) == canon);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_election("voters first\n"), ParseError);
    try {
        parse_election("candidates: a b c\na>b\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("'c' missing") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_election("candidates: a a b\n"), ParseError);
    CHECK_THROWS_AS(parse_election("candidates: a b\na>b>x\n"), ParseError);
    CHECK_THROWS_AS(parse_election("candidates: a b\npoll: 1\n"), ParseError);
    CHECK_THROWS_AS(parse_election("candidates: a b\na>b | 1\n"), ParseError);
    CHECK_THROWS_AS(parse_election("candidates: a b\na>a\n"), ParseError);
}

TEST_CASE("config loading") {
    const std::string json = R"({
        "rule": {"kind": "plurality", "m": 5},
        "metric": {"kind": "emd"},
        "radii": [{"percent": 1}, {"percent": 3}, {"percent": 7}, {"percent": 17}],
        "model": "distance",
        "scheduler": "round-robin",
        "policy": "best-uod",
        "seed": 11,
        "voter": 0,
        "election": "poll.elec"
    })";
    const auto c = load_config(json);
    CHECK(c.rule.kind == RuleKind::Plurality);
    CHECK(c.rule.m == 5);
    CHECK(c.seed == 11);
    CHECK(c.radii.size() == 4);
    const auto model = config_model(c, 99);
    CHECK(model.kind == ModelKind::DistanceBased);
    CHECK(model.radii.size() == 4);
    CHECK(model.radii[3].value == Fraction(17, 100));
    CHECK(model.concentric());
}

TEST_CASE("config errors are configuration errors") {
    CHECK_THROWS_AS(load_config("{"), ParseError);
    CHECK_THROWS_AS(load_config(R"({"rule": {"kind": "stv", "m": 3}})"), ConfigError);
    const auto c = load_config(
        R"({"rule": {"kind": "plurality", "m": 3}, "model": "nope"})");
    CHECK_THROWS_AS(config_model(c, 10), ConfigError);
    const auto c2 = load_config(
        R"({"rule": {"kind": "plurality", "m": 3}, "model": "distance"})");
    CHECK_THROWS_AS(config_model(c2, 10), ConfigError);  // no radii
}

TEST_CASE("heuristic resolution") {
    const auto c = load_config(R"({
        "rule": {"kind": "plurality", "m": 3},
        "radii": [{"votes": 0}, {"votes": 1}],
        "heuristic": "truth-bias-ld"
    })");
    const auto h = config_heuristic(c, 10);
    REQUIRE(h.has_value());
    CHECK(h->id == HeuristicId::TruthBiasLD);
    CHECK(h->r2->value == Fraction(1, 10));
    CHECK(!config_heuristic(load_config(R"({"rule": {"kind": "plurality", "m": 3}})"), 10)
               .has_value());
}

TEST_SUITE_END();
