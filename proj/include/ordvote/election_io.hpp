#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordvote/dynamics.hpp"

namespace ordvote {

// A parsed election file: a candidate header, an optional poll line, and one
// line per voter holding a weak order ("a=b>c", '>' separates indifference
// classes) plus an optional current ballot after '|'.
struct Election {
    std::vector<std::string> names;
    std::optional<ScoreVector> poll;
    std::vector<PreferenceOrder> prefs;
    std::vector<std::optional<Ballot>> ballots;

    int m() const { return static_cast<int>(names.size()); }
    int voters() const { return static_cast<int>(prefs.size()); }
    CandidateId candidate(const std::string& name) const;  // ParseError when unknown
};

Election parse_election(const std::string& text);

// canonical form; parse(write(e)) reproduces the structure exactly
std::string write_election(const Election& e);

// --- run configuration ---------------------------------------------------------

struct RadiusSpec {
    bool is_percent = false;
    Fraction percent;  // exact fraction of the electorate
    int votes = 0;

    static RadiusSpec from_percent(Fraction f) { return {true, f, 0}; }
    static RadiusSpec from_votes(int v) { return {false, Fraction(0), v}; }
};

std::vector<Radius> resolve_radii(const std::vector<RadiusSpec>& specs, int total);

struct RunConfig {
    VotingRule rule = VotingRule::plurality(2);
    Metric metric = Metric::emd();
    std::vector<RadiusSpec> radii;
    std::string model = "distance";  // distance | all-pairs | top-star | leader-star |
                                     // local-dominance | biased-local-dominance |
                                     // full-information
    int top_T = 2;
    std::optional<HeuristicKind> heuristic;
    Scheduler scheduler = Scheduler::round_robin();
    MovePolicy policy = MovePolicy::best_uod();
    std::uint64_t seed = 1;
    std::int64_t ball_cap = 10'000'000;
    int step_cap = 0;
    int trials = 0;
    bool truthful_start = false;
    int voter = 0;  // whose perspective derive/dominate take
    std::string election_path;
    std::string heuristic_name;  // raw, resolved against the election at run time
};

// Parses the JSON configuration; radii carry over as exact fractions.
RunConfig load_config(const std::string& json_text);

// The model a config describes, with radii resolved against `total` votes.
EpistemicModel config_model(const RunConfig& config, int total);

// The heuristic a config names (radii resolved against `total`), if any.
std::optional<HeuristicKind> config_heuristic(const RunConfig& config, int total);

}  // namespace ordvote
