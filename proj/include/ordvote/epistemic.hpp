#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordvote/core.hpp"
#include "ordvote/metrics.hpp"

namespace ordvote {

// A set of states the voter deems possible: either listed outright or a
// metric ball that materializes on demand.
struct InformationSet {
    struct BallSpec {
        Metric metric;
        ScoreVector center;
        Radius radius;
    };

    std::optional<std::vector<ScoreVector>> explicit_states;
    std::optional<BallSpec> ball;

    static InformationSet explicit_set(std::vector<ScoreVector> states);
    static InformationSet ball_set(Metric metric, ScoreVector center, Radius radius);

    std::vector<ScoreVector> materialize(std::int64_t cap = 10'000'000) const;
};

// Nested sequence of information sets, inner sets more likely.
struct InformationStructure {
    std::vector<InformationSet> levels;

    int depth() const { return static_cast<int>(levels.size()); }
    // materializes every level and verifies S_j is contained in S_{j+1}
    std::vector<std::vector<ScoreVector>> materialize(std::int64_t cap = 10'000'000) const;
};

// Undirected graph on candidates; an edge marks a pair the voter may be
// pivotal for. Edges are stored with first < second, sorted.
struct PivotGraph {
    int m = 0;
    std::vector<std::pair<CandidateId, CandidateId>> edges;

    PivotGraph() = default;
    PivotGraph(int m_, std::vector<std::pair<CandidateId, CandidateId>> e);

    static PivotGraph complete(int m);
    static PivotGraph star(int m, CandidateId center, const std::vector<CandidateId>& leaves);

    bool empty() const { return edges.empty(); }
    bool has_edge(CandidateId a, CandidateId b) const;
    bool subgraph_of(const PivotGraph& g) const;
    std::vector<CandidateId> active_vertices() const;  // non-isolated
    PivotGraph merged_with(const PivotGraph& g) const;

    friend bool operator==(const PivotGraph& a, const PivotGraph& b) {
        return a.m == b.m && a.edges == b.edges;
    }
};

// The voter's effective beliefs: graphs nested level by level.
struct PivotGraphStructure {
    int m = 0;
    std::vector<PivotGraph> levels;

    int depth() const { return static_cast<int>(levels.size()); }
    void check_nesting() const;  // throws StructuralError on a violation

    friend bool operator==(const PivotGraphStructure& a, const PivotGraphStructure& b) {
        return a.m == b.m && a.levels == b.levels;
    }
};

// Everything a voter knows when deciding: the tally of everyone else, her
// own standing ballot, her preferences and the rule in force.
struct VoterContext {
    ScoreVector state;
    Ballot current;
    PreferenceOrder prefs;
    VotingRule rule;

    // state = poll - own ballot; entries must stay non-negative
    static VoterContext from_poll(const ScoreVector& poll, const Ballot& own,
                                  const PreferenceOrder& prefs, const VotingRule& rule);
};

enum class ModelKind {
    DistanceBased,         // ladder of metric balls around the state
    AllPairs,              // single complete graph
    LocalDominance,        // single ball at one radius
    BiasedLocalDominance,  // (H1, H1 u H2-filtered) for truth/lazy bias
    TopStar,               // star on the T poll leaders, centered on the favorite
    LeaderStar             // (leader-runnerup edge, leader star)
};

// How dominance queries against this model are evaluated: via Algorithm-style
// graph checks, or by brute force over the underlying information sets
// (available only when the model is distance-based).
enum class EvalMode { Graph, SetOracle };

struct EpistemicModel {
    ModelKind kind = ModelKind::DistanceBased;
    Metric metric;
    std::vector<Radius> radii;
    int top_count = 0;  // TopStar
    EvalMode eval = EvalMode::Graph;
    std::int64_t ball_cap = 10'000'000;

    static EpistemicModel distance_based(Metric metric, std::vector<Radius> radii);
    static EpistemicModel all_pairs();
    static EpistemicModel local_dominance(Metric metric, Radius r);
    static EpistemicModel biased_local_dominance(Metric metric, Radius r1, Radius r2);
    static EpistemicModel top_star(int T);
    static EpistemicModel leader_star();
    // singleton ball of radius zero, evaluated set-side: classic full information
    static EpistemicModel full_information();

    // one metric, strictly nested ball ladder around the same center
    bool concentric() const;
    bool distance_family() const {
        return kind == ModelKind::DistanceBased || kind == ModelKind::LocalDominance ||
               kind == ModelKind::BiasedLocalDominance;
    }
    std::string name() const;
};

// --- derivation -----------------------------------------------------------

// pivot graph of one information set by exhaustive evaluation (with an exact
// constructive shortcut for large EMD balls)
PivotGraph pivot_graph(const InformationSet& set, const VotingRule& rule,
                       std::int64_t cap = 10'000'000);

PivotGraph pivot_graph_of_states(const std::vector<ScoreVector>& states,
                                 const VotingRule& rule, std::int64_t cap = 10'000'000);

struct EdgeWitness {
    ScoreVector state;
    Ballot a_first, a_second;  // elect the edge's endpoints at `state`
};

PivotGraph pivot_graph_with_witnesses(
    const std::vector<ScoreVector>& states, const VotingRule& rule,
    std::vector<std::pair<std::pair<CandidateId, CandidateId>, EdgeWitness>>& witnesses);

// model output for a context; nesting verified before returning
PivotGraphStructure derive_structure(const EpistemicModel& model, const VoterContext& ctx);

// the ball ladder behind a distance-family model, when one exists
std::optional<InformationStructure> info_structure(const EpistemicModel& model,
                                                   const VoterContext& ctx);

// --- sharp pivot property ---------------------------------------------------

struct SppViolation {
    int level = 0;  // 1-based
    CandidateId c_win = -1, c_lose = -1;
    Ballot a_win, a_lose;  // gap-increasing pair with no witness state
};

struct SppReport {
    bool holds = true;
    std::vector<SppViolation> violations;
};

// Checks that every edge is witnessed by every gap-increasing ballot pair.
// `max_violations` bounds how many are collected before returning.
SppReport spp_check(const InformationStructure& structure, const VotingRule& rule,
                    std::int64_t cap = 10'000'000, int max_violations = 16);

// --- topology predicates ----------------------------------------------------

bool is_cliqued(const PivotGraphStructure& structure);

struct UpwardClosedReport {
    bool holds = false;
    std::optional<std::vector<CandidateId>> witness_order;  // most to least likely
};

// Searches for one order valid across all levels simultaneously; with no
// order given, tries all m! orders (m <= 6).
UpwardClosedReport is_upward_closed(const PivotGraphStructure& structure,
                                    const std::optional<std::vector<CandidateId>>& order =
                                        std::nullopt);

// candidates by descending score, index ascending on ties
std::vector<CandidateId> score_order(const ScoreVector& s);

// --- large-population scan ---------------------------------------------------

// p*n rounded by largest remainder, ties to the lower index
ScoreVector round_distribution(const std::vector<Fraction>& p, int n);

struct SppScanEntry {
    int n = 0;
    bool checked = false;   // false when a capacity error intervened
    bool holds = false;
    std::vector<SppViolation> violations;
    std::string message;
};

std::vector<SppScanEntry> spp_scan(const std::vector<Fraction>& p,
                                   const std::vector<int>& n_list, const Metric& metric,
                                   const std::vector<Fraction>& radii,
                                   const VotingRule& rule,
                                   std::int64_t cap = 10'000'000);

// --- constructive EMD witness -------------------------------------------------

// Cheapest state (by votes relocated from `center`, totals preserved) where
// ballot a1 elects c1 and ballot a2 elects c2; nullopt when none exists
// within `budget` relocations. Exact; used to decide edges and SPP on balls
// too large to enumerate.
std::optional<ScoreVector> emd_witness_within(const ScoreVector& center,
                                              std::int64_t budget, CandidateId c1,
                                              const Ballot& a1, CandidateId c2,
                                              const Ballot& a2);

// --- serialization -------------------------------------------------------------

std::string to_dot(const PivotGraphStructure& structure,
                   const std::vector<std::string>& names);

std::string to_record(const PivotGraphStructure& structure,
                      const std::vector<std::string>& names);

}  // namespace ordvote
