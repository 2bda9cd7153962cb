#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordvote/dominance.hpp"
#include "ordvote/epistemic.hpp"

namespace ordvote {

enum class HeuristicId {
    NotLast,
    LocalDominance,
    TruthBiasLD,
    LazyBiasLD,
    TPragmatist,
    TStar,
    LeaderRule
};

// A heuristic plus its parameters. NotLast and the local-dominance family
// are plurality moves; the pragmatist pair works in any score rule; the
// leader rule needs approval.
struct HeuristicKind {
    HeuristicId id = HeuristicId::NotLast;
    Metric metric;            // LD family
    std::optional<Radius> r1; // LD / biased LD inner radius
    std::optional<Radius> r2; // biased LD outer radius
    int T = 0;                // pragmatist family

    static HeuristicKind not_last() { return {HeuristicId::NotLast, {}, {}, {}, 0}; }
    static HeuristicKind local_dominance(Metric m, Radius r) {
        return {HeuristicId::LocalDominance, std::move(m), r, {}, 0};
    }
    static HeuristicKind truth_bias_ld(Metric m, Radius r1, Radius r2) {
        return {HeuristicId::TruthBiasLD, std::move(m), r1, r2, 0};
    }
    static HeuristicKind lazy_bias_ld(Metric m, Radius r1, Radius r2) {
        return {HeuristicId::LazyBiasLD, std::move(m), r1, r2, 0};
    }
    static HeuristicKind t_pragmatist(int T) {
        return {HeuristicId::TPragmatist, {}, {}, {}, T};
    }
    static HeuristicKind t_star(int T) { return {HeuristicId::TStar, {}, {}, {}, T}; }
    static HeuristicKind leader_rule() { return {HeuristicId::LeaderRule, {}, {}, {}, 0}; }

    std::string name() const;
};

// The set of moves the heuristic recommends at this context. The current
// ballot is always omitted; empty means "keep voting as before". Throws
// ConfigError on a heuristic/rule mismatch.
std::vector<Ballot> evaluate_heuristic(const HeuristicKind& kind, const VoterContext& ctx);

// The epistemic model that rationalizes the heuristic (complete graph for
// not-last, ball ladders for the LD family, stars for the pragmatists and
// the leader rule).
EpistemicModel heuristic_model(const HeuristicKind& kind);

// Closed-form pivot-graph structure of that model at this context.
PivotGraphStructure build_model(const HeuristicKind& kind, const VoterContext& ctx);

struct JustificationCounterexample {
    VoterContext ctx;
    std::vector<Ballot> heuristic_out;
    std::vector<Ballot> uod;
    bool broke_i = false, broke_ii = false, broke_strong = false;
};

struct JustificationReport {
    bool condition_i = true;   // h empty exactly when UOD empty
    bool condition_ii = true;  // h a subset of UOD
    bool strong = true;        // h equals UOD
    int contexts_checked = 0;
    int contexts_skipped = 0;  // e.g. filtered out by an SPP requirement
    std::vector<JustificationCounterexample> counterexamples;
};

struct JustificationOptions {
    // keep only contexts whose ball ladder satisfies the sharp pivot
    // property (the standing assumption behind the LD-family propositions)
    bool require_spp = false;
    int max_counterexamples = 8;
};

// Evaluates conditions (I) and (II) and equality over the supplied contexts.
JustificationReport check_justification(const HeuristicKind& kind,
                                        const std::vector<VoterContext>& contexts,
                                        const JustificationOptions& opts = {});

}  // namespace ordvote
