#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordvote/core.hpp"
#include "ordvote/epistemic.hpp"

namespace ordvote {

// Outcome of the level-by-level dominance check. `level` is the first level
// certifying dominance (1-based); `via_bias` marks dominance supplied by the
// truth/lazy tie-break between outcome-equivalent ballots rather than by a
// pivotal gain.
struct DominanceVerdict {
    bool dominates = false;
    std::optional<int> level;
    bool via_bias = false;
    struct LevelTrace {
        int safe = 0, pivot = 0, dom = 0;
    };
    std::vector<LevelTrace> trace;

    std::string record() const;
};

// Does a_new ordinally dominate a_cur over the pivot-graph structure?
//
// Per level: diff(c,c') = a_new(c)+a_cur(c')-a_cur(c)-a_new(c'), effect =
// sign(diff * I[c pref c']) with I in {-1,0,+1} (0 encodes indifference),
// safe/pivot the min/max effect over edges (0 on an edgeless level), and
// dominance when pivot+safe >= 1. When no level certifies and prefs carry a
// bias, the secondary tie-break applies: if every edge in the structure has
// effect 0 (the ballots are outcome-indistinguishable to this voter) and
// a_new is the truthful ballot (truth bias) / abstention (lazy bias) while
// a_cur is not, a_new dominates.
DominanceVerdict od_check(const Ballot& a_new, const Ballot& a_cur,
                          const PreferenceOrder& prefs,
                          const PivotGraphStructure& structure, const VotingRule& rule);

enum class SDomResult { Dominates, DominatedBy, Indifferent, Incomparable };

// Literal set-semantics comparison of winners across every state of one
// information set. Winner preferences only; bias enters at the structure
// level in od_oracle.
SDomResult sdom_oracle(const Ballot& a_new, const Ballot& a_cur,
                       const PreferenceOrder& prefs, const InformationSet& set,
                       const VotingRule& rule, std::int64_t cap = 10'000'000);

// First level (1-based) where a_new set-dominates a_cur; when none and every
// level is outcome-indifferent, the bias tie-break certifies level 1.
std::optional<int> od_oracle_level(const Ballot& a_new, const Ballot& a_cur,
                                   const PreferenceOrder& prefs,
                                   const InformationStructure& structure,
                                   const VotingRule& rule, std::int64_t cap = 10'000'000);

bool od_oracle(const Ballot& a_new, const Ballot& a_cur, const PreferenceOrder& prefs,
               const InformationStructure& structure, const VotingRule& rule,
               std::int64_t cap = 10'000'000);

// All ballots that ordinally dominate ctx.current under the model (abstention
// joins the candidates under lazy bias). Evaluation follows model.eval: the
// graph check above, or brute force over the model's information sets.
std::vector<Ballot> od_set(const VoterContext& ctx, const EpistemicModel& model);

// Members of od_set not themselves dominated by any allowed ballot.
std::vector<Ballot> uod_set(const VoterContext& ctx, const EpistemicModel& model);

struct EquilibriumReport {
    bool is_equilibrium = true;
    struct Deviation {
        int voter = -1;
        Ballot improving;
        int level = 0;
    };
    std::vector<Deviation> deviations;  // one per deviating voter

    std::string record() const;
};

// Each voter's context is the aggregate minus her own ballot; equilibrium
// iff every od_set is empty. `models` holds one model per voter or a single
// shared model.
EquilibriumReport is_od_equilibrium(const std::vector<Ballot>& profile,
                                    const std::vector<PreferenceOrder>& prefs_list,
                                    const std::vector<EpistemicModel>& models,
                                    const VotingRule& rule);

ScoreVector profile_tally(const std::vector<Ballot>& profile, int m);

}  // namespace ordvote
