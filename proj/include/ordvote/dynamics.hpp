#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordvote/dominance.hpp"
#include "ordvote/heuristics.hpp"

namespace ordvote {

// splitmix64; all sampling in the library goes through this so runs are
// reproducible across standard libraries
struct Rng {
    std::uint64_t state = 0;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[i], v[below(i + 1)]);
    }
};

enum class SchedulerKind { RoundRobin, RandomSeeded, ExhaustiveAdversarial };

struct Scheduler {
    SchedulerKind kind = SchedulerKind::RoundRobin;
    std::uint64_t seed = 0;

    static Scheduler round_robin() { return {SchedulerKind::RoundRobin, 0}; }
    static Scheduler random_seeded(std::uint64_t seed) {
        return {SchedulerKind::RandomSeeded, seed};
    }
};

// mutable cursor a run threads through its scheduler
struct SchedulerState {
    int next = 0;             // round robin
    std::uint64_t rng = 0;    // random seeded
};

enum class PolicyKind { BestUOD, AnyOD, Heuristic };

// How an activated voter picks her move. BestUOD takes the undominated
// dominating ballot whose prospective winner she likes best (ties to the
// lowest ballot in canonical order); AnyOD takes the first dominating
// ballot; Heuristic plays the named heuristic (first of its set).
struct MovePolicy {
    PolicyKind kind = PolicyKind::BestUOD;
    std::optional<HeuristicKind> heuristic;

    static MovePolicy best_uod() { return {PolicyKind::BestUOD, std::nullopt}; }
    static MovePolicy any_od() { return {PolicyKind::AnyOD, std::nullopt}; }
    static MovePolicy from_heuristic(HeuristicKind k) {
        return {PolicyKind::Heuristic, std::move(k)};
    }
};

struct Move {
    int step = 0;
    int voter = -1;
    Ballot from, to;
    ScoreVector tally_after;
};

enum class RunStatus { Converged, Cycle, Truncated };

struct Trajectory {
    std::vector<Ballot> initial;
    std::vector<Move> moves;
    RunStatus status = RunStatus::Converged;
    int cycle_period = 0;
    int cycle_first = 0;      // step index of the first repeated state
    bool od_equilibrium = false;  // independently re-verified on convergence

    int steps() const { return static_cast<int>(moves.size()); }
    std::string record() const;
};

// the ballot a voter would switch to, if any
std::optional<Ballot> policy_move(const VoterContext& ctx, const EpistemicModel& model,
                                  const MovePolicy& policy);

// Activates voters in scheduler order until one can move; applies the move
// in place and returns it, or nothing at a rest point.
std::optional<Move> step(std::vector<Ballot>& profile,
                         const std::vector<PreferenceOrder>& prefs_list,
                         const std::vector<EpistemicModel>& models, const VotingRule& rule,
                         const Scheduler& scheduler, SchedulerState& state,
                         const MovePolicy& policy, int step_no = 1);

// Iterates to convergence, a detected cycle (deterministic schedulers), or
// the step cap; 0 picks the default cap of 10*n*m*k.
Trajectory run(const std::vector<Ballot>& initial,
               const std::vector<PreferenceOrder>& prefs_list,
               const std::vector<EpistemicModel>& models, const VotingRule& rule,
               const Scheduler& scheduler, const MovePolicy& policy, int step_cap = 0);

// --- exhaustive adversarial exploration -------------------------------------

struct ExhaustiveReport {
    bool cycle_free = true;
    long long profiles_explored = 0;
    std::vector<std::vector<Ballot>> cycle_path;  // a lasso witness when found
    bool sinks_verified = true;  // every rest point re-checked as OD equilibrium
};

// Walks the full move graph (every profile, every activation choice) and
// reports any reachable cycle; complete for the given action space.
ExhaustiveReport exhaustive_scan(const std::vector<PreferenceOrder>& prefs_list,
                                 const std::vector<EpistemicModel>& models,
                                 const VotingRule& rule, const MovePolicy& policy,
                                 std::int64_t node_cap = 2'000'000);

// --- batch experiments --------------------------------------------------------

struct BatchConfig {
    VotingRule rule;
    int voters = 0;
    std::vector<EpistemicModel> model_pool;  // one = shared; n = per voter; else sampled
    Scheduler scheduler;
    MovePolicy policy;
    int trials = 0;
    std::uint64_t seed = 0;
    bool truthful_start = false;
    int step_cap = 0;
    int max_cycle_witnesses = 4;
    int threads = 0;  // 0 = hardware
};

struct BatchReport {
    int trials = 0, converged = 0, cycled = 0, truncated = 0, errors = 0;
    long long total_steps = 0;
    int max_steps = 0;
    int min_steps = 0;
    std::vector<Trajectory> cycle_witnesses;

    double convergence_rate() const {
        return trials == 0 ? 0.0 : static_cast<double>(converged) / trials;
    }
    std::string summary() const;
};

// `trials` independent elections under impartial culture; deterministic in
// (config, seed), trials aggregated by index.
BatchReport batch_verify(const BatchConfig& config);

}  // namespace ordvote
