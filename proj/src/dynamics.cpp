#include "ordvote/dynamics.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>
#include <thread>

namespace ordvote {

namespace {

CandidateId winner_plus(const ScoreVector& s, const Ballot& a) {
    CandidateId best = 0;
    int bestv = s[0] + a[0];
    for (int c = 1; c < s.size(); ++c) {
        const int v = s[c] + a[c];
        if (v > bestv) {
            bestv = v;
            best = c;
        }
    }
    return best;
}

std::string profile_key(const std::vector<Ballot>& profile) {
    std::string key;
    for (const auto& b : profile) {
        for (int v : b.scores) {
            key += static_cast<char>('0' + v);
            key += ',';
        }
        key += ';';
    }
    return key;
}

const EpistemicModel& model_for(const std::vector<EpistemicModel>& models, int voter) {
    return models[models.size() == 1 ? 0 : static_cast<size_t>(voter)];
}

}  // namespace

std::optional<Ballot> policy_move(const VoterContext& ctx, const EpistemicModel& model,
                                  const MovePolicy& policy) {
    switch (policy.kind) {
        case PolicyKind::AnyOD: {
            const auto od = od_set(ctx, model);
            if (od.empty()) return std::nullopt;
            return od.front();
        }
        case PolicyKind::BestUOD: {
            const auto uod = uod_set(ctx, model);
            if (uod.empty()) return std::nullopt;
            // favorite prospective winner, then first in canonical order
            Ballot best = uod.front();
            CandidateId best_w = winner_plus(ctx.state, best);
            for (const auto& a : uod) {
                const CandidateId w = winner_plus(ctx.state, a);
                if (ctx.prefs.prefers(w, best_w)) {
                    best = a;
                    best_w = w;
                }
            }
            return best;
        }
        case PolicyKind::Heuristic: {
            auto moves = evaluate_heuristic(*policy.heuristic, ctx);
            if (moves.empty()) return std::nullopt;
            std::sort(moves.begin(), moves.end());
            return moves.front();
        }
    }
    return std::nullopt;
}

std::optional<Move> step(std::vector<Ballot>& profile,
                         const std::vector<PreferenceOrder>& prefs_list,
                         const std::vector<EpistemicModel>& models, const VotingRule& rule,
                         const Scheduler& scheduler, SchedulerState& state,
                         const MovePolicy& policy, int step_no) {
    const int n = static_cast<int>(profile.size());
    std::vector<int> order(n);
    if (scheduler.kind == SchedulerKind::RandomSeeded) {
        for (int i = 0; i < n; ++i) order[i] = i;
        Rng rng(state.rng);
        rng.shuffle(order);
        state.rng = rng.state;
    } else if (scheduler.kind == SchedulerKind::RoundRobin) {
        for (int i = 0; i < n; ++i) order[i] = (state.next + i) % n;
    } else {
        throw ConfigError("adversarial scheduling runs through exhaustive_scan");
    }
    const ScoreVector tally = profile_tally(profile, rule.m);
    for (int voter : order) {
        const VoterContext ctx =
            VoterContext::from_poll(tally, profile[voter], prefs_list[voter], rule);
        const auto move = policy_move(ctx, model_for(models, voter), policy);
        if (move && *move != profile[voter]) {
            Move m;
            m.step = step_no;
            m.voter = voter;
            m.from = profile[voter];
            m.to = *move;
            profile[voter] = *move;
            m.tally_after = profile_tally(profile, rule.m);
            if (scheduler.kind == SchedulerKind::RoundRobin)
                state.next = (voter + 1) % n;
            return m;
        }
    }
    return std::nullopt;
}

std::string Trajectory::record() const {
    std::ostringstream os;
    os << "trajectory steps=" << steps() << " status=";
    switch (status) {
        case RunStatus::Converged:
            os << "converged equilibrium=" << (od_equilibrium ? "true" : "false");
            break;
        case RunStatus::Cycle:
            os << "cycle period=" << cycle_period << " first=" << cycle_first;
            break;
        case RunStatus::Truncated:
            os << "truncated";
            break;
    }
    os << "\n";
    os << "init:";
    for (const auto& b : initial) os << " " << b.str();
    os << "\n";
    for (const auto& m : moves)
        os << "step " << m.step << " voter " << m.voter << ": " << m.from.str() << " -> "
           << m.to.str() << " ; tally " << m.tally_after.str() << "\n";
    return os.str();
}

Trajectory run(const std::vector<Ballot>& initial,
               const std::vector<PreferenceOrder>& prefs_list,
               const std::vector<EpistemicModel>& models, const VotingRule& rule,
               const Scheduler& scheduler, const MovePolicy& policy, int step_cap) {
    const int n = static_cast<int>(initial.size());
    if (n == 0) throw StructuralError("empty profile");
    if (static_cast<int>(prefs_list.size()) != n)
        throw StructuralError("one preference order per voter required");
    int depth = 1;
    for (const auto& model : models)
        depth = std::max(depth, std::max<int>(1, static_cast<int>(model.radii.size())));
    if (step_cap <= 0) step_cap = 10 * n * rule.m * depth;

    Trajectory t;
    t.initial = initial;
    std::vector<Ballot> profile = initial;
    SchedulerState state;
    state.rng = scheduler.seed;

    // cycles are only well-defined when the future is a function of the
    // present; random scheduling never revisits the same rng state
    const bool track_cycles = scheduler.kind == SchedulerKind::RoundRobin;
    std::map<std::pair<std::string, int>, int> seen;
    if (track_cycles) seen[{profile_key(profile), state.next}] = 0;

    for (int step_no = 1; step_no <= step_cap; ++step_no) {
        const auto move =
            step(profile, prefs_list, models, rule, scheduler, state, policy, step_no);
        if (!move) {
            t.status = RunStatus::Converged;
            if (policy.kind != PolicyKind::Heuristic) {
                const auto check = is_od_equilibrium(profile, prefs_list, models, rule);
                if (!check.is_equilibrium)
                    throw StructuralError("rest point failed the equilibrium re-check");
                t.od_equilibrium = true;
            } else {
                t.od_equilibrium =
                    is_od_equilibrium(profile, prefs_list, models, rule).is_equilibrium;
            }
            return t;
        }
        t.moves.push_back(*move);
        if (track_cycles) {
            const auto key = std::make_pair(profile_key(profile), state.next);
            const auto found = seen.find(key);
            if (found != seen.end()) {
                t.status = RunStatus::Cycle;
                t.cycle_first = found->second;
                t.cycle_period = step_no - found->second;
                return t;
            }
            seen.emplace(key, step_no);
        }
    }
    t.status = RunStatus::Truncated;
    return t;
}

ExhaustiveReport exhaustive_scan(const std::vector<PreferenceOrder>& prefs_list,
                                 const std::vector<EpistemicModel>& models,
                                 const VotingRule& rule, const MovePolicy& policy,
                                 std::int64_t node_cap) {
    const int n = static_cast<int>(prefs_list.size());
    const auto ballots = allowed_ballots(rule);
    ExhaustiveReport report;

    // enumerate every profile as an index vector
    std::map<std::string, int> color;  // 0 unvisited implicit, 1 gray, 2 black
    struct Frame {
        std::vector<Ballot> profile;
        std::vector<std::pair<int, Ballot>> succ;  // voter moves still untried
        size_t cursor = 0;
    };

    auto successors = [&](const std::vector<Ballot>& profile) {
        std::vector<std::pair<int, Ballot>> out;
        const ScoreVector tally = profile_tally(profile, rule.m);
        for (int voter = 0; voter < n; ++voter) {
            const VoterContext ctx =
                VoterContext::from_poll(tally, profile[voter], prefs_list[voter], rule);
            const auto move = policy_move(ctx, model_for(models, voter), policy);
            if (move && *move != profile[voter]) out.emplace_back(voter, *move);
        }
        return out;
    };

    std::vector<int> idx(n, 0);
    while (true) {
        std::vector<Ballot> root;
        root.reserve(n);
        for (int i = 0; i < n; ++i) root.push_back(ballots[idx[i]]);
        if (!color.count(profile_key(root))) {
            // iterative DFS with gray/black coloring
            std::vector<Frame> stack;
            stack.push_back({root, successors(root), 0});
            color[profile_key(root)] = 1;
            while (!stack.empty()) {
                Frame& top = stack.back();
                if (static_cast<std::int64_t>(color.size()) > node_cap)
                    throw CapacityError("exhaustive scan exceeded " +
                                        std::to_string(node_cap) + " profiles");
                if (top.cursor == top.succ.size()) {
                    if (top.succ.empty() && policy.kind != PolicyKind::Heuristic) {
                        if (!is_od_equilibrium(top.profile, prefs_list, models, rule)
                                 .is_equilibrium)
                            report.sinks_verified = false;
                    }
                    color[profile_key(top.profile)] = 2;
                    stack.pop_back();
                    continue;
                }
                auto [voter, ballot] = top.succ[top.cursor++];
                std::vector<Ballot> next = top.profile;
                next[voter] = ballot;
                const std::string key = profile_key(next);
                const auto it = color.find(key);
                if (it == color.end()) {
                    color[key] = 1;
                    stack.push_back({next, successors(next), 0});
                } else if (it->second == 1) {
                    report.cycle_free = false;
                    if (report.cycle_path.empty()) {
                        for (const auto& f : stack) report.cycle_path.push_back(f.profile);
                        report.cycle_path.push_back(next);
                    }
                }
            }
        }
        // advance the profile odometer
        int pos = n - 1;
        while (pos >= 0 && idx[pos] + 1 == static_cast<int>(ballots.size())) {
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[pos];
    }
    report.profiles_explored = static_cast<long long>(color.size());
    return report;
}

std::string BatchReport::summary() const {
    std::ostringstream os;
    os << "batch trials=" << trials << " converged=" << converged << " cycled=" << cycled
       << " truncated=" << truncated << " errors=" << errors;
    char rate[32];
    std::snprintf(rate, sizeof rate, "%.6f", convergence_rate());
    os << " rate=" << rate << "\n";
    if (converged > 0)
        os << "steps: min=" << min_steps << " max=" << max_steps << " total=" << total_steps
           << "\n";
    return os.str();
}

namespace {

struct TrialResult {
    int status = -1;  // 0 converged, 1 cycle, 2 truncated, 3 error
    int steps = 0;
    std::optional<Trajectory> cycle;
};

TrialResult run_trial(const BatchConfig& config, std::uint64_t trial_seed) {
    Rng rng(trial_seed);
    const int n = config.voters;
    const int m = config.rule.m;
    const auto ballots = allowed_ballots(config.rule);

    std::vector<PreferenceOrder> prefs;
    prefs.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::vector<CandidateId> order(m);
        for (int c = 0; c < m; ++c) order[c] = c;
        rng.shuffle(order);
        prefs.push_back(PreferenceOrder::from_order(order));
    }

    std::vector<EpistemicModel> models;
    if (config.model_pool.size() == 1 ||
        static_cast<int>(config.model_pool.size()) == n) {
        models = config.model_pool;
    } else {
        for (int i = 0; i < n; ++i)
            models.push_back(
                config.model_pool[rng.below(static_cast<int>(config.model_pool.size()))]);
    }

    std::vector<Ballot> initial;
    initial.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (config.truthful_start)
            initial.push_back(truthful_ballot(
                config.rule, prefs[i],
                config.rule.kind == RuleKind::Approval ? std::optional<int>(1)
                                                       : std::nullopt));
        else
            initial.push_back(ballots[rng.below(static_cast<int>(ballots.size()))]);
    }

    Scheduler sched = config.scheduler;
    if (sched.kind == SchedulerKind::RandomSeeded) sched.seed = rng.next();

    TrialResult result;
    try {
        const Trajectory t = run(initial, prefs, models, config.rule, sched,
                                 config.policy, config.step_cap);
        result.steps = t.steps();
        switch (t.status) {
            case RunStatus::Converged: result.status = 0; break;
            case RunStatus::Cycle:
                result.status = 1;
                result.cycle = t;
                break;
            case RunStatus::Truncated: result.status = 2; break;
        }
    } catch (const Error&) {
        result.status = 3;
    }
    return result;
}

}  // namespace

BatchReport batch_verify(const BatchConfig& config) {
    BatchReport report;
    report.trials = config.trials;
    if (config.trials == 0) return report;
    if (config.model_pool.empty()) throw ConfigError("batch needs at least one model");

    std::vector<TrialResult> results(config.trials);
    const int threads = config.threads > 0
                            ? config.threads
                            : std::max(1u, std::thread::hardware_concurrency());
    const int chunk = (config.trials + threads - 1) / threads;
    std::vector<std::future<void>> futures;
    for (int t0 = 0; t0 < config.trials; t0 += chunk) {
        const int t1 = std::min(config.trials, t0 + chunk);
        futures.push_back(std::async(std::launch::async, [&, t0, t1] {
            for (int t = t0; t < t1; ++t)
                results[t] = run_trial(config, config.seed * 0x100000001b3ULL +
                                                   static_cast<std::uint64_t>(t));
        }));
    }
    for (auto& f : futures) f.get();

    bool first = true;
    for (const auto& r : results) {
        switch (r.status) {
            case 0:
                ++report.converged;
                report.total_steps += r.steps;
                report.max_steps = std::max(report.max_steps, r.steps);
                report.min_steps = first ? r.steps : std::min(report.min_steps, r.steps);
                first = false;
                break;
            case 1:
                ++report.cycled;
                if (static_cast<int>(report.cycle_witnesses.size()) <
                    config.max_cycle_witnesses)
                    report.cycle_witnesses.push_back(*r.cycle);
                break;
            case 2: ++report.truncated; break;
            default: ++report.errors; break;
        }
    }
    return report;
}

}  // namespace ordvote
