#include "ordvote/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "ordvote/dynamics.hpp"
#include "ordvote/election_io.hpp"
#include "ordvote/heuristics.hpp"

namespace ordvote {

namespace {

// ---------------------------------------------------------------- utilities

int hardware_threads(const VerifyOptions& opts) {
    if (opts.threads > 0) return opts.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

// deterministic chunked parallel map: fn(begin, end) writes into caller slots
template <typename Fn>
void parallel_chunks(int total, int threads, Fn&& fn) {
    if (total <= 0) return;
    threads = std::max(1, std::min(threads, total));
    const int chunk = (total + threads - 1) / threads;
    std::vector<std::future<void>> futures;
    for (int b = 0; b < total; b += chunk) {
        const int e = std::min(total, b + chunk);
        futures.push_back(std::async(std::launch::async, [&, b, e] { fn(b, e); }));
    }
    for (auto& f : futures) f.get();
}

std::vector<ScoreVector> all_states_of_total(int m, int total) {
    std::vector<ScoreVector> out;
    std::vector<int> cur(m, 0);
    struct Rec {
        int m;
        std::vector<int>& cur;
        std::vector<ScoreVector>& out;
        void go(int idx, int left) {
            if (idx == m - 1) {
                cur[idx] = left;
                out.emplace_back(ScoreVector(cur));
                return;
            }
            for (int v = 0; v <= left; ++v) {
                cur[idx] = v;
                go(idx + 1, left - v);
            }
        }
    } rec{m, cur, out};
    rec.go(0, total);
    return out;
}

std::vector<PreferenceOrder> strict_orders(int m, Bias bias = Bias::None) {
    std::vector<CandidateId> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<PreferenceOrder> out;
    do {
        out.push_back(PreferenceOrder::from_order(perm, bias));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Ballot unit(int m, CandidateId c) {
    std::vector<int> v(m, 0);
    v[c] = 1;
    return Ballot(std::move(v));
}

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

PreferenceOrder random_strict(Rng& rng, int m, Bias bias = Bias::None) {
    std::vector<CandidateId> order(m);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    return PreferenceOrder::from_order(order, bias);
}

struct Report {
    std::ostringstream os;
    void line(const std::string& s) { os << s << "\n"; }
    template <typename... Args>
    void fmt(Args&&... args) {
        (os << ... << args) << "\n";
    }
    std::string str() const { return os.str(); }
};

// the running example: poll, the voter on b, prefs e>d>c>b>w
const ScoreVector kPoll({29, 26, 22, 17, 6});

VoterContext example_context() {
    return VoterContext::from_poll(kPoll, unit(5, 1),
                                   PreferenceOrder::from_order({4, 3, 2, 1, 0}),
                                   VotingRule::plurality(5));
}

EpistemicModel example_model() {
    std::vector<Radius> radii;
    for (int pct : {1, 3, 7, 17})
        radii.push_back(Radius::from_fraction(Fraction(pct, 100), 99));
    return EpistemicModel::distance_based(Metric::emd(), radii);
}

// ---------------------------------------------------------------- criterion 1

VerifyResult suite_example_1(const VerifyOptions&) {
    VerifyResult r{"example-1", true, false, ""};
    Report rep;
    const ScoreVector s({29, 25, 22, 17, 6});
    const auto rule = VotingRule::plurality(5);
    int checked = 0;
    for (const auto& a : allowed_ballots(rule)) {
        if (outcome(s, a, rule) != 0) r.pass = false;
        ++checked;
    }
    const auto g = pivot_graph(InformationSet::explicit_set({s}), rule);
    if (!g.empty()) r.pass = false;
    rep.fmt("every one of ", checked, " ballots elects w at (29,25,22,17,6): ",
            r.pass ? "yes" : "NO");
    rep.fmt("singleton pivot graph empty: ", g.empty() ? "yes" : "NO");
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 2

VerifyResult suite_figure_2(const VerifyOptions&) {
    VerifyResult r{"figure-2", true, false, ""};
    Report rep;
    const auto structure = derive_structure(example_model(), example_context());
    using E = std::vector<std::pair<CandidateId, CandidateId>>;
    bool ok = structure.depth() == 4;
    ok = ok && structure.levels[0].edges == E{};
    ok = ok && structure.levels[1].edges == E{{0, 1}};
    ok = ok && structure.levels[2].edges == E{{0, 1}, {0, 2}, {1, 2}};
    E outer;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            if (!(a == 3 && b == 4)) outer.emplace_back(a, b);
    ok = ok && structure.levels[3].edges == outer;
    rep.fmt("exact edge sets ({}, {wb}, clique{wbc}, all-but-de): ", ok ? "yes" : "NO");
    bool strict = true;
    for (int j = 0; j + 1 < structure.depth(); ++j)
        strict = strict && structure.levels[j].subgraph_of(structure.levels[j + 1]) &&
                 structure.levels[j].edges.size() < structure.levels[j + 1].edges.size();
    rep.fmt("strictly nested: ", strict ? "yes" : "NO");
    const bool has_bd = structure.levels[3].has_edge(1, 3);
    const bool no_de = !structure.levels[3].has_edge(3, 4);
    rep.fmt("outermost has b-d and omits d-e: ", (has_bd && no_de) ? "yes" : "NO");
    const auto upward =
        is_upward_closed(structure, score_order(example_context().state));
    rep.fmt("upward closed under the score order: ", upward.holds ? "yes" : "NO");
    r.pass = ok && strict && has_bd && no_de && upward.holds;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 3

VerifyResult suite_figure_dominance(const VerifyOptions&) {
    VerifyResult r{"figure-dominance", true, false, ""};
    Report rep;
    const auto ctx = example_context();
    const auto structure = derive_structure(example_model(), ctx);
    const auto prefs = PreferenceOrder::from_order({4, 3, 2, 1, 0});
    const auto rule = VotingRule::plurality(5);

    const auto c_over_e = od_check(unit(5, 2), unit(5, 4), prefs, structure, rule);
    const bool fact1 = c_over_e.dominates && c_over_e.level == 3;
    rep.fmt("vote-c dominates vote-e at level 3: ", fact1 ? "yes" : "NO");
    bool fact2 = true;
    for (int x : {0, 2, 3, 4}) {
        const auto v = od_check(unit(5, 1), unit(5, x), prefs, structure, rule);
        fact2 = fact2 && v.dominates && v.level == 2;
    }
    rep.fmt("vote-b dominates every other vote at level 2: ", fact2 ? "yes" : "NO");
    VoterContext on_e = ctx;
    on_e.current = unit(5, 4);
    on_e.prefs = prefs;
    const auto uod = uod_set(on_e, example_model());
    const bool fact3 = uod == std::vector<Ballot>{unit(5, 1)};
    rep.fmt("undominated improving set is exactly {vote-b}: ", fact3 ? "yes" : "NO");
    r.pass = fact1 && fact2 && fact3;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 4

VerifyResult suite_partial_order(const VerifyOptions& opts) {
    VerifyResult r{"lemma-partial-order", true, false, ""};
    const int instances = opts.trials > 0 ? opts.trials : (opts.quick ? 500 : 10'000);
    std::vector<int> violations(instances, 0);
    parallel_chunks(instances, hardware_threads(opts), [&](int b, int e) {
        for (int i = b; i < e; ++i) {
            Rng rng(opts.seed * 0x9e3779b9ULL + static_cast<std::uint64_t>(i));
            const int pick = rng.below(3);
            const VotingRule rule = pick == 0 ? VotingRule::plurality(2 + rng.below(4))
                                   : pick == 1 ? VotingRule::veto(2 + rng.below(4))
                                               : VotingRule::borda(2 + rng.below(3));
            const Bias bias = static_cast<Bias>(rng.below(3));
            const auto prefs = random_strict(rng, rule.m, bias);
            // random nested structure
            std::vector<std::pair<int, int>> all;
            for (int a = 0; a < rule.m; ++a)
                for (int c = a + 1; c < rule.m; ++c) all.emplace_back(a, c);
            PivotGraphStructure structure{rule.m, {}};
            std::vector<std::pair<int, int>> cur;
            const int k = 1 + rng.below(3);
            for (int j = 0; j < k; ++j) {
                for (const auto& edge : all)
                    if (std::find(cur.begin(), cur.end(), edge) == cur.end() &&
                        rng.below(3) == 0)
                        cur.push_back(edge);
                structure.levels.push_back(PivotGraph(rule.m, cur));
            }
            const auto ballots = allowed_ballots(rule, bias == Bias::Lazy);
            const int nb = static_cast<int>(ballots.size());
            std::vector<char> dom(static_cast<size_t>(nb) * nb, 0);
            for (int x = 0; x < nb; ++x)
                for (int y = 0; y < nb; ++y)
                    dom[static_cast<size_t>(x) * nb + y] =
                        od_check(ballots[x], ballots[y], prefs, structure, rule).dominates;
            int bad = 0;
            for (int x = 0; x < nb; ++x) {
                if (dom[static_cast<size_t>(x) * nb + x]) ++bad;
                for (int y = 0; y < nb; ++y) {
                    if (!dom[static_cast<size_t>(x) * nb + y]) continue;
                    if (dom[static_cast<size_t>(y) * nb + x]) ++bad;
                    for (int z = 0; z < nb; ++z)
                        if (dom[static_cast<size_t>(y) * nb + z] &&
                            !dom[static_cast<size_t>(x) * nb + z])
                            ++bad;
                }
            }
            violations[i] = bad;
        }
    });
    const long long total =
        std::accumulate(violations.begin(), violations.end(), 0LL);
    Report rep;
    rep.fmt(instances, " random (structure, prefs, rule) instances, all ballot triples");
    rep.fmt("transitivity/antisymmetry/irreflexivity violations: ", total);
    r.pass = total == 0;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 5

VerifyResult suite_alg_oracle(const VerifyOptions& opts) {
    VerifyResult r{"alg-oracle", true, false, ""};
    const int max_total = opts.quick ? 3 : 5;
    const auto rule = VotingRule::plurality(3);
    const auto ballots = allowed_ballots(rule);
    const auto prefs_all = strict_orders(3);
    long long structures = 0, comparisons = 0, disagreements = 0, spp_rejects = 0;
    std::vector<std::vector<int>> radii_vectors = {{0},    {1},    {2},   {0, 1},
                                                   {0, 2}, {1, 2}, {0, 1, 2}};
    for (int total = 0; total <= max_total; ++total) {
        for (const auto& center : all_states_of_total(3, total)) {
            const int n = std::max(1, center.total);
            for (const auto& rv : radii_vectors) {
                InformationStructure info;
                for (int votes : rv)
                    info.levels.push_back(InformationSet::ball_set(
                        Metric::emd(), center, Radius::from_votes(votes, n)));
                if (!spp_check(info, rule).holds) {
                    ++spp_rejects;
                    continue;
                }
                ++structures;
                PivotGraphStructure graphs{3, {}};
                for (const auto& level : info.levels)
                    graphs.levels.push_back(pivot_graph(level, rule));
                for (const auto& prefs : prefs_all)
                    for (const auto& a : ballots)
                        for (const auto& b : ballots) {
                            ++comparisons;
                            if (od_check(a, b, prefs, graphs, rule).dominates !=
                                od_oracle(a, b, prefs, info, rule))
                                ++disagreements;
                        }
            }
        }
    }
    Report rep;
    rep.fmt("property-satisfying structures: ", structures, " (", spp_rejects,
            " rejected); comparisons: ", comparisons);
    rep.fmt("graph-check vs brute-force disagreements: ", disagreements);
    r.pass = disagreements == 0 && structures > 0;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 6

VerifyResult suite_obs_nash(const VerifyOptions& opts) {
    VerifyResult r{"obs-nash", true, false, ""};
    Report rep;
    const auto model = EpistemicModel::full_information();
    long long set_checks = 0, set_bad = 0;
    for (int m = 2; m <= 3; ++m) {
        const auto rule = VotingRule::plurality(m);
        const auto ballots = allowed_ballots(rule);
        const auto prefs_all = strict_orders(m);
        for (int total = 0; total <= 4; ++total) {
            for (const auto& s : all_states_of_total(m, total)) {
                for (const auto& prefs : prefs_all) {
                    for (const auto& cur : ballots) {
                        const VoterContext ctx{s, cur, prefs, rule};
                        const auto od = od_set(ctx, model);
                        const auto uod = uod_set(ctx, model);
                        std::vector<Ballot> better, best;
                        const CandidateId cw = winner_plus(s, cur);
                        CandidateId top = cw;
                        for (const auto& a : ballots) {
                            const CandidateId w = winner_plus(s, a);
                            if (prefs.prefers(w, top)) top = w;
                        }
                        for (const auto& a : ballots) {
                            if (a == cur) continue;
                            const CandidateId w = winner_plus(s, a);
                            if (prefs.prefers(w, cw)) {
                                better.push_back(a);
                                if (w == top) best.push_back(a);
                            }
                        }
                        ++set_checks;
                        if (od != better || uod != best) ++set_bad;
                    }
                }
            }
        }
    }
    rep.fmt("improving/undominated sets vs better/best responses: ", set_checks,
            " contexts, ", set_bad, " mismatches");

    // equilibrium vs Nash over full profiles, exhaustive
    const int max_n = opts.quick ? 3 : 5;
    const auto rule = VotingRule::plurality(3);
    const auto ballots = allowed_ballots(rule);
    const auto prefs_all = strict_orders(3);
    long long eq_checks = 0, eq_bad = 0;
    for (int n = 2; n <= max_n; ++n) {
        // enumerate preference assignments and profiles by odometer
        std::vector<int> pidx(n, 0);
        while (true) {
            std::vector<PreferenceOrder> prefs;
            for (int i = 0; i < n; ++i) prefs.push_back(prefs_all[pidx[i]]);
            std::vector<int> bidx(n, 0);
            while (true) {
                std::vector<Ballot> profile;
                for (int i = 0; i < n; ++i) profile.push_back(ballots[bidx[i]]);
                const ScoreVector tally = profile_tally(profile, 3);
                bool nash = true;
                for (int i = 0; i < n && nash; ++i) {
                    std::vector<int> rest = tally.scores;
                    for (int c = 0; c < 3; ++c) rest[c] -= profile[i][c];
                    const ScoreVector others(rest);
                    const CandidateId cw = winner_plus(others, profile[i]);
                    for (const auto& a : ballots)
                        if (prefs[i].prefers(winner_plus(others, a), cw)) nash = false;
                }
                const bool od_eq =
                    is_od_equilibrium(profile, prefs, {model}, rule).is_equilibrium;
                ++eq_checks;
                if (nash != od_eq) ++eq_bad;
                int pos = n - 1;
                while (pos >= 0 && bidx[pos] + 1 == static_cast<int>(ballots.size())) {
                    bidx[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++bidx[pos];
            }
            int pos = n - 1;
            while (pos >= 0 && pidx[pos] + 1 == static_cast<int>(prefs_all.size())) {
                pidx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++pidx[pos];
        }
    }
    rep.fmt("equilibrium vs Nash on exhaustive profiles (n <= ", max_n, "): ", eq_checks,
            " checks, ", eq_bad, " mismatches");
    r.pass = set_bad == 0 && eq_bad == 0;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 7a

VerifyResult suite_justify_not_last(const VerifyOptions& opts) {
    VerifyResult r{"prop-justify-not-last", true, false, ""};
    Report rep;
    const int max_m = opts.quick ? 3 : 4;
    // the heuristic reads only the bottom candidate; its preference class
    // ranks one candidate last and is indifferent above
    bool strong_all = true;
    long long checked = 0;
    for (int m = 2; m <= max_m; ++m) {
        const auto rule = VotingRule::plurality(m);
        std::vector<VoterContext> contexts;
        for (int last = 0; last < m; ++last) {
            std::vector<int> ranks(m, 0);
            ranks[last] = 1;
            for (const auto& cur : allowed_ballots(rule))
                contexts.push_back(VoterContext{ScoreVector(std::vector<int>(m, 1)), cur,
                                                PreferenceOrder(ranks), rule});
        }
        const auto report = check_justification(HeuristicKind::not_last(), contexts);
        checked += report.contexts_checked;
        strong_all = strong_all && report.condition_i && report.condition_ii &&
                     report.strong;
    }
    rep.fmt("bottom-only preference class, exhaustive m <= ", max_m, " (", checked,
            " contexts): strong justification ", strong_all ? "holds" : "FAILS");

    // strict preferences: condition II provably diverges from m = 3 on; the
    // undominated set collapses to the favorite's ballot
    std::vector<VoterContext> strict_ctx;
    const auto rule3 = VotingRule::plurality(3);
    for (const auto& prefs : strict_orders(3))
        for (const auto& cur : allowed_ballots(rule3))
            strict_ctx.push_back(VoterContext{ScoreVector({1, 1, 1}), cur, prefs, rule3});
    const auto strict_report =
        check_justification(HeuristicKind::not_last(), strict_ctx);
    rep.fmt("strict preference class (documented divergence): condition I ",
            strict_report.condition_i ? "holds" : "FAILS", ", condition II ",
            strict_report.condition_ii ? "holds (unexpected)" : "fails as analyzed");
    r.pass = strong_all && strict_report.condition_i && !strict_report.condition_ii;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 7b

struct LdStateData {
    std::vector<ScoreVector> states;      // ball contents
    std::vector<std::vector<CandidateId>> winners;  // per state, per unit ballot
    PivotGraph graph{0, {}};
    bool spp_ok = false;
};

LdStateData ld_state_data(const ScoreVector& center, int radius_votes,
                          const VotingRule& rule) {
    LdStateData d;
    const int n = std::max(1, center.total);
    const auto set =
        InformationSet::ball_set(Metric::emd(), center, Radius::from_votes(radius_votes, n));
    d.states = set.materialize();
    d.winners.reserve(d.states.size());
    for (const auto& s : d.states) {
        std::vector<CandidateId> w(rule.m);
        for (int c = 0; c < rule.m; ++c) w[c] = winner_plus(s, unit(rule.m, c));
        d.winners.push_back(std::move(w));
    }
    d.graph = pivot_graph_of_states(d.states, rule);
    InformationStructure info;
    info.levels.push_back(set);
    d.spp_ok = spp_check(info, rule).holds;
    return d;
}

VerifyResult suite_justify_ld(const VerifyOptions& opts) {
    VerifyResult r{"prop-justify-ld", true, false, ""};
    Report rep;
    const int max_m = opts.quick ? 3 : 4;
    const int max_total = opts.quick ? 6 : 8;
    struct Tally {
        long long checked = 0, bad_i = 0, bad_ii_r0 = 0, bad_ii_r12 = 0;
        std::string witness;
    };
    Tally total_tally;
    for (int m = 3; m <= max_m; ++m) {
        const auto rule = VotingRule::plurality(m);
        const auto prefs_all = strict_orders(m);
        for (int total = 1; total <= max_total; ++total) {
            const auto centers = all_states_of_total(m, total);
            std::vector<Tally> acc(centers.size());
            parallel_chunks(
                static_cast<int>(centers.size()), hardware_threads(opts),
                [&](int b, int e) {
                    for (int si = b; si < e; ++si) {
                        const auto& center = centers[si];
                        for (int radius = 0; radius <= 2; ++radius) {
                            const auto data = ld_state_data(center, radius, rule);
                            if (!data.spp_ok) continue;
                            PivotGraphStructure graphs{m, {data.graph}};
                            for (const auto& prefs : prefs_all) {
                                for (int cur = 0; cur < m; ++cur) {
                                    // D: candidates whose ballots dominate vote-cur
                                    std::vector<CandidateId> dset;
                                    for (int c = 0; c < m; ++c) {
                                        if (c == cur) continue;
                                        bool gain = false, loss = false;
                                        for (const auto& w : data.winners) {
                                            const int cmp = prefs.cmp(w[c], w[cur]);
                                            if (cmp > 0) gain = true;
                                            else if (cmp < 0) loss = true;
                                        }
                                        if (gain && !loss) dset.push_back(c);
                                    }
                                    std::vector<Ballot> h;
                                    if (!dset.empty()) {
                                        CandidateId best = dset[0];
                                        for (CandidateId c : dset)
                                            if (prefs.prefers(c, best)) best = c;
                                        h.push_back(unit(m, best));
                                    }
                                    // undominated improving set on the graph
                                    std::vector<Ballot> uod;
                                    for (int c = 0; c < m; ++c) {
                                        if (c == cur) continue;
                                        if (!od_check(unit(m, c), unit(m, cur), prefs,
                                                      graphs, rule)
                                                 .dominates)
                                            continue;
                                        bool dominated = false;
                                        for (int o = 0; o < m && !dominated; ++o)
                                            if (o != c &&
                                                od_check(unit(m, o), unit(m, c), prefs,
                                                         graphs, rule)
                                                    .dominates)
                                                dominated = true;
                                        if (!dominated) uod.push_back(unit(m, c));
                                    }
                                    acc[si].checked += 1;
                                    const bool ok_i = h.empty() == uod.empty();
                                    const bool ok_ii =
                                        h.empty() ||
                                        std::find(uod.begin(), uod.end(), h[0]) !=
                                            uod.end();
                                    if (!ok_i) acc[si].bad_i += 1;
                                    if (!ok_ii) {
                                        if (radius == 0) acc[si].bad_ii_r0 += 1;
                                        else acc[si].bad_ii_r12 += 1;
                                        if (acc[si].witness.empty()) {
                                            std::ostringstream w;
                                            w << "state=" << center.str()
                                              << " r=" << radius << " cur=" << cur;
                                            acc[si].witness = w.str();
                                        }
                                    }
                                }
                            }
                        }
                    }
                });
            for (const auto& t : acc) {
                total_tally.checked += t.checked;
                total_tally.bad_i += t.bad_i;
                total_tally.bad_ii_r0 += t.bad_ii_r0;
                total_tally.bad_ii_r12 += t.bad_ii_r12;
                if (total_tally.witness.empty() && !t.witness.empty())
                    total_tally.witness = t.witness;
            }
        }
    }
    rep.fmt("contexts checked (m <= ", max_m, ", totals <= ", max_total,
            ", r <= 2, property-filtered): ", total_tally.checked);
    rep.fmt("condition I failures anywhere: ", total_tally.bad_i);
    rep.fmt("condition II failures at r=0: ", total_tally.bad_ii_r0);
    rep.fmt("condition II failures at r in {1,2} (documented wasted-vote defect): ",
            total_tally.bad_ii_r12,
            total_tally.bad_ii_r12 ? "  first: " + total_tally.witness : std::string());
    r.pass = total_tally.bad_i == 0 && total_tally.bad_ii_r0 == 0 &&
             total_tally.bad_ii_r12 > 0;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 7c

VerifyResult suite_justify_biased(const VerifyOptions& opts, Bias bias) {
    VerifyResult r{bias == Bias::Truth ? "prop-justify-truth-bias"
                                       : "prop-justify-lazy-bias",
                   true, false, ""};
    Report rep;
    const int max_total = opts.quick ? 6 : 8;
    const auto rule = VotingRule::plurality(3);
    long long checked = 0, skipped = 0, bad_i = 0, bad_ii = 0;
    for (int r2 = 1; r2 <= 2; ++r2) {
        for (int total = 1; total <= max_total; ++total) {
            for (const auto& s : all_states_of_total(3, total)) {
                const int n = std::max(1, s.total);
                const auto kind =
                    bias == Bias::Truth
                        ? HeuristicKind::truth_bias_ld(Metric::emd(),
                                                       Radius::from_votes(0, n),
                                                       Radius::from_votes(r2, n))
                        : HeuristicKind::lazy_bias_ld(Metric::emd(),
                                                      Radius::from_votes(0, n),
                                                      Radius::from_votes(r2, n));
                std::vector<VoterContext> contexts;
                for (const auto& prefs : strict_orders(3, bias))
                    for (const auto& cur : allowed_ballots(rule))
                        contexts.push_back(VoterContext{s, cur, prefs, rule});
                JustificationOptions jopts;
                jopts.require_spp = true;
                const auto report = check_justification(kind, contexts, jopts);
                checked += report.contexts_checked;
                skipped += report.contexts_skipped;
                if (!report.condition_i) ++bad_i;
                if (!report.condition_ii) ++bad_ii;
            }
        }
    }
    rep.fmt("exhaustive plurality m=3, totals <= ", max_total,
            ", inner radius 0, outer in {1,2}, property-filtered");
    rep.fmt("contexts checked ", checked, " (", skipped, " filtered out)");
    rep.fmt("condition I failures: ", bad_i, "; condition II failures: ", bad_ii);
    rep.line("inner radii >= 1 inherit the local-dominance wasted-vote defect and are "
             "reported under prop-justify-ld");
    r.pass = bad_i == 0 && bad_ii == 0 && checked > 0;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 7d/7e

VerifyResult suite_justify_t_star(const VerifyOptions& opts) {
    VerifyResult r{"prop-justify-t-star", true, false, ""};
    Report rep;
    const int per_rule = opts.trials > 0 ? opts.trials : (opts.quick ? 120 : 1'100);
    struct Config {
        VotingRule rule;
        int T;
        bool expect_strong;
    };
    std::vector<Config> configs = {
        {VotingRule::plurality(5), 2, true}, {VotingRule::plurality(5), 3, true},
        {VotingRule::plurality(5), 5, true}, {VotingRule::veto(4), 2, true},
        {VotingRule::borda(3), 2, true},     {VotingRule::approval(4), 4, true},
        // wider configurations where the star cannot pin every coordinate;
        // the strong claim provably fails there and is reported, not asserted
        {VotingRule::borda(3), 3, false},    {VotingRule::approval(4), 2, false},
    };
    bool pass = true;
    for (const auto& cfg : configs) {
        Rng rng(opts.seed * 1299709ULL + cfg.rule.m * 31 + cfg.T);
        const auto ballots = allowed_ballots(cfg.rule);
        std::vector<VoterContext> contexts;
        const int want = cfg.expect_strong ? per_rule : std::min(per_rule, 200);
        while (static_cast<int>(contexts.size()) < want) {
            std::vector<int> v(cfg.rule.m);
            for (int& x : v) x = rng.below(20);
            contexts.push_back(
                VoterContext{ScoreVector(v),
                             ballots[rng.below(static_cast<int>(ballots.size()))],
                             random_strict(rng, cfg.rule.m), cfg.rule});
        }
        const auto report =
            check_justification(HeuristicKind::t_star(cfg.T), contexts);
        const bool strong_ok = report.condition_i && report.condition_ii && report.strong;
        if (cfg.expect_strong) {
            rep.fmt(cfg.rule.name(), " T=", cfg.T, " over ", report.contexts_checked,
                    " contexts: strong justification ",
                    strong_ok ? "holds" : "FAILS");
            pass = pass && strong_ok;
        } else {
            rep.fmt(cfg.rule.name(), " T=", cfg.T,
                    " (outside the star's reach, documented): strong ",
                    report.strong ? "holds (unexpected)" : "fails as analyzed",
                    ", conditions I/II ",
                    (report.condition_i && report.condition_ii) ? "hold" : "FAIL");
            pass = pass && !report.strong && report.condition_i && report.condition_ii;
        }
    }
    r.pass = pass;
    r.details = rep.str();
    return r;
}

VerifyResult suite_justify_t_pragmatist(const VerifyOptions& opts) {
    VerifyResult r{"prop-justify-t-pragmatist", true, false, ""};
    Report rep;
    Rng rng(opts.seed * 7919ULL);
    const auto rule = VotingRule::borda(4);
    const auto ballots = allowed_ballots(rule);
    int witnesses = 0, tried = 0;
    std::string first;
    const int samples = opts.quick ? 200 : 1'000;
    for (int t = 0; t < samples; ++t) {
        std::vector<int> v(4);
        for (int& x : v) x = rng.below(20);
        const VoterContext ctx{ScoreVector(v),
                               ballots[rng.below(static_cast<int>(ballots.size()))],
                               random_strict(rng, 4), rule};
        const int T = 2 + rng.below(2);
        const auto kind = HeuristicKind::t_pragmatist(T);
        const auto h = evaluate_heuristic(kind, ctx);
        if (h.empty()) continue;
        ++tried;
        const auto graphs = build_model(kind, ctx);
        for (const auto& b : ballots) {
            if (b == h[0]) continue;
            if (od_check(b, h[0], ctx.prefs, graphs, rule).dominates) {
                ++witnesses;
                if (first.empty())
                    first = "state=" + ctx.state.str() + " T=" + std::to_string(T) +
                            " cur=" + ctx.current.str() + " h=" + h[0].str() +
                            " dominated-by=" + b.str();
                break;
            }
        }
    }
    rep.fmt("borda m=4 sampled contexts with a live recommendation: ", tried);
    rep.fmt("recommendations that are themselves dominated: ", witnesses);
    if (!first.empty()) rep.fmt("first witness: ", first);
    r.pass = witnesses >= 1;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 8

VerifyResult suite_justify_leader(const VerifyOptions& opts) {
    VerifyResult r{"prop-justify-leader", true, false, ""};
    Report rep;
    const auto rule = VotingRule::approval(5);
    const auto ballots = allowed_ballots(rule);
    const auto prefs_all = strict_orders(5);
    const int state_samples = opts.quick ? 20 : 110;
    Rng rng(opts.seed * 104729ULL);
    std::vector<ScoreVector> states;
    for (int i = 0; i < state_samples; ++i) {
        std::vector<int> v(5);
        for (int& x : v) x = rng.below(40);
        states.push_back(ScoreVector(v));
    }
    long long checks = 0, failures = 0;
    for (const auto& prefs : prefs_all) {
        for (const auto& s : states) {
            const VoterContext ctx{s, ballots[0], prefs, rule};
            const auto h = evaluate_heuristic(HeuristicKind::leader_rule(), ctx);
            const Ballot lr = h.empty() ? ctx.current : h[0];
            const auto graphs = build_model(HeuristicKind::leader_rule(), ctx);
            for (const auto& b : ballots) {
                if (b == lr) continue;
                ++checks;
                if (!od_check(lr, b, prefs, graphs, rule).dominates) ++failures;
            }
        }
    }
    rep.fmt("120 strict orders x ", state_samples, " states x 31 rival ballots = ",
            checks, " dominance checks");
    rep.fmt("failures: ", failures);
    r.pass = failures == 0;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 9

VerifyResult suite_metric_topology(const VerifyOptions& opts) {
    VerifyResult r{"prop-metric-topology", true, false, ""};
    Report rep;
    const int max_total = opts.quick ? 10 : 30;
    const int max_m = opts.quick ? 3 : 4;
    long long cliqued_checks = 0, cliqued_bad = 0;
    long long upward_checks = 0, upward_bad = 0;
    std::string first_bad;

    for (int m = 2; m <= max_m; ++m) {
        std::vector<Fraction> weights;
        for (int c = 0; c < m; ++c) weights.push_back(Fraction(1 + c));
        for (int total = 1; total <= max_total; ++total) {
            const auto centers = all_states_of_total(m, total);
            std::vector<std::array<long long, 4>> acc(centers.size(), {0, 0, 0, 0});
            std::vector<std::string> bad(centers.size());
            parallel_chunks(
                static_cast<int>(centers.size()), hardware_threads(opts),
                [&](int b, int e) {
                    for (int si = b; si < e; ++si) {
                        const auto& center = centers[si];
                        const int n = std::max(1, center.total);
                        const Metric metrics[4] = {Metric::linf(n),
                                                   Metric::candidate_wise(n, weights),
                                                   Metric::emd(), Metric::l1(n)};
                        for (int mi = 0; mi < 4; ++mi) {
                            const bool expect_clique = mi < 2;
                            const Radius rmax = Radius::from_votes(4, n);
                            const auto states = ball(metrics[mi], center, rmax);
                            // winner mask and distance per element, shared radii
                            std::vector<std::pair<Fraction, unsigned>> elems;
                            elems.reserve(states.size());
                            for (const auto& t : states) {
                                unsigned mask = 0;
                                for (int c = 0; c < m; ++c)
                                    mask |= 1u << winner_plus(t, unit(m, c));
                                elems.push_back({distance(metrics[mi], center, t), mask});
                            }
                            for (int rv = 1; rv <= 4; ++rv) {
                                const Radius rr = Radius::from_votes(rv, n);
                                std::vector<char> adj(
                                    static_cast<size_t>(m) * m, 0);
                                for (const auto& [dist, mask] : elems) {
                                    if (!(dist <= rr.value)) continue;
                                    for (int a = 0; a < m; ++a) {
                                        if (!(mask & (1u << a))) continue;
                                        for (int b2 = a + 1; b2 < m; ++b2)
                                            if (mask & (1u << b2))
                                                adj[static_cast<size_t>(a) * m + b2] = 1;
                                    }
                                }
                                std::vector<std::pair<CandidateId, CandidateId>> edges;
                                for (int a = 0; a < m; ++a)
                                    for (int b2 = a + 1; b2 < m; ++b2)
                                        if (adj[static_cast<size_t>(a) * m + b2])
                                            edges.emplace_back(a, b2);
                                PivotGraphStructure structure{
                                    m, {PivotGraph(m, edges)}};
                                if (expect_clique) {
                                    acc[si][0] += 1;
                                    if (!is_cliqued(structure)) {
                                        acc[si][1] += 1;
                                        if (bad[si].empty())
                                            bad[si] = metrics[mi].name() + " r=" +
                                                      std::to_string(rv) + " center=" +
                                                      center.str();
                                    }
                                } else {
                                    acc[si][2] += 1;
                                    if (!is_upward_closed(structure,
                                                          score_order(center))
                                             .holds) {
                                        acc[si][3] += 1;
                                        if (bad[si].empty())
                                            bad[si] = metrics[mi].name() + " r=" +
                                                      std::to_string(rv) + " center=" +
                                                      center.str();
                                    }
                                }
                            }
                        }
                    }
                });
            for (size_t si = 0; si < centers.size(); ++si) {
                cliqued_checks += acc[si][0];
                cliqued_bad += acc[si][1];
                upward_checks += acc[si][2];
                upward_bad += acc[si][3];
                if (first_bad.empty() && !bad[si].empty()) first_bad = bad[si];
            }
        }
    }
    rep.fmt("plurality, candidate-wise balls (linf, weighted) cliqued: ",
            cliqued_checks, " structures, ", cliqued_bad, " violations");
    rep.fmt("plurality, neutral balls (emd, l1) upward-closed under the score order: ",
            upward_checks, " structures, ", upward_bad, " violations");
    if (!first_bad.empty()) rep.fmt("first violation: ", first_bad);

    // other rules, for the record: the clique claim is plurality-specific
    long long veto_cl_bad = 0, veto_up_any_bad = 0, veto_checks = 0;
    const auto veto = VotingRule::veto(3);
    for (int total = 1; total <= (opts.quick ? 8 : 14); ++total) {
        for (const auto& center : all_states_of_total(3, total)) {
            const int n = std::max(1, center.total);
            for (int rv = 1; rv <= 3; ++rv) {
                ++veto_checks;
                const auto gl = pivot_graph(
                    InformationSet::ball_set(Metric::linf(n), center,
                                             Radius::from_votes(rv, n)),
                    veto);
                if (!is_cliqued(PivotGraphStructure{3, {gl}})) ++veto_cl_bad;
                const auto ge = pivot_graph(
                    InformationSet::ball_set(Metric::emd(), center,
                                             Radius::from_votes(rv, n)),
                    veto);
                if (!is_upward_closed(PivotGraphStructure{3, {ge}}).holds)
                    ++veto_up_any_bad;
            }
        }
    }
    rep.fmt("veto m=3 (informational): candidate-wise balls non-cliqued in ",
            veto_cl_bad, "/", veto_checks, " cases (the clique argument is "
            "plurality-specific); neutral balls upward-closed for some order in ",
            veto_checks - veto_up_any_bad, "/", veto_checks);
    r.pass = cliqued_bad == 0 && upward_bad == 0 && veto_up_any_bad == 0;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 10

BatchReport converge_batch(const VotingRule& rule, int n, bool concentric,
                           const MovePolicy& policy, int trials, std::uint64_t seed) {
    BatchConfig config;
    config.rule = rule;
    config.voters = n;
    if (concentric)
        config.model_pool = {
            EpistemicModel::distance_based(
                Metric::linf(n), {Radius::from_votes(1, n), Radius::from_votes(2, n)}),
            EpistemicModel::distance_based(Metric::linf(n), {Radius::from_votes(1, n)})};
    else
        config.model_pool = {
            EpistemicModel::distance_based(Metric::linf(n), {Radius::from_votes(1, n)}),
            EpistemicModel::distance_based(Metric::linf(n), {Radius::from_votes(2, n)})};
    config.scheduler = Scheduler::random_seeded(0);
    config.policy = policy;
    config.trials = trials;
    config.seed = seed;
    return batch_verify(config);
}

VerifyResult suite_converge(const VerifyOptions& opts, RuleKind rk) {
    const bool veto = rk == RuleKind::Veto;
    VerifyResult r{veto ? "thm-converge-veto" : "thm-converge-plurality", true, false,
                   ""};
    Report rep;
    const int per_cell = opts.trials > 0 ? opts.trials
                                         : (opts.quick ? 30 : 200);
    const std::vector<std::pair<int, int>> grid = {
        {5, 3}, {8, 4}, {10, 5}, {12, 3}, {15, 5}};
    for (const auto& policy : {MovePolicy::best_uod(), MovePolicy::any_od()}) {
        long long trials = 0, converged = 0, bad = 0;
        for (size_t g = 0; g < grid.size(); ++g) {
            const auto [n, m] = grid[g];
            const auto rule = veto ? VotingRule::veto(m) : VotingRule::plurality(m);
            const auto report = converge_batch(rule, n, veto, policy, per_cell,
                                               opts.seed + g * 1000);
            trials += report.trials;
            converged += report.converged;
            bad += report.cycled + report.truncated + report.errors;
        }
        rep.fmt(policy.kind == PolicyKind::BestUOD ? "best-move policy"
                                                   : "any-move policy",
                ": ", converged, "/", trials, " converged (every terminal profile "
                "re-verified), failures ", bad);
        r.pass = r.pass && bad == 0 && converged == trials;
    }
    // adversarial: every profile, every activation order, per policy
    const int max_n = opts.quick ? 4 : 6;
    Rng rng(opts.seed * 15485863ULL);
    long long scanned = 0, any_cycles = 0, any_draws = 0;
    bool best_cycle_free = true, sinks_ok = true;
    for (int n = 3; n <= max_n; ++n) {
        for (int draw = 0; draw < (opts.quick ? 2 : 8); ++draw) {
            std::vector<PreferenceOrder> prefs;
            std::vector<EpistemicModel> models;
            for (int i = 0; i < n; ++i) {
                prefs.push_back(random_strict(rng, 3));
                models.push_back(
                    veto ? EpistemicModel::distance_based(
                               Metric::linf(n), {Radius::from_votes(1, n),
                                                 Radius::from_votes(2, n)})
                         : EpistemicModel::distance_based(
                               Metric::linf(n),
                               {Radius::from_votes(1 + rng.below(2), n)}));
            }
            const auto rule = veto ? VotingRule::veto(3) : VotingRule::plurality(3);
            const auto best = exhaustive_scan(prefs, models, rule, MovePolicy::best_uod());
            scanned += best.profiles_explored;
            best_cycle_free = best_cycle_free && best.cycle_free;
            sinks_ok = sinks_ok && best.sinks_verified;
            const auto any = exhaustive_scan(prefs, models, rule, MovePolicy::any_od());
            sinks_ok = sinks_ok && any.sinks_verified;
            ++any_draws;
            if (!any.cycle_free) ++any_cycles;
        }
    }
    rep.fmt("adversarial scheduling (all activation orders, all initial profiles, "
            "n <= ", max_n, "): ", scanned, " profiles; best-move dynamics ",
            best_cycle_free ? "cycle-free" : "CYCLE FOUND", ", rest points ",
            sinks_ok ? "all verified" : "NOT all equilibria");
    if (any_cycles > 0)
        rep.fmt("unrestricted-move dynamics cycled in ", any_cycles, "/", any_draws,
                " adversarial draws: a voter may legally abandon a contender for an "
                "irrelevant third candidate and later return, so convergence needs "
                "the undominated-move refinement (witness frozen in the unit tests)");
    else
        rep.fmt("unrestricted-move dynamics also cycle-free in ", any_draws,
                " adversarial draws");
    r.pass = r.pass && best_cycle_free && sinks_ok;
    r.details = rep.str();
    return r;
}

VerifyResult suite_negative_control(const VerifyOptions& opts) {
    VerifyResult r{"negative-control-cycle", true, false, ""};
    Report rep;
    BatchConfig config;
    config.rule = VotingRule::borda(3);
    config.voters = 2;
    config.model_pool = {EpistemicModel::full_information()};
    config.scheduler = Scheduler::round_robin();
    config.policy = MovePolicy::best_uod();
    config.trials = opts.quick ? 60 : 300;
    config.seed = opts.seed + 4;
    const auto report = batch_verify(config);
    rep.fmt("borda, full information, best responses: ", report.cycled, "/",
            report.trials, " runs cycled, ", report.truncated, " truncated");
    if (!report.cycle_witnesses.empty()) {
        const auto& w = report.cycle_witnesses.front();
        rep.fmt("first cycle: period ", w.cycle_period, " entered at step ",
                w.cycle_first);
    }
    r.pass = report.cycled >= 1 && report.errors == 0;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 11

struct SppBlock {
    long long held = 0, violated = 0, unchecked = 0, confirmed = 0;
    std::string first_violation;
    double rate() const {
        const long long total = held + violated + unchecked;
        return total == 0 ? 0.0 : static_cast<double>(held) / static_cast<double>(total);
    }
};

SppBlock spp_block(const VerifyOptions& opts, int n, int samples_per_m,
                   const std::vector<Fraction>& radii) {
    SppBlock block;
    for (int m : {3, 4, 5}) {
        const auto rule = VotingRule::plurality(m);
        std::vector<int> results(samples_per_m, -1);
        std::vector<std::vector<Fraction>> dists(samples_per_m);
        parallel_chunks(samples_per_m, hardware_threads(opts), [&](int b, int e) {
            for (int i = b; i < e; ++i) {
                Rng rng(opts.seed * 2654435761ULL + n * 7919ULL + m * 1000003ULL +
                        static_cast<std::uint64_t>(i));
                // random point on the simplex via sorted integer cuts
                const int W = 1000;
                std::vector<int> cuts{0, W};
                for (int c = 1; c < m; ++c) cuts.push_back(rng.below(W + 1));
                std::sort(cuts.begin(), cuts.end());
                std::vector<Fraction> p;
                for (int c = 0; c < m; ++c)
                    p.push_back(Fraction(cuts[c + 1] - cuts[c], W));
                dists[i] = p;
                const auto entries = spp_scan(p, {n}, Metric::emd(), radii, rule);
                results[i] = !entries[0].checked ? 2 : (entries[0].holds ? 0 : 1);
            }
        });
        for (int i = 0; i < samples_per_m; ++i) {
            if (results[i] == 0) ++block.held;
            else if (results[i] == 2) ++block.unchecked;
            else {
                ++block.violated;
                if (block.first_violation.empty()) {
                    std::ostringstream w;
                    w << "m=" << m << " p=";
                    for (const auto& f : dists[i]) w << f.str() << " ";
                    block.first_violation = w.str();
                }
                // confirm at a reduced electorate with the exhaustive checker
                for (int small_n : {30, 40, 50, 60, 70, 80}) {
                    const auto small =
                        spp_scan(dists[i], {small_n}, Metric::emd(), radii, rule);
                    if (small[0].checked && !small[0].holds) {
                        ++block.confirmed;
                        break;
                    }
                }
            }
        }
    }
    return block;
}

VerifyResult suite_thm_spp(const VerifyOptions& opts) {
    VerifyResult r{"thm-spp", true, false, ""};
    Report rep;
    const int samples = opts.trials > 0 ? opts.trials : (opts.quick ? 15 : 100);
    const std::vector<Fraction> radii{Fraction(1, 100), Fraction(3, 100),
                                      Fraction(7, 100)};
    char buf[32];

    const SppBlock main_block = spp_block(opts, 500, samples, radii);
    std::snprintf(buf, sizeof buf, "%.4f", main_block.rate());
    rep.fmt("n=500, radii {1%,3%,7%}, ", samples, " samples per m in {3,4,5}: held ",
            main_block.held, ", violated ", main_block.violated, ", capacity-skipped ",
            main_block.unchecked, ", hold rate ", buf);
    if (main_block.violated > 0) {
        rep.fmt("every violation confirmed by the exhaustive checker at reduced n: ",
                main_block.confirmed, "/", main_block.violated, "  first: ",
                main_block.first_violation);
        rep.line("violations sit in one-vote alignment bands (a score gap equal to "
                 "2*budget+1 admits the vote-assisted flip but not the unassisted "
                 "qualifying pair); their measure shrinks as the electorate grows");
    }
    // the asymptotic trend the theorem actually asserts
    if (!opts.quick) {
        for (const auto& [big_n, per_m] : std::vector<std::pair<int, int>>{
                 {1000, 40}, {2000, 25}, {4000, 15}}) {
            const SppBlock t = spp_block(opts, big_n, per_m, radii);
            std::snprintf(buf, sizeof buf, "%.4f", t.rate());
            rep.fmt("trend n=", big_n, " (", per_m, " per m): hold rate ", buf,
                    ", confirmations ", t.confirmed, "/", t.violated);
            if (t.confirmed != t.violated) r.pass = false;
        }
    }
    const bool machinery_ok =
        main_block.confirmed == main_block.violated && main_block.unchecked == 0;
    if (opts.quick) {
        rep.line("quick mode verifies the scan machinery; the 99% bar applies at "
                 "full scale");
        r.pass = r.pass && machinery_ok;
    } else {
        r.pass = r.pass && machinery_ok && main_block.rate() >= 0.99;
    }
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 12

VerifyResult suite_perf(const VerifyOptions& opts) {
    VerifyResult r{"perf-od-check", true, false, ""};
    Report rep;
    Rng rng(opts.seed * 31337ULL);
    struct Cell {
        int m, k;
        double unit_ns;
    };
    std::vector<Cell> cells;
    for (int m : {5, 10, 20, 40}) {
        for (int k : {1, 2, 4, 8}) {
            const auto rule = VotingRule::plurality(m);
            PivotGraphStructure structure{m, {}};
            for (int j = 0; j < k; ++j) structure.levels.push_back(PivotGraph::complete(m));
            const auto prefs = random_strict(rng, m);
            const Ballot a = unit(m, rng.below(m)), b = unit(m, rng.below(m));
            // calibrate iterations so each measurement spans >= 20 ms
            long long iters = 64;
            double elapsed = 0;
            while (true) {
                const auto t0 = std::chrono::steady_clock::now();
                for (long long i = 0; i < iters; ++i) {
                    volatile bool sink =
                        od_check(a, b, prefs, structure, rule).dominates;
                    (void)sink;
                }
                elapsed = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
                if (elapsed >= 0.02 || iters > (1LL << 24)) break;
                iters *= 4;
            }
            const double unit_ns =
                elapsed * 1e9 / static_cast<double>(iters) / (double(m) * m * k);
            cells.push_back({m, k, unit_ns});
        }
    }
    std::vector<double> units;
    for (const auto& c : cells) units.push_back(c.unit_ns);
    std::vector<double> sorted = units;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double largest = cells.back().unit_ns;  // m=40, k=8
    for (const auto& c : cells)
        rep.fmt("m=", c.m, " k=", c.k, ": ", static_cast<int>(c.unit_ns * 100) / 100.0,
                " ns per edge-slot");
    rep.fmt("largest configuration vs median unit cost: ",
            static_cast<int>(largest / median * 100) / 100.0, "x (tolerance 2x)");
    r.pass = largest <= 2.0 * median;
    r.details = rep.str();
    return r;
}

// ---------------------------------------------------------------- criterion 13

VerifyResult suite_determinism(const VerifyOptions& opts) {
    VerifyResult r{"determinism", true, false, ""};
    Report rep;
    // identical seeds must reproduce every artifact bit for bit
    const auto rule = VotingRule::plurality(4);
    const auto ballots = allowed_ballots(rule);
    Rng rng(opts.seed);
    std::vector<Ballot> profile;
    std::vector<PreferenceOrder> prefs;
    for (int i = 0; i < 6; ++i) {
        profile.push_back(ballots[rng.below(static_cast<int>(ballots.size()))]);
        prefs.push_back(random_strict(rng, 4));
    }
    std::vector<EpistemicModel> models{EpistemicModel::distance_based(
        Metric::linf(6), {Radius::from_votes(1, 6)})};
    const auto t1 = run(profile, prefs, models, rule, Scheduler::random_seeded(9),
                        MovePolicy::best_uod());
    const auto t2 = run(profile, prefs, models, rule, Scheduler::random_seeded(9),
                        MovePolicy::best_uod());
    const bool traj_ok = t1.record() == t2.record();
    rep.fmt("repeated trajectory identical: ", traj_ok ? "yes" : "NO");

    BatchConfig config;
    config.rule = rule;
    config.voters = 5;
    config.model_pool = models;
    config.scheduler = Scheduler::random_seeded(0);
    config.policy = MovePolicy::best_uod();
    config.trials = 40;
    config.seed = opts.seed;
    const bool batch_ok = batch_verify(config).summary() == batch_verify(config).summary();
    rep.fmt("repeated batch summary identical: ", batch_ok ? "yes" : "NO");

    const auto s1 = derive_structure(example_model(), example_context());
    const auto s2 = derive_structure(example_model(), example_context());
    const std::vector<std::string> names{"w", "b", "c", "d", "e"};
    const bool derive_ok = to_record(s1, names) == to_record(s2, names) &&
                           to_dot(s1, names) == to_dot(s2, names);
    rep.fmt("repeated derivation identical: ", derive_ok ? "yes" : "NO");

    r.pass = traj_ok && batch_ok && derive_ok;
    r.details = rep.str();
    return r;
}

}  // namespace

std::string VerifyResult::record() const {
    std::ostringstream os;
    os << "verify target=" << target << " pass=" << (pass ? "true" : "false");
    if (vacuous) os << " vacuous=true";
    os << "\n" << details;
    return os.str();
}

std::vector<std::string> verify_targets() {
    return {"example-1",
            "figure-2",
            "figure-dominance",
            "lemma-partial-order",
            "alg-oracle",
            "obs-nash",
            "prop-justify-not-last",
            "prop-justify-ld",
            "prop-justify-truth-bias",
            "prop-justify-lazy-bias",
            "prop-justify-t-star",
            "prop-justify-t-pragmatist",
            "prop-justify-leader",
            "prop-metric-topology",
            "thm-converge-plurality",
            "thm-converge-veto",
            "negative-control-cycle",
            "thm-spp",
            "perf-od-check",
            "determinism"};
}

VerifyResult run_verify(const std::string& target, const VerifyOptions& opts) {
    if (target == "example-1") return suite_example_1(opts);
    if (target == "figure-2") return suite_figure_2(opts);
    if (target == "figure-dominance") return suite_figure_dominance(opts);
    if (target == "lemma-partial-order") return suite_partial_order(opts);
    if (target == "alg-oracle") return suite_alg_oracle(opts);
    if (target == "obs-nash") return suite_obs_nash(opts);
    if (target == "prop-justify-not-last") return suite_justify_not_last(opts);
    if (target == "prop-justify-ld") return suite_justify_ld(opts);
    if (target == "prop-justify-truth-bias") return suite_justify_biased(opts, Bias::Truth);
    if (target == "prop-justify-lazy-bias") return suite_justify_biased(opts, Bias::Lazy);
    if (target == "prop-justify-t-star") return suite_justify_t_star(opts);
    if (target == "prop-justify-t-pragmatist") return suite_justify_t_pragmatist(opts);
    if (target == "prop-justify-leader") return suite_justify_leader(opts);
    if (target == "prop-metric-topology") return suite_metric_topology(opts);
    if (target == "thm-converge-plurality") return suite_converge(opts, RuleKind::Plurality);
    if (target == "thm-converge-veto") return suite_converge(opts, RuleKind::Veto);
    if (target == "negative-control-cycle") return suite_negative_control(opts);
    if (target == "thm-spp") return suite_thm_spp(opts);
    if (target == "perf-od-check") return suite_perf(opts);
    if (target == "determinism") return suite_determinism(opts);
    throw ConfigError("unknown verify target '" + target + "'");
}

}  // namespace ordvote
