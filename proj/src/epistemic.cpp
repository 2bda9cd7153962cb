#include "ordvote/epistemic.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ordvote {

namespace {

// winner of s + a without ballot revalidation or allocation
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

std::int64_t emd_relocation_budget(const Metric& metric, const ScoreVector& center,
                                   const Radius& r) {
    const int n = metric.normalization > 0 ? metric.normalization : std::max(1, center.total);
    // membership: l1(center,t) / (2n) <= r, l1 always even on balanced vectors
    const std::int64_t l1_budget = (r.value.num * 2 * n) / r.value.den;
    return l1_budget / 2;
}

}  // namespace

// --- information sets -------------------------------------------------------

InformationSet InformationSet::explicit_set(std::vector<ScoreVector> states) {
    if (states.empty()) throw StructuralError("information set must be non-empty");
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    InformationSet s;
    s.explicit_states = std::move(states);
    return s;
}

InformationSet InformationSet::ball_set(Metric metric, ScoreVector center, Radius radius) {
    InformationSet s;
    s.ball = BallSpec{std::move(metric), std::move(center), radius};
    return s;
}

std::vector<ScoreVector> InformationSet::materialize(std::int64_t cap) const {
    if (explicit_states) return *explicit_states;
    auto states = ordvote::ball(ball->metric, ball->center, ball->radius, false, cap);
    if (states.empty()) throw StructuralError("materialized ball is empty");
    if (!std::binary_search(states.begin(), states.end(), ball->center))
        throw StructuralError("materialized ball misses its center");
    return states;
}

std::vector<std::vector<ScoreVector>> InformationStructure::materialize(
    std::int64_t cap) const {
    if (levels.empty()) throw StructuralError("information structure needs k >= 1 levels");
    std::vector<std::vector<ScoreVector>> out;
    out.reserve(levels.size());
    for (const auto& level : levels) out.push_back(level.materialize(cap));
    for (size_t j = 0; j + 1 < out.size(); ++j) {
        if (!std::includes(out[j + 1].begin(), out[j + 1].end(), out[j].begin(),
                           out[j].end()))
            throw StructuralError("information sets are not nested at level " +
                                  std::to_string(j + 1));
    }
    return out;
}

// --- pivot graphs -----------------------------------------------------------

PivotGraph::PivotGraph(int m_, std::vector<std::pair<CandidateId, CandidateId>> e)
    : m(m_), edges(std::move(e)) {
    for (auto& [a, b] : edges) {
        if (a == b) throw StructuralError("pivot graph has a self-loop");
        if (a > b) std::swap(a, b);
        if (a < 0 || b >= m) throw StructuralError("pivot graph edge out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

PivotGraph PivotGraph::complete(int m) {
    std::vector<std::pair<CandidateId, CandidateId>> e;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) e.emplace_back(a, b);
    return PivotGraph(m, std::move(e));
}

PivotGraph PivotGraph::star(int m, CandidateId center,
                            const std::vector<CandidateId>& leaves) {
    std::vector<std::pair<CandidateId, CandidateId>> e;
    for (CandidateId leaf : leaves)
        if (leaf != center) e.emplace_back(center, leaf);
    return PivotGraph(m, std::move(e));
}

bool PivotGraph::has_edge(CandidateId a, CandidateId b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

bool PivotGraph::subgraph_of(const PivotGraph& g) const {
    return std::includes(g.edges.begin(), g.edges.end(), edges.begin(), edges.end());
}

std::vector<CandidateId> PivotGraph::active_vertices() const {
    std::vector<char> seen(m, 0);
    for (const auto& [a, b] : edges) seen[a] = seen[b] = 1;
    std::vector<CandidateId> out;
    for (int c = 0; c < m; ++c)
        if (seen[c]) out.push_back(c);
    return out;
}

PivotGraph PivotGraph::merged_with(const PivotGraph& g) const {
    if (m != g.m) throw StructuralError("merging pivot graphs of different m");
    auto e = edges;
    e.insert(e.end(), g.edges.begin(), g.edges.end());
    return PivotGraph(m, std::move(e));
}

void PivotGraphStructure::check_nesting() const {
    for (const auto& level : levels)
        if (level.m != m) throw StructuralError("pivot graph m mismatch in structure");
    for (size_t j = 0; j + 1 < levels.size(); ++j)
        if (!levels[j].subgraph_of(levels[j + 1]))
            throw StructuralError("pivot graphs are not nested at level " +
                                  std::to_string(j + 1));
}

// --- contexts and models ------------------------------------------------------

VoterContext VoterContext::from_poll(const ScoreVector& poll, const Ballot& own,
                                     const PreferenceOrder& prefs, const VotingRule& rule) {
    if (poll.size() != own.size()) throw StructuralError("poll and ballot lengths differ");
    std::vector<int> rest = poll.scores;
    for (int c = 0; c < poll.size(); ++c) {
        rest[c] -= own[c];
        if (rest[c] < 0)
            throw StructuralError("own ballot exceeds poll at candidate " + std::to_string(c));
    }
    return VoterContext{ScoreVector(std::move(rest)), own, prefs, rule};
}

EpistemicModel EpistemicModel::distance_based(Metric metric, std::vector<Radius> radii) {
    if (radii.empty()) throw ConfigError("distance model needs at least one radius");
    for (size_t j = 0; j + 1 < radii.size(); ++j)
        if (radii[j + 1].value < radii[j].value)
            throw ConfigError("radii must be non-decreasing");
    EpistemicModel m;
    m.kind = ModelKind::DistanceBased;
    m.metric = std::move(metric);
    m.radii = std::move(radii);
    return m;
}

EpistemicModel EpistemicModel::all_pairs() {
    EpistemicModel m;
    m.kind = ModelKind::AllPairs;
    return m;
}

EpistemicModel EpistemicModel::local_dominance(Metric metric, Radius r) {
    EpistemicModel m;
    m.kind = ModelKind::LocalDominance;
    m.metric = std::move(metric);
    m.radii = {r};
    return m;
}

EpistemicModel EpistemicModel::biased_local_dominance(Metric metric, Radius r1, Radius r2) {
    if (!(r1.value < r2.value)) throw ConfigError("biased local dominance needs r1 < r2");
    EpistemicModel m;
    m.kind = ModelKind::BiasedLocalDominance;
    m.metric = std::move(metric);
    m.radii = {r1, r2};
    return m;
}

EpistemicModel EpistemicModel::top_star(int T) {
    if (T < 1) throw ConfigError("top-star needs T >= 1");
    EpistemicModel m;
    m.kind = ModelKind::TopStar;
    m.top_count = T;
    return m;
}

EpistemicModel EpistemicModel::leader_star() {
    EpistemicModel m;
    m.kind = ModelKind::LeaderStar;
    return m;
}

EpistemicModel EpistemicModel::full_information() {
    EpistemicModel m;
    m.kind = ModelKind::DistanceBased;
    m.metric = Metric::emd();
    m.radii = {Radius{Fraction(0), 0}};
    m.eval = EvalMode::SetOracle;
    return m;
}

bool EpistemicModel::concentric() const {
    if (!distance_family()) return false;
    for (size_t j = 0; j + 1 < radii.size(); ++j)
        if (!(radii[j].value < radii[j + 1].value)) return false;
    return true;
}

std::string EpistemicModel::name() const {
    switch (kind) {
        case ModelKind::DistanceBased: return "distance";
        case ModelKind::AllPairs: return "all-pairs";
        case ModelKind::LocalDominance: return "local-dominance";
        case ModelKind::BiasedLocalDominance: return "biased-local-dominance";
        case ModelKind::TopStar: return "top-star(" + std::to_string(top_count) + ")";
        case ModelKind::LeaderStar: return "leader-star";
    }
    return "?";
}

// --- pivot graph derivation -----------------------------------------------------

PivotGraph pivot_graph_of_states(const std::vector<ScoreVector>& states,
                                 const VotingRule& rule, std::int64_t cap) {
    const auto ballots = allowed_ballots(rule);
    if (static_cast<std::int64_t>(states.size()) * static_cast<std::int64_t>(ballots.size()) >
        cap)
        throw CapacityError("pivot graph enumeration exceeds cap of " + std::to_string(cap) +
                            " state-ballot pairs");
    const int m = rule.m;
    std::vector<char> adj(static_cast<size_t>(m) * m, 0);
    std::vector<CandidateId> winners;
    winners.reserve(ballots.size());
    for (const auto& s : states) {
        if (s.size() != m) throw StructuralError("state length differs from rule m");
        winners.clear();
        for (const auto& a : ballots) {
            const CandidateId w = winner_plus(s, a);
            if (std::find(winners.begin(), winners.end(), w) == winners.end())
                winners.push_back(w);
        }
        for (size_t i = 0; i < winners.size(); ++i)
            for (size_t j = i + 1; j < winners.size(); ++j) {
                const int a = std::min(winners[i], winners[j]);
                const int b = std::max(winners[i], winners[j]);
                adj[static_cast<size_t>(a) * m + b] = 1;
            }
    }
    std::vector<std::pair<CandidateId, CandidateId>> edges;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (adj[static_cast<size_t>(a) * m + b]) edges.emplace_back(a, b);
    return PivotGraph(m, std::move(edges));
}

PivotGraph pivot_graph_with_witnesses(
    const std::vector<ScoreVector>& states, const VotingRule& rule,
    std::vector<std::pair<std::pair<CandidateId, CandidateId>, EdgeWitness>>& witnesses) {
    const auto ballots = allowed_ballots(rule);
    const int m = rule.m;
    std::map<std::pair<CandidateId, CandidateId>, EdgeWitness> found;
    for (const auto& s : states) {
        std::vector<std::pair<CandidateId, const Ballot*>> winners;
        for (const auto& a : ballots) {
            const CandidateId w = winner_plus(s, a);
            bool fresh = true;
            for (auto& [w2, b2] : winners)
                if (w2 == w) fresh = false;
            if (fresh) winners.emplace_back(w, &a);
        }
        for (size_t i = 0; i < winners.size(); ++i)
            for (size_t j = i + 1; j < winners.size(); ++j) {
                auto key = std::minmax(winners[i].first, winners[j].first);
                std::pair<CandidateId, CandidateId> e{key.first, key.second};
                if (!found.count(e)) {
                    const bool in_order = winners[i].first < winners[j].first;
                    found.emplace(e, EdgeWitness{s,
                                                 in_order ? *winners[i].second
                                                          : *winners[j].second,
                                                 in_order ? *winners[j].second
                                                          : *winners[i].second});
                }
            }
    }
    std::vector<std::pair<CandidateId, CandidateId>> edges;
    for (auto& [e, w] : found) {
        edges.push_back(e);
        witnesses.emplace_back(e, w);
    }
    return PivotGraph(m, std::move(edges));
}

// --- constructive EMD witness ----------------------------------------------------

std::optional<ScoreVector> emd_witness_within(const ScoreVector& center,
                                              std::int64_t budget, CandidateId c1,
                                              const Ballot& a1, CandidateId c2,
                                              const Ballot& a2) {
    const int m = center.size();
    if (c1 == c2) throw StructuralError("witness targets must differ");
    const std::int64_t total = center.total;
    const int B = static_cast<int>(std::min<std::int64_t>(budget, total));
    for (int k1 = std::max(0, center[c1] - B); k1 <= center[c1] + B; ++k1) {
        // winner constraints of (c1, a1): t(x) <= k1 + a1(c1) - a1(x) - [x < c1]
        for (int k2 = std::max(0, center[c2] - B); k2 <= center[c2] + B; ++k2) {
            const std::int64_t base_cost = std::max(0, k1 - center[c1]) +
                                           std::max(0, k2 - center[c2]);
            if (base_cost > B) continue;
            if (k2 > k1 + a1[c1] - a1[c2] - (c2 < c1 ? 1 : 0)) continue;
            if (k1 > k2 + a2[c2] - a2[c1] - (c1 < c2 ? 1 : 0)) continue;
            const std::int64_t fill = total - k1 - k2;
            if (fill < 0) continue;
            bool feasible = true;
            std::int64_t sum_base = 0, headroom = 0;
            std::vector<int> cap(m, 0), base(m, 0);
            for (int x = 0; x < m && feasible; ++x) {
                if (x == c1 || x == c2) continue;
                const int u = std::min(k1 + a1[c1] - a1[x] - (x < c1 ? 1 : 0),
                                       k2 + a2[c2] - a2[x] - (x < c2 ? 1 : 0));
                if (u < 0) {
                    feasible = false;
                    break;
                }
                cap[x] = u;
                base[x] = std::min(center[x], u);
                sum_base += base[x];
                headroom += u - base[x];
            }
            if (!feasible) continue;
            std::int64_t extra = 0;
            if (sum_base < fill) {
                extra = fill - sum_base;
                if (extra > headroom) continue;
            }
            if (base_cost + extra > B) continue;
            // build the witness deterministically
            std::vector<int> t(m, 0);
            t[c1] = k1;
            t[c2] = k2;
            for (int x = 0; x < m; ++x)
                if (x != c1 && x != c2) t[x] = base[x];
            if (sum_base > fill) {
                std::int64_t cut = sum_base - fill;
                for (int x = m - 1; x >= 0 && cut > 0; --x) {
                    if (x == c1 || x == c2) continue;
                    const int take = static_cast<int>(std::min<std::int64_t>(t[x], cut));
                    t[x] -= take;
                    cut -= take;
                }
            } else if (extra > 0) {
                std::int64_t put = extra;
                for (int x = 0; x < m && put > 0; ++x) {
                    if (x == c1 || x == c2) continue;
                    const int room = cap[x] - t[x];
                    const int give = static_cast<int>(std::min<std::int64_t>(room, put));
                    t[x] += give;
                    put -= give;
                }
            }
            ScoreVector witness(std::move(t));
            assert(witness.total == total);
            assert(winner_plus(witness, a1) == c1);
            assert(winner_plus(witness, a2) == c2);
            return witness;
        }
    }
    return std::nullopt;
}

namespace {

constexpr std::int64_t kTrialEnumerationCap = 2'000'000;

bool use_emd_fast_path(const InformationSet& set) {
    return set.ball.has_value() && set.ball->metric.kind == MetricKind::EMD;
}

PivotGraph emd_ball_pivot_graph(const InformationSet::BallSpec& spec,
                                const VotingRule& rule) {
    const auto ballots = allowed_ballots(rule);
    if (ballots.size() > 64)
        throw CapacityError("constructive pivot graph limited to 64 ballots, rule has " +
                            std::to_string(ballots.size()));
    const std::int64_t B = emd_relocation_budget(spec.metric, spec.center, spec.radius);
    const int m = rule.m;
    std::vector<std::pair<CandidateId, CandidateId>> edges;
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            bool hit = false;
            if (rule.kind == RuleKind::Plurality) {
                // the candidate's own unit ballot is the easiest witness
                std::vector<int> va(m, 0), vb(m, 0);
                va[a] = 1;
                vb[b] = 1;
                hit = emd_witness_within(spec.center, B, a, Ballot(va), b, Ballot(vb))
                          .has_value();
            } else {
                for (size_t i = 0; i < ballots.size() && !hit; ++i)
                    for (size_t j = 0; j < ballots.size() && !hit; ++j)
                        hit = emd_witness_within(spec.center, B, a, ballots[i], b,
                                                 ballots[j])
                                  .has_value();
            }
            if (hit) edges.emplace_back(a, b);
        }
    }
    return PivotGraph(m, std::move(edges));
}

}  // namespace

PivotGraph pivot_graph(const InformationSet& set, const VotingRule& rule,
                       std::int64_t cap) {
    if (use_emd_fast_path(set)) {
        const std::int64_t B =
            emd_relocation_budget(set.ball->metric, set.ball->center, set.ball->radius);
        if (B >= 18) return emd_ball_pivot_graph(*set.ball, rule);
        try {
            return pivot_graph_of_states(set.materialize(std::min(cap, kTrialEnumerationCap)),
                                         rule, cap);
        } catch (const CapacityError&) {
            return emd_ball_pivot_graph(*set.ball, rule);
        }
    }
    return pivot_graph_of_states(set.materialize(cap), rule, cap);
}

PivotGraphStructure derive_structure(const EpistemicModel& model, const VoterContext& ctx) {
    const int m = ctx.rule.m;
    PivotGraphStructure out;
    out.m = m;
    switch (model.kind) {
        case ModelKind::DistanceBased:
        case ModelKind::LocalDominance: {
            for (const Radius& r : model.radii)
                out.levels.push_back(pivot_graph(
                    InformationSet::ball_set(model.metric, ctx.state, r), ctx.rule,
                    model.ball_cap));
            break;
        }
        case ModelKind::AllPairs:
            out.levels.push_back(PivotGraph::complete(m));
            break;
        case ModelKind::BiasedLocalDominance: {
            const PivotGraph h1 = pivot_graph(
                InformationSet::ball_set(model.metric, ctx.state, model.radii[0]), ctx.rule,
                model.ball_cap);
            const PivotGraph h2_raw = pivot_graph(
                InformationSet::ball_set(model.metric, ctx.state, model.radii[1]), ctx.rule,
                model.ball_cap);
            // keep only ties between the standing vote's candidate and
            // candidates she likes less
            CandidateId cur = -1;
            if (!ctx.current.is_abstain()) {
                for (int c = 0; c < m; ++c)
                    if (ctx.current[c] == 1) {
                        if (cur != -1) {
                            cur = -1;
                            break;
                        }
                        cur = c;
                    }
            }
            std::vector<std::pair<CandidateId, CandidateId>> kept;
            if (cur != -1) {
                for (const auto& [a, b] : h2_raw.edges) {
                    if (a == cur && ctx.prefs.prefers(cur, b)) kept.emplace_back(a, b);
                    else if (b == cur && ctx.prefs.prefers(cur, a)) kept.emplace_back(a, b);
                }
            }
            out.levels.push_back(h1);
            out.levels.push_back(h1.merged_with(PivotGraph(m, std::move(kept))));
            break;
        }
        case ModelKind::TopStar: {
            if (model.top_count > m) throw ConfigError("top-star T exceeds m");
            const auto order = score_order(ctx.state);
            std::vector<CandidateId> leaders(order.begin(), order.begin() + model.top_count);
            CandidateId fav = leaders[0];
            for (CandidateId c : leaders)
                if (ctx.prefs.prefers(c, fav)) fav = c;
            for (CandidateId c : leaders)
                if (c != fav && ctx.prefs.indifferent(c, fav))
                    throw AmbiguityError("no unique favorite among the top " +
                                         std::to_string(model.top_count));
            std::vector<CandidateId> leaves;
            for (CandidateId c : leaders)
                if (c != fav) leaves.push_back(c);
            out.levels.push_back(PivotGraph::star(m, fav, leaves));
            break;
        }
        case ModelKind::LeaderStar: {
            const auto order = score_order(ctx.state);
            const CandidateId c1 = order[0], c2 = order[1];
            out.levels.push_back(PivotGraph(m, {{c1, c2}}));
            std::vector<CandidateId> all;
            for (int c = 0; c < m; ++c)
                if (c != c1) all.push_back(c);
            out.levels.push_back(PivotGraph::star(m, c1, all));
            break;
        }
    }
    out.check_nesting();
    return out;
}

std::optional<InformationStructure> info_structure(const EpistemicModel& model,
                                                   const VoterContext& ctx) {
    if (!model.distance_family()) return std::nullopt;
    InformationStructure s;
    for (const Radius& r : model.radii)
        s.levels.push_back(InformationSet::ball_set(model.metric, ctx.state, r));
    return s;
}

// --- sharp pivot property ---------------------------------------------------------

namespace {

void spp_check_level_states(const std::vector<ScoreVector>& states, const PivotGraph& graph,
                            const std::vector<Ballot>& ballots, int level_1based,
                            int max_violations, SppReport& report) {
    // winner matrix when it fits, lazy winners otherwise
    const size_t cells = states.size() * ballots.size();
    std::vector<CandidateId> wins;
    const bool cached = cells <= 8'000'000;
    if (cached) {
        wins.reserve(cells);
        for (const auto& s : states)
            for (const auto& a : ballots) wins.push_back(winner_plus(s, a));
    }
    auto win_at = [&](size_t si, size_t bi) {
        return cached ? wins[si * ballots.size() + bi]
                      : winner_plus(states[si], ballots[bi]);
    };
    for (const auto& [ea, eb] : graph.edges) {
        for (int orient = 0; orient < 2; ++orient) {
            const CandidateId cw = orient == 0 ? ea : eb;
            const CandidateId cl = orient == 0 ? eb : ea;
            for (size_t i = 0; i < ballots.size(); ++i) {
                for (size_t j = 0; j < ballots.size(); ++j) {
                    const int gap_i = ballots[i][cw] - ballots[i][cl];
                    const int gap_j = ballots[j][cw] - ballots[j][cl];
                    if (gap_i <= gap_j) continue;
                    bool witnessed = false;
                    for (size_t si = 0; si < states.size() && !witnessed; ++si)
                        witnessed = win_at(si, i) == cw && win_at(si, j) == cl;
                    if (!witnessed) {
                        report.holds = false;
                        if (static_cast<int>(report.violations.size()) < max_violations)
                            report.violations.push_back(
                                {level_1based, cw, cl, ballots[i], ballots[j]});
                        else
                            return;
                    }
                }
            }
        }
    }
}

void spp_check_level_ball(const InformationSet::BallSpec& spec, const PivotGraph& graph,
                          const std::vector<Ballot>& ballots, int level_1based,
                          int max_violations, SppReport& report) {
    const std::int64_t B = emd_relocation_budget(spec.metric, spec.center, spec.radius);
    for (const auto& [ea, eb] : graph.edges) {
        for (int orient = 0; orient < 2; ++orient) {
            const CandidateId cw = orient == 0 ? ea : eb;
            const CandidateId cl = orient == 0 ? eb : ea;
            for (size_t i = 0; i < ballots.size(); ++i) {
                for (size_t j = 0; j < ballots.size(); ++j) {
                    const int gap_i = ballots[i][cw] - ballots[i][cl];
                    const int gap_j = ballots[j][cw] - ballots[j][cl];
                    if (gap_i <= gap_j) continue;
                    if (!emd_witness_within(spec.center, B, cw, ballots[i], cl, ballots[j])) {
                        report.holds = false;
                        if (static_cast<int>(report.violations.size()) < max_violations)
                            report.violations.push_back(
                                {level_1based, cw, cl, ballots[i], ballots[j]});
                        else
                            return;
                    }
                }
            }
        }
    }
}

}  // namespace

SppReport spp_check(const InformationStructure& structure, const VotingRule& rule,
                    std::int64_t cap, int max_violations) {
    const auto ballots = allowed_ballots(rule);
    if (ballots.size() > 64)
        throw CapacityError("SPP check limited to 64 ballots, rule has " +
                            std::to_string(ballots.size()));
    SppReport report;
    for (int j = 0; j < structure.depth(); ++j) {
        const auto& level = structure.levels[j];
        if (use_emd_fast_path(level)) {
            const std::int64_t B =
                emd_relocation_budget(level.ball->metric, level.ball->center,
                                      level.ball->radius);
            if (B >= 18) {
                const PivotGraph g = emd_ball_pivot_graph(*level.ball, rule);
                spp_check_level_ball(*level.ball, g, ballots, j + 1, max_violations,
                                     report);
                continue;
            }
            try {
                const auto states = level.materialize(std::min(cap, kTrialEnumerationCap));
                const PivotGraph g = pivot_graph_of_states(states, rule, cap);
                spp_check_level_states(states, g, ballots, j + 1, max_violations, report);
            } catch (const CapacityError&) {
                const PivotGraph g = emd_ball_pivot_graph(*level.ball, rule);
                spp_check_level_ball(*level.ball, g, ballots, j + 1, max_violations,
                                     report);
            }
            continue;
        }
        const auto states = level.materialize(cap);
        const PivotGraph g = pivot_graph_of_states(states, rule, cap);
        spp_check_level_states(states, g, ballots, j + 1, max_violations, report);
    }
    return report;
}

// --- topology predicates -------------------------------------------------------------

bool is_cliqued(const PivotGraphStructure& structure) {
    for (const auto& level : structure.levels) {
        const auto active = level.active_vertices();
        for (size_t i = 0; i < active.size(); ++i)
            for (size_t j = i + 1; j < active.size(); ++j)
                if (!level.has_edge(active[i], active[j])) return false;
    }
    return true;
}

namespace {

bool upward_closed_under(const PivotGraphStructure& structure,
                         const std::vector<int>& pos) {
    const int m = structure.m;
    for (const auto& level : structure.levels) {
        std::vector<char> adj(static_cast<size_t>(m) * m, 0);
        for (const auto& [a, b] : level.edges)
            adj[static_cast<size_t>(a) * m + b] = adj[static_cast<size_t>(b) * m + a] = 1;
        for (const auto& [ea, eb] : level.edges) {
            for (int orient = 0; orient < 2; ++orient) {
                const CandidateId c = orient == 0 ? ea : eb;
                const CandidateId cp = orient == 0 ? eb : ea;
                for (CandidateId cq = 0; cq < m; ++cq) {
                    if (cq == c || cq == cp) continue;
                    if (pos[cq] < pos[cp] && !adj[static_cast<size_t>(c) * m + cq])
                        return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

UpwardClosedReport is_upward_closed(const PivotGraphStructure& structure,
                                    const std::optional<std::vector<CandidateId>>& order) {
    const int m = structure.m;
    if (order) {
        if (static_cast<int>(order->size()) != m)
            throw StructuralError("candidate order length mismatch");
        std::vector<int> pos(m, -1);
        for (int i = 0; i < m; ++i) pos[(*order)[i]] = i;
        if (upward_closed_under(structure, pos)) return {true, order};
        return {false, std::nullopt};
    }
    if (m > 6)
        throw CapacityError("order search capped at m <= 6; pass an explicit order");
    std::vector<CandidateId> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<int> pos(m);
        for (int i = 0; i < m; ++i) pos[perm[i]] = i;
        if (upward_closed_under(structure, pos)) return {true, perm};
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {false, std::nullopt};
}

std::vector<CandidateId> score_order(const ScoreVector& s) {
    std::vector<CandidateId> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](CandidateId a, CandidateId b) { return s[a] > s[b]; });
    return order;
}

// --- large-population scan -------------------------------------------------------------

ScoreVector round_distribution(const std::vector<Fraction>& p, int n) {
    Fraction sum(0);
    for (const auto& f : p) {
        if (f < Fraction(0)) throw DomainError("distribution entries must be non-negative");
        sum = sum + f;
    }
    if (!(sum == Fraction(1))) throw DomainError("distribution must sum to 1");
    const int m = static_cast<int>(p.size());
    std::vector<int> scores(m);
    std::vector<std::pair<Fraction, int>> remainders;
    int assigned = 0;
    for (int c = 0; c < m; ++c) {
        const std::int64_t scaled_num = p[c].num * n;
        scores[c] = static_cast<int>(scaled_num / p[c].den);
        assigned += scores[c];
        remainders.push_back({Fraction(scaled_num % p[c].den, p[c].den), c});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return b.first < a.first; });
    for (int i = 0; i < n - assigned; ++i) scores[remainders[i % m].second] += 1;
    return ScoreVector(std::move(scores));
}

std::vector<SppScanEntry> spp_scan(const std::vector<Fraction>& p,
                                   const std::vector<int>& n_list, const Metric& metric,
                                   const std::vector<Fraction>& radii,
                                   const VotingRule& rule, std::int64_t cap) {
    std::vector<SppScanEntry> out;
    for (int n : n_list) {
        SppScanEntry entry;
        entry.n = n;
        try {
            const ScoreVector center = round_distribution(p, n);
            InformationStructure structure;
            for (const Fraction& f : radii)
                structure.levels.push_back(InformationSet::ball_set(
                    metric, center, Radius::from_fraction(f, n)));
            const SppReport r = spp_check(structure, rule, cap);
            entry.checked = true;
            entry.holds = r.holds;
            entry.violations = r.violations;
        } catch (const CapacityError& e) {
            entry.checked = false;
            entry.message = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

// --- serialization ---------------------------------------------------------------------

namespace {

std::string dot_id(const std::string& name) {
    std::string out;
    for (char ch : name)
        out += (std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
    return out;
}

}  // namespace

std::string to_dot(const PivotGraphStructure& structure,
                   const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != structure.m)
        throw StructuralError("need one name per candidate");
    std::ostringstream os;
    os << "graph pivot_structure {\n";
    for (int j = 0; j < structure.depth(); ++j) {
        os << "  subgraph cluster_" << (j + 1) << " {\n";
        os << "    label=\"H" << (j + 1) << "\";\n";
        for (int c = 0; c < structure.m; ++c)
            os << "    l" << (j + 1) << "_" << dot_id(names[c]) << " [label=\"" << names[c]
               << "\"];\n";
        for (const auto& [a, b] : structure.levels[j].edges)
            os << "    l" << (j + 1) << "_" << dot_id(names[a]) << " -- l" << (j + 1) << "_"
               << dot_id(names[b]) << ";\n";
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_record(const PivotGraphStructure& structure,
                      const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != structure.m)
        throw StructuralError("need one name per candidate");
    std::ostringstream os;
    os << "pivot-structure m=" << structure.m << " levels=" << structure.depth() << "\n";
    for (int j = 0; j < structure.depth(); ++j) {
        os << "level " << (j + 1) << ":";
        for (const auto& [a, b] : structure.levels[j].edges)
            os << " " << names[a] << "-" << names[b];
        os << "\n";
    }
    return os.str();
}

}  // namespace ordvote
