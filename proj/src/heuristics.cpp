#include "ordvote/heuristics.hpp"

#include <algorithm>
#include <numeric>

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

Ballot unit_ballot(int m, CandidateId c) {
    std::vector<int> v(m, 0);
    v[c] = 1;
    return Ballot(std::move(v));
}

void require_rule(const HeuristicKind& kind, const VoterContext& ctx) {
    const RuleKind rk = ctx.rule.kind;
    switch (kind.id) {
        case HeuristicId::NotLast:
        case HeuristicId::LocalDominance:
        case HeuristicId::TruthBiasLD:
        case HeuristicId::LazyBiasLD:
            if (rk != RuleKind::Plurality)
                throw ConfigError(kind.name() + " is a plurality heuristic");
            break;
        case HeuristicId::LeaderRule:
            if (rk != RuleKind::Approval)
                throw ConfigError("the leader rule needs approval voting");
            break;
        case HeuristicId::TPragmatist:
        case HeuristicId::TStar:
            if (kind.T < 1 || kind.T > ctx.rule.m)
                throw ConfigError("pragmatist T must satisfy 1 <= T <= m");
            break;
    }
    if (kind.id == HeuristicId::TruthBiasLD && ctx.prefs.bias != Bias::Truth)
        throw ConfigError("truth-bias heuristic expects truth-biased preferences");
    if (kind.id == HeuristicId::LazyBiasLD && ctx.prefs.bias != Bias::Lazy)
        throw ConfigError("lazy-bias heuristic expects lazy-biased preferences");
}

// candidates whose unit ballots set-dominate the current one on the ball
std::vector<CandidateId> ld_dominating_candidates(const Metric& metric, const Radius& r,
                                                  const VoterContext& ctx) {
    const auto set = InformationSet::ball_set(metric, ctx.state, r);
    std::vector<CandidateId> d;
    for (int c = 0; c < ctx.rule.m; ++c) {
        const Ballot cand = unit_ballot(ctx.rule.m, c);
        if (cand == ctx.current) continue;
        if (sdom_oracle(cand, ctx.current, ctx.prefs, set, ctx.rule) ==
            SDomResult::Dominates)
            d.push_back(c);
    }
    return d;
}

std::vector<Ballot> ld_move(const Metric& metric, const Radius& r,
                            const VoterContext& ctx) {
    const auto d = ld_dominating_candidates(metric, r, ctx);
    if (d.empty()) return {};
    CandidateId best = d[0];
    for (CandidateId c : d)
        if (ctx.prefs.prefers(c, best)) best = c;
    for (CandidateId c : d)
        if (c != best && ctx.prefs.indifferent(c, best))
            throw AmbiguityError("no unique most-preferred dominating candidate");
    return {unit_ballot(ctx.rule.m, best)};
}

// does some reachable state make the current ballot strictly better than `fallback`?
bool keep_beats_fallback_somewhere(const Metric& metric, const Radius& r,
                                   const VoterContext& ctx, const Ballot& fallback) {
    const auto states =
        ball(metric, ctx.state, r, false, 10'000'000);
    for (const auto& s : states)
        if (ctx.prefs.cmp(winner_plus(s, ctx.current), winner_plus(s, fallback)) > 0)
            return true;
    return false;
}

// total order used to re-rank a ballot: score desc, then preference, then index
std::vector<CandidateId> ballot_ranking(const Ballot& a, const PreferenceOrder& prefs) {
    std::vector<CandidateId> order(a.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](CandidateId x, CandidateId y) {
        if (a[x] != a[y]) return a[x] > a[y];
        return prefs.ranks[x] < prefs.ranks[y];
    });
    return order;
}

Ballot from_ranking(const VotingRule& rule, const std::vector<CandidateId>& ranking) {
    const auto slots = rule.slot_scores();
    std::vector<int> v(rule.m, 0);
    for (int pos = 0; pos < rule.m; ++pos) v[ranking[pos]] = slots[pos];
    return Ballot(std::move(v));
}

CandidateId favorite_among(const std::vector<CandidateId>& pool,
                           const PreferenceOrder& prefs) {
    CandidateId fav = pool[0];
    for (CandidateId c : pool)
        if (prefs.prefers(c, fav)) fav = c;
    for (CandidateId c : pool)
        if (c != fav && prefs.indifferent(c, fav))
            throw AmbiguityError("no unique favorite in the leader pool");
    return fav;
}

std::vector<Ballot> pragmatist_move(const HeuristicKind& kind, const VoterContext& ctx,
                                    bool demote_rest) {
    const auto order = score_order(ctx.state);
    const std::vector<CandidateId> leaders(order.begin(), order.begin() + kind.T);
    const CandidateId fav = favorite_among(leaders, ctx.prefs);
    Ballot out;
    if (ctx.rule.kind == RuleKind::Approval) {
        std::vector<int> v = ctx.current.scores;
        v[fav] = 1;
        if (demote_rest)
            for (CandidateId c : leaders)
                if (c != fav) v[c] = 0;
        out = Ballot(std::move(v));
    } else {
        const auto base = ballot_ranking(ctx.current, ctx.prefs);
        std::vector<CandidateId> ranking;
        ranking.push_back(fav);
        std::vector<CandidateId> demoted;
        for (CandidateId c : base) {
            if (c == fav) continue;
            const bool is_leader =
                std::find(leaders.begin(), leaders.end(), c) != leaders.end();
            if (demote_rest && is_leader) demoted.push_back(c);
            else ranking.push_back(c);
        }
        ranking.insert(ranking.end(), demoted.begin(), demoted.end());
        out = from_ranking(ctx.rule, ranking);
    }
    if (out == ctx.current) return {};
    return {out};
}

std::vector<Ballot> leader_rule_move(const VoterContext& ctx) {
    const auto order = score_order(ctx.state);
    const CandidateId c1 = order[0], c2 = order[1];
    std::vector<int> v(ctx.rule.m, 0);
    for (int c = 0; c < ctx.rule.m; ++c)
        if (ctx.prefs.prefers(c, c1)) v[c] = 1;
    if (ctx.prefs.prefers(c1, c2)) v[c1] = 1;
    Ballot out(std::move(v));
    if (out == ctx.current) return {};
    return {out};
}

}  // namespace

std::string HeuristicKind::name() const {
    switch (id) {
        case HeuristicId::NotLast: return "not-last";
        case HeuristicId::LocalDominance: return "local-dominance";
        case HeuristicId::TruthBiasLD: return "truth-bias-ld";
        case HeuristicId::LazyBiasLD: return "lazy-bias-ld";
        case HeuristicId::TPragmatist: return "t-pragmatist(" + std::to_string(T) + ")";
        case HeuristicId::TStar: return "t-star(" + std::to_string(T) + ")";
        case HeuristicId::LeaderRule: return "leader-rule";
    }
    return "?";
}

std::vector<Ballot> evaluate_heuristic(const HeuristicKind& kind, const VoterContext& ctx) {
    require_rule(kind, ctx);
    switch (kind.id) {
        case HeuristicId::NotLast: {
            const CandidateId last = ctx.prefs.bottom();
            if (ctx.current != unit_ballot(ctx.rule.m, last)) return {};
            std::vector<Ballot> moves;
            for (int c = 0; c < ctx.rule.m; ++c)
                if (c != last) moves.push_back(unit_ballot(ctx.rule.m, c));
            return moves;
        }
        case HeuristicId::LocalDominance:
            return ld_move(kind.metric, *kind.r1, ctx);
        case HeuristicId::TruthBiasLD: {
            auto move = ld_move(kind.metric, *kind.r1, ctx);
            if (!move.empty()) return move;
            const Ballot truthful = truthful_ballot(ctx.rule, ctx.prefs);
            if (keep_beats_fallback_somewhere(kind.metric, *kind.r2, ctx, truthful))
                return {};
            if (truthful == ctx.current) return {};
            return {truthful};
        }
        case HeuristicId::LazyBiasLD: {
            auto move = ld_move(kind.metric, *kind.r1, ctx);
            if (!move.empty()) return move;
            const Ballot abstain(std::vector<int>(ctx.rule.m, 0));
            if (keep_beats_fallback_somewhere(kind.metric, *kind.r2, ctx, abstain))
                return {};
            if (abstain == ctx.current) return {};
            return {abstain};
        }
        case HeuristicId::TPragmatist:
            return pragmatist_move(kind, ctx, false);
        case HeuristicId::TStar:
            return pragmatist_move(kind, ctx, true);
        case HeuristicId::LeaderRule:
            return leader_rule_move(ctx);
    }
    throw ConfigError("unknown heuristic");
}

EpistemicModel heuristic_model(const HeuristicKind& kind) {
    switch (kind.id) {
        case HeuristicId::NotLast:
            return EpistemicModel::all_pairs();
        case HeuristicId::LocalDominance:
            return EpistemicModel::local_dominance(kind.metric, *kind.r1);
        case HeuristicId::TruthBiasLD:
        case HeuristicId::LazyBiasLD:
            return EpistemicModel::biased_local_dominance(kind.metric, *kind.r1, *kind.r2);
        case HeuristicId::TPragmatist:
        case HeuristicId::TStar:
            return EpistemicModel::top_star(kind.T);
        case HeuristicId::LeaderRule:
            return EpistemicModel::leader_star();
    }
    throw ConfigError("unknown heuristic");
}

PivotGraphStructure build_model(const HeuristicKind& kind, const VoterContext& ctx) {
    require_rule(kind, ctx);
    return derive_structure(heuristic_model(kind), ctx);
}

JustificationReport check_justification(const HeuristicKind& kind,
                                        const std::vector<VoterContext>& contexts,
                                        const JustificationOptions& opts) {
    JustificationReport report;
    const EpistemicModel model = heuristic_model(kind);
    for (const auto& ctx : contexts) {
        if (opts.require_spp && model.distance_family()) {
            const auto info = info_structure(model, ctx);
            if (!spp_check(*info, ctx.rule).holds) {
                ++report.contexts_skipped;
                continue;
            }
        }
        auto h = evaluate_heuristic(kind, ctx);
        auto u = uod_set(ctx, model);
        std::sort(h.begin(), h.end());
        std::sort(u.begin(), u.end());
        const bool ok_i = h.empty() == u.empty();
        const bool ok_ii = std::includes(u.begin(), u.end(), h.begin(), h.end());
        const bool ok_strong = h == u;
        if (!ok_i) report.condition_i = false;
        if (!ok_ii) report.condition_ii = false;
        if (!ok_strong) report.strong = false;
        if ((!ok_i || !ok_ii || !ok_strong) &&
            static_cast<int>(report.counterexamples.size()) < opts.max_counterexamples)
            report.counterexamples.push_back({ctx, h, u, !ok_i, !ok_ii, !ok_strong});
        ++report.contexts_checked;
    }
    return report;
}

}  // namespace ordvote
