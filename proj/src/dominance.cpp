#include "ordvote/dominance.hpp"

#include <algorithm>
#include <sstream>

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

int sign_of(int v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// does the bias prefer a_new's action over a_cur's among outcome-equivalent pairs?
bool bias_prefers(const PreferenceOrder& prefs, const VotingRule& rule, const Ballot& a_new,
                  const Ballot& a_cur) {
    switch (prefs.bias) {
        case Bias::None:
            return false;
        case Bias::Truth: {
            const Ballot q = truthful_ballot(rule, prefs);
            return a_new == q && a_cur != q;
        }
        case Bias::Lazy:
            return a_new.is_abstain() && !a_cur.is_abstain();
    }
    return false;
}

void validate_pair(const Ballot& a_new, const Ballot& a_cur, const PreferenceOrder& prefs,
                   const VotingRule& rule, int m) {
    if (a_new.size() != m || a_cur.size() != m)
        throw StructuralError("ballot length differs from structure m");
    const bool allow_abstain = prefs.bias == Bias::Lazy;
    if (!is_valid_ballot(rule, a_new, allow_abstain) ||
        !is_valid_ballot(rule, a_cur, allow_abstain))
        throw RuleViolationError("ballot outside the allowed set of " + rule.name());
}

}  // namespace

std::string DominanceVerdict::record() const {
    std::ostringstream os;
    os << "verdict dominates=" << (dominates ? "true" : "false");
    os << " level=" << (level ? std::to_string(*level) : std::string("-"));
    os << " bias=" << (via_bias ? "true" : "false") << "\n";
    for (size_t j = 0; j < trace.size(); ++j)
        os << "trace level=" << (j + 1) << " safe=" << trace[j].safe
           << " pivot=" << trace[j].pivot << " dom=" << trace[j].dom << "\n";
    return os.str();
}

DominanceVerdict od_check(const Ballot& a_new, const Ballot& a_cur,
                          const PreferenceOrder& prefs,
                          const PivotGraphStructure& structure, const VotingRule& rule) {
    const int m = structure.m;
    validate_pair(a_new, a_cur, prefs, rule, m);
    if (prefs.size() != m) throw StructuralError("preference length differs from m");

    std::vector<signed char> effect(static_cast<size_t>(m) * m, 0);
    for (int c = 0; c < m; ++c) {
        for (int cp = 0; cp < m; ++cp) {
            if (c == cp) continue;
            const int diff = a_new[c] + a_cur[cp] - a_cur[c] - a_new[cp];
            effect[static_cast<size_t>(c) * m + cp] =
                static_cast<signed char>(sign_of(diff * prefs.cmp(c, cp)));
        }
    }

    DominanceVerdict v;
    v.trace.reserve(structure.levels.size());
    bool all_effects_zero = true;
    for (size_t j = 0; j < structure.levels.size(); ++j) {
        int safe = 0, pivot = 0;
        bool first = true;
        for (const auto& [a, b] : structure.levels[j].edges) {
            const int e = effect[static_cast<size_t>(a) * m + b];
            if (e != 0) all_effects_zero = false;
            if (first) {
                safe = pivot = e;
                first = false;
            } else {
                safe = std::min(safe, e);
                pivot = std::max(pivot, e);
            }
        }
        const int dom = (pivot + safe >= 1) ? 1 : 0;
        v.trace.push_back({safe, pivot, dom});
        if (dom == 1 && !v.dominates) {
            v.dominates = true;
            v.level = static_cast<int>(j + 1);
        }
    }
    if (!v.dominates && a_new != a_cur && all_effects_zero &&
        bias_prefers(prefs, rule, a_new, a_cur)) {
        v.dominates = true;
        v.via_bias = true;
        v.level = 1;
    }
    return v;
}

SDomResult sdom_oracle(const Ballot& a_new, const Ballot& a_cur,
                       const PreferenceOrder& prefs, const InformationSet& set,
                       const VotingRule& rule, std::int64_t cap) {
    validate_pair(a_new, a_cur, prefs, rule, rule.m);
    const auto states = set.materialize(cap);
    bool any_gain = false, any_loss = false;
    for (const auto& s : states) {
        const int cmp = prefs.cmp(winner_plus(s, a_new), winner_plus(s, a_cur));
        if (cmp > 0) any_gain = true;
        else if (cmp < 0) any_loss = true;
        if (any_gain && any_loss) return SDomResult::Incomparable;
    }
    if (any_gain) return SDomResult::Dominates;
    if (any_loss) return SDomResult::DominatedBy;
    return SDomResult::Indifferent;
}

std::optional<int> od_oracle_level(const Ballot& a_new, const Ballot& a_cur,
                                   const PreferenceOrder& prefs,
                                   const InformationStructure& structure,
                                   const VotingRule& rule, std::int64_t cap) {
    bool all_indifferent = true;
    for (int j = 0; j < structure.depth(); ++j) {
        const SDomResult r = sdom_oracle(a_new, a_cur, prefs, structure.levels[j], rule, cap);
        if (r == SDomResult::Dominates) return j + 1;
        if (r != SDomResult::Indifferent) all_indifferent = false;
    }
    if (all_indifferent && a_new != a_cur && bias_prefers(prefs, rule, a_new, a_cur))
        return 1;
    return std::nullopt;
}

bool od_oracle(const Ballot& a_new, const Ballot& a_cur, const PreferenceOrder& prefs,
               const InformationStructure& structure, const VotingRule& rule,
               std::int64_t cap) {
    return od_oracle_level(a_new, a_cur, prefs, structure, rule, cap).has_value();
}

namespace {

std::vector<Ballot> action_space(const VoterContext& ctx) {
    return allowed_ballots(ctx.rule, ctx.prefs.bias == Bias::Lazy);
}

bool model_dominates(const VoterContext& ctx, const EpistemicModel& model,
                     const PivotGraphStructure* structure,
                     const InformationStructure* info, const Ballot& a_new,
                     const Ballot& a_cur) {
    if (model.eval == EvalMode::SetOracle)
        return od_oracle(a_new, a_cur, ctx.prefs, *info, ctx.rule, model.ball_cap);
    return od_check(a_new, a_cur, ctx.prefs, *structure, ctx.rule).dominates;
}

struct ModelView {
    std::optional<PivotGraphStructure> structure;
    std::optional<InformationStructure> info;
};

ModelView view_of(const VoterContext& ctx, const EpistemicModel& model) {
    ModelView v;
    if (model.eval == EvalMode::SetOracle) {
        if (model.kind == ModelKind::BiasedLocalDominance)
            throw ConfigError("biased local dominance has no set-oracle semantics");
        v.info = info_structure(model, ctx);
        if (!v.info)
            throw ConfigError("set-oracle evaluation needs a distance-based model");
    } else {
        v.structure = derive_structure(model, ctx);
    }
    return v;
}

}  // namespace

std::vector<Ballot> od_set(const VoterContext& ctx, const EpistemicModel& model) {
    const ModelView view = view_of(ctx, model);
    std::vector<Ballot> out;
    for (const Ballot& a : action_space(ctx)) {
        if (a == ctx.current) continue;
        if (model_dominates(ctx, model, view.structure ? &*view.structure : nullptr,
                            view.info ? &*view.info : nullptr, a, ctx.current))
            out.push_back(a);
    }
    return out;
}

std::vector<Ballot> uod_set(const VoterContext& ctx, const EpistemicModel& model) {
    const ModelView view = view_of(ctx, model);
    const auto space = action_space(ctx);
    std::vector<Ballot> dominators;
    for (const Ballot& a : space) {
        if (a == ctx.current) continue;
        if (model_dominates(ctx, model, view.structure ? &*view.structure : nullptr,
                            view.info ? &*view.info : nullptr, a, ctx.current))
            dominators.push_back(a);
    }
    std::vector<Ballot> out;
    for (const Ballot& a : dominators) {
        bool dominated = false;
        for (const Ballot& b : space) {
            if (b == a) continue;
            if (model_dominates(ctx, model, view.structure ? &*view.structure : nullptr,
                                view.info ? &*view.info : nullptr, b, a)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(a);
    }
    return out;
}

ScoreVector profile_tally(const std::vector<Ballot>& profile, int m) {
    std::vector<int> tally(m, 0);
    for (const auto& b : profile) {
        if (b.size() != m) throw StructuralError("profile ballot length mismatch");
        for (int c = 0; c < m; ++c) tally[c] += b[c];
    }
    return ScoreVector(std::move(tally));
}

std::string EquilibriumReport::record() const {
    std::ostringstream os;
    os << "equilibrium " << (is_equilibrium ? "true" : "false") << "\n";
    for (const auto& d : deviations)
        os << "deviation voter=" << d.voter << " ballot=" << d.improving.str()
           << " level=" << d.level << "\n";
    return os.str();
}

EquilibriumReport is_od_equilibrium(const std::vector<Ballot>& profile,
                                    const std::vector<PreferenceOrder>& prefs_list,
                                    const std::vector<EpistemicModel>& models,
                                    const VotingRule& rule) {
    const int n = static_cast<int>(profile.size());
    if (static_cast<int>(prefs_list.size()) != n)
        throw StructuralError("one preference order per voter required");
    if (models.size() != 1 && static_cast<int>(models.size()) != n)
        throw StructuralError("provide one model or one per voter");
    const ScoreVector tally = profile_tally(profile, rule.m);
    EquilibriumReport report;
    for (int i = 0; i < n; ++i) {
        const EpistemicModel& model = models[models.size() == 1 ? 0 : i];
        const VoterContext ctx =
            VoterContext::from_poll(tally, profile[i], prefs_list[i], rule);
        const auto improving = od_set(ctx, model);
        if (!improving.empty()) {
            report.is_equilibrium = false;
            int level = 0;
            if (model.eval == EvalMode::SetOracle) {
                const auto info = info_structure(model, ctx);
                level = od_oracle_level(improving[0], ctx.current, ctx.prefs, *info,
                                        ctx.rule, model.ball_cap)
                            .value_or(0);
            } else {
                const auto structure = derive_structure(model, ctx);
                level = od_check(improving[0], ctx.current, ctx.prefs, structure, ctx.rule)
                            .level.value_or(0);
            }
            report.deviations.push_back({i, improving[0], level});
        }
    }
    return report;
}

}  // namespace ordvote
