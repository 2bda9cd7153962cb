#include "ordvote/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ordvote {

ScoreVector::ScoreVector(std::vector<int> s) : scores(std::move(s)) {
    for (int v : scores) {
        if (v < 0) throw StructuralError("score vector entries must be non-negative");
    }
    total = std::accumulate(scores.begin(), scores.end(), 0);
}

std::string ScoreVector::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < scores.size(); ++i) {
        if (i) os << ",";
        os << scores[i];
    }
    return os.str();
}

int Ballot::total() const { return std::accumulate(scores.begin(), scores.end(), 0); }

bool Ballot::is_abstain() const {
    return std::all_of(scores.begin(), scores.end(), [](int v) { return v == 0; });
}

std::string Ballot::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < scores.size(); ++i) {
        if (i) os << ",";
        os << scores[i];
    }
    return os.str();
}

std::string VotingRule::name() const {
    switch (kind) {
        case RuleKind::Plurality: return "plurality";
        case RuleKind::Veto: return "veto";
        case RuleKind::Borda: return "borda";
        case RuleKind::Approval: return "approval";
        case RuleKind::KApproval: return "k-approval(" + std::to_string(k) + ")";
    }
    return "?";
}

std::vector<int> VotingRule::slot_scores() const {
    std::vector<int> slots(m, 0);
    switch (kind) {
        case RuleKind::Plurality:
            slots[0] = 1;
            break;
        case RuleKind::Veto:
            std::fill(slots.begin(), slots.end() - 1, 1);
            break;
        case RuleKind::Borda:
            for (int i = 0; i < m; ++i) slots[i] = m - 1 - i;
            break;
        case RuleKind::KApproval:
            std::fill(slots.begin(), slots.begin() + k, 1);
            break;
        case RuleKind::Approval:
            throw StructuralError("approval has no canonical slot vector");
    }
    return slots;
}

PreferenceOrder PreferenceOrder::from_order(const std::vector<CandidateId>& best_to_worst,
                                            Bias b) {
    std::vector<int> ranks(best_to_worst.size(), -1);
    for (size_t pos = 0; pos < best_to_worst.size(); ++pos) {
        CandidateId c = best_to_worst[pos];
        if (c < 0 || c >= static_cast<int>(ranks.size()) || ranks[c] != -1)
            throw StructuralError("preference order must list each candidate exactly once");
        ranks[c] = static_cast<int>(pos);
    }
    return PreferenceOrder(std::move(ranks), b);
}

bool PreferenceOrder::is_strict() const {
    std::vector<int> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

CandidateId PreferenceOrder::top() const {
    const int best = *std::min_element(ranks.begin(), ranks.end());
    CandidateId who = -1;
    for (int c = 0; c < size(); ++c) {
        if (ranks[c] == best) {
            if (who != -1) throw AmbiguityError("no unique most-preferred candidate");
            who = c;
        }
    }
    return who;
}

CandidateId PreferenceOrder::bottom() const {
    const int worst = *std::max_element(ranks.begin(), ranks.end());
    CandidateId who = -1;
    for (int c = 0; c < size(); ++c) {
        if (ranks[c] == worst) {
            if (who != -1) throw AmbiguityError("no unique least-preferred candidate");
            who = c;
        }
    }
    return who;
}

CandidateId winner(const ScoreVector& s) {
    if (s.scores.empty()) throw StructuralError("winner of empty score vector");
    CandidateId best = 0;
    for (int c = 1; c < s.size(); ++c) {
        if (s.scores[c] > s.scores[best]) best = c;
    }
    return best;
}

ScoreVector add(const ScoreVector& s, const Ballot& a) {
    if (s.size() != a.size()) throw StructuralError("score vector and ballot lengths differ");
    std::vector<int> out = s.scores;
    for (int c = 0; c < a.size(); ++c) out[c] += a.scores[c];
    return ScoreVector(std::move(out));
}

CandidateId outcome(const ScoreVector& s, const Ballot& a, const VotingRule& rule) {
    if (!is_valid_ballot(rule, a, true))
        throw RuleViolationError("ballot " + a.str() + " not allowed under " + rule.name());
    return winner(add(s, a));
}

bool is_valid_ballot(const VotingRule& rule, const Ballot& a, bool allow_abstain) {
    if (a.size() != rule.m) return false;
    if (allow_abstain && a.is_abstain()) return true;
    switch (rule.kind) {
        case RuleKind::Plurality: {
            int ones = 0;
            for (int v : a.scores) {
                if (v == 1) ++ones;
                else if (v != 0) return false;
            }
            return ones == 1;
        }
        case RuleKind::Veto: {
            int zeros = 0;
            for (int v : a.scores) {
                if (v == 0) ++zeros;
                else if (v != 1) return false;
            }
            return zeros == 1;
        }
        case RuleKind::Borda: {
            std::vector<int> seen = a.scores;
            std::sort(seen.begin(), seen.end());
            for (int i = 0; i < rule.m; ++i) {
                if (seen[i] != i) return false;
            }
            return true;
        }
        case RuleKind::Approval:
            return std::all_of(a.scores.begin(), a.scores.end(),
                               [](int v) { return v == 0 || v == 1; });
        case RuleKind::KApproval: {
            int ones = 0;
            for (int v : a.scores) {
                if (v == 1) ++ones;
                else if (v != 0) return false;
            }
            return ones == rule.k;
        }
    }
    return false;
}

namespace {

void enumerate_binary(int m, int fixed_ones, std::vector<Ballot>& out) {
    for (int mask = 0; mask < (1 << m); ++mask) {
        if (fixed_ones >= 0 && __builtin_popcount(static_cast<unsigned>(mask)) != fixed_ones)
            continue;
        std::vector<int> v(m, 0);
        for (int c = 0; c < m; ++c)
            if (mask & (1 << c)) v[c] = 1;
        out.emplace_back(std::move(v));
    }
}

}  // namespace

std::vector<Ballot> allowed_ballots(const VotingRule& rule, bool include_abstain,
                                    int borda_cap) {
    if (rule.m < 2) throw StructuralError("need at least two candidates");
    std::vector<Ballot> out;
    switch (rule.kind) {
        case RuleKind::Plurality:
            for (int c = 0; c < rule.m; ++c) {
                std::vector<int> v(rule.m, 0);
                v[c] = 1;
                out.emplace_back(std::move(v));
            }
            break;
        case RuleKind::Veto:
            for (int c = 0; c < rule.m; ++c) {
                std::vector<int> v(rule.m, 1);
                v[c] = 0;
                out.emplace_back(std::move(v));
            }
            break;
        case RuleKind::Borda: {
            if (rule.m > borda_cap)
                throw CapacityError("borda enumeration capped at m <= " +
                                    std::to_string(borda_cap) + ", got m = " +
                                    std::to_string(rule.m));
            std::vector<int> perm(rule.m);
            for (int i = 0; i < rule.m; ++i) perm[i] = i;
            do {
                out.emplace_back(perm);
            } while (std::next_permutation(perm.begin(), perm.end()));
            break;
        }
        case RuleKind::Approval:
            if (rule.m > 20)
                throw CapacityError("approval enumeration capped at m <= 20, got m = " +
                                    std::to_string(rule.m));
            enumerate_binary(rule.m, -1, out);
            break;
        case RuleKind::KApproval:
            if (rule.m > 20)
                throw CapacityError("k-approval enumeration capped at m <= 20, got m = " +
                                    std::to_string(rule.m));
            if (rule.k < 1 || rule.k > rule.m)
                throw ConfigError("k-approval needs 1 <= k <= m");
            enumerate_binary(rule.m, rule.k, out);
            break;
    }
    std::sort(out.begin(), out.end());
    if (include_abstain) {
        Ballot abst(std::vector<int>(rule.m, 0));
        if (std::find(out.begin(), out.end(), abst) == out.end())
            out.insert(out.begin(), abst);
    }
    return out;
}

Ballot truthful_ballot(const VotingRule& rule, const PreferenceOrder& p,
                       std::optional<int> approval_threshold) {
    if (p.size() != rule.m) throw StructuralError("preference order length mismatch");
    switch (rule.kind) {
        case RuleKind::Plurality: {
            std::vector<int> v(rule.m, 0);
            v[p.top()] = 1;
            return Ballot(std::move(v));
        }
        case RuleKind::Veto: {
            std::vector<int> v(rule.m, 1);
            v[p.bottom()] = 0;
            return Ballot(std::move(v));
        }
        case RuleKind::Borda: {
            if (!p.is_strict())
                throw AmbiguityError("borda truthful ballot needs a strict order");
            std::vector<int> v(rule.m, 0);
            for (int c = 0; c < rule.m; ++c) v[c] = rule.m - 1 - p.ranks[c];
            return Ballot(std::move(v));
        }
        case RuleKind::Approval:
        case RuleKind::KApproval: {
            int t = rule.kind == RuleKind::KApproval ? rule.k : approval_threshold.value_or(-1);
            if (t < 0)
                throw AmbiguityError("approval truthful ballot needs a threshold");
            if (t > rule.m) throw ConfigError("approval threshold exceeds m");
            // approve the t best ranks; the cut must not split an indifference class
            std::vector<int> sorted = p.ranks;
            std::sort(sorted.begin(), sorted.end());
            if (t > 0 && t < rule.m && sorted[t - 1] == sorted[t])
                throw AmbiguityError("approval threshold falls inside an indifference class");
            std::vector<int> v(rule.m, 0);
            if (t > 0) {
                const int cutoff = sorted[t - 1];
                for (int c = 0; c < rule.m; ++c)
                    if (p.ranks[c] <= cutoff) v[c] = 1;
            }
            return Ballot(std::move(v));
        }
    }
    throw StructuralError("unknown rule");
}

int compare(const PreferenceOrder& p, const VotingRule& rule,
            const std::pair<CandidateId, Ballot>& x,
            const std::pair<CandidateId, Ballot>& y) {
    const int by_winner = p.cmp(x.first, y.first);
    if (by_winner != 0) return by_winner;
    if (x.second == y.second) return 0;
    if (p.bias == Bias::Truth) {
        const Ballot q = truthful_ballot(rule, p);
        if (x.second == q) return 1;
        if (y.second == q) return -1;
    } else if (p.bias == Bias::Lazy) {
        if (x.second.is_abstain()) return 1;
        if (y.second.is_abstain()) return -1;
    }
    return 0;
}

}  // namespace ordvote
