#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordvote/errors.hpp"

namespace ordvote {

// Candidates are dense indices 0..m-1. Ties among leading candidates break
// toward the lowest index.
using CandidateId = int;

// Aggregated integer score tally; the world state seen by a voter.
struct ScoreVector {
    std::vector<int> scores;
    int total = 0;

    ScoreVector() = default;
    explicit ScoreVector(std::vector<int> s);

    int size() const { return static_cast<int>(scores.size()); }
    int operator[](int c) const { return scores[c]; }

    friend bool operator==(const ScoreVector& a, const ScoreVector& b) {
        return a.scores == b.scores;
    }
    friend bool operator<(const ScoreVector& a, const ScoreVector& b) {
        return a.scores < b.scores;
    }

    std::string str() const;
};

// One voter's score contribution. Membership of the rule's allowed set is
// checked by is_valid_ballot; the all-zero vector is the abstain ballot and
// is legal only where lazy bias admits it.
struct Ballot {
    std::vector<int> scores;

    Ballot() = default;
    explicit Ballot(std::vector<int> s) : scores(std::move(s)) {}

    int size() const { return static_cast<int>(scores.size()); }
    int operator[](int c) const { return scores[c]; }
    int total() const;
    bool is_abstain() const;

    friend bool operator==(const Ballot& a, const Ballot& b) { return a.scores == b.scores; }
    friend bool operator!=(const Ballot& a, const Ballot& b) { return !(a == b); }
    friend bool operator<(const Ballot& a, const Ballot& b) { return a.scores < b.scores; }

    std::string str() const;
};

enum class RuleKind { Plurality, Veto, Borda, Approval, KApproval };

// Score-based voting rule: an allowed ballot set plus argmax aggregation.
struct VotingRule {
    RuleKind kind = RuleKind::Plurality;
    int m = 0;
    int k = 0;  // KApproval only

    static VotingRule plurality(int m) { return {RuleKind::Plurality, m, 0}; }
    static VotingRule veto(int m) { return {RuleKind::Veto, m, 0}; }
    static VotingRule borda(int m) { return {RuleKind::Borda, m, 0}; }
    static VotingRule approval(int m) { return {RuleKind::Approval, m, 0}; }
    static VotingRule k_approval(int m, int k) { return {RuleKind::KApproval, m, k}; }

    std::string name() const;
    // canonical allowed vector sorted descending; the slot scores a ballot
    // assigns by rank position (undefined for Approval, whose set is not a
    // permutation family)
    std::vector<int> slot_scores() const;
};

enum class Bias { None, Truth, Lazy };

// Weak order over candidates: lower rank = more preferred, equal rank =
// indifferent. The bias field selects the secondary preference applied to
// outcome-equivalent actions.
struct PreferenceOrder {
    std::vector<int> ranks;
    Bias bias = Bias::None;

    PreferenceOrder() = default;
    explicit PreferenceOrder(std::vector<int> r, Bias b = Bias::None)
        : ranks(std::move(r)), bias(b) {}

    // build from a strict order listed most-preferred first
    static PreferenceOrder from_order(const std::vector<CandidateId>& best_to_worst,
                                      Bias b = Bias::None);

    int size() const { return static_cast<int>(ranks.size()); }
    bool prefers(CandidateId a, CandidateId b) const { return ranks[a] < ranks[b]; }
    bool indifferent(CandidateId a, CandidateId b) const { return ranks[a] == ranks[b]; }
    // +1 if a preferred, -1 if b preferred, 0 if indifferent
    int cmp(CandidateId a, CandidateId b) const {
        if (ranks[a] < ranks[b]) return 1;
        if (ranks[a] > ranks[b]) return -1;
        return 0;
    }
    bool is_strict() const;
    // unique most/least preferred candidate; error if tied
    CandidateId top() const;
    CandidateId bottom() const;

    friend bool operator==(const PreferenceOrder& a, const PreferenceOrder& b) {
        return a.ranks == b.ranks && a.bias == b.bias;
    }
};

// --- operations -----------------------------------------------------------

// argmax with lexicographic tie-breaking (lowest index wins)
CandidateId winner(const ScoreVector& s);

// winner of s + a after validating a against the rule
CandidateId outcome(const ScoreVector& s, const Ballot& a, const VotingRule& rule);

ScoreVector add(const ScoreVector& s, const Ballot& a);

bool is_valid_ballot(const VotingRule& rule, const Ballot& a, bool allow_abstain = false);

// Exact enumeration of the allowed set A, canonically ordered. Caps:
// Borda m <= borda_cap (default 6), Approval/KApproval m <= 20.
std::vector<Ballot> allowed_ballots(const VotingRule& rule, bool include_abstain = false,
                                    int borda_cap = 6);

// Sincere ballot for p. Plurality/Veto/Borda need p strict; Approval and
// KApproval approve the top `approval_threshold` candidates (KApproval forces
// threshold = k) and fail if the cut falls inside an indifference class.
Ballot truthful_ballot(const VotingRule& rule, const PreferenceOrder& p,
                       std::optional<int> approval_threshold = std::nullopt);

// Lexicographic comparison of (winner, action) pairs: winners first by p;
// between outcome-equivalent pairs truth bias favors the truthful ballot and
// lazy bias favors abstention. Returns +1 if x preferred, -1 if y, 0 if
// indifferent.
int compare(const PreferenceOrder& p, const VotingRule& rule,
            const std::pair<CandidateId, Ballot>& x,
            const std::pair<CandidateId, Ballot>& y);

}  // namespace ordvote
