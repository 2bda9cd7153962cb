#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordvote/core.hpp"
#include "ordvote/fraction.hpp"

namespace ordvote {

enum class MetricKind { EMD, L1, LInf, CandidateWise };

// Distance over score vectors, mapped into [0,1].
//
// EMD and L1 measure the fraction of relocated votes (half the l1 deviation);
// EMD additionally requires equal totals. EMD and L1 normalize by the total
// of the vectors compared when `normalization` is 0, so percentage radii
// denominate in the live electorate. LInf and CandidateWise need an explicit
// normalization. CandidateWise takes per-candidate weights w_c and computes
// max_c w_c*|s(c)-t(c)|/n; unequal weights make it non-neutral.
struct Metric {
    MetricKind kind = MetricKind::EMD;
    int normalization = 0;
    std::vector<Fraction> weights;  // CandidateWise only

    static Metric emd(int n = 0) { return {MetricKind::EMD, n, {}}; }
    static Metric l1(int n = 0) { return {MetricKind::L1, n, {}}; }
    static Metric linf(int n) { return {MetricKind::LInf, n, {}}; }
    static Metric candidate_wise(int n, std::vector<Fraction> w) {
        return {MetricKind::CandidateWise, n, std::move(w)};
    }

    std::string name() const;
};

// A radius r in [0,1]. `vote_units` caches r*n rounded half-up for display
// and sizing; ball membership always compares the exact fraction.
struct Radius {
    Fraction value;
    int vote_units = 0;

    static Radius from_fraction(const Fraction& v, int n);
    static Radius from_votes(int votes, int n);

    friend bool operator==(const Radius& a, const Radius& b) { return a.value == b.value; }
    friend bool operator<(const Radius& a, const Radius& b) { return a.value < b.value; }
};

struct MetricProperties {
    bool neutral = false;
    bool candidate_wise = false;
};

// exact distance in [0,1]
Fraction distance(const Metric& metric, const ScoreVector& s, const ScoreVector& t);

// All states t (entries >= 0) with distance(center,t) <= r, canonically
// ordered. EMD balls preserve the center's total by definition; L1 balls do
// when `preserve_total` is set. Throws CapacityError past `visit_cap` nodes.
std::vector<ScoreVector> ball(const Metric& metric, const ScoreVector& center,
                              const Radius& r, bool preserve_total = false,
                              std::int64_t visit_cap = 10'000'000);

MetricProperties metric_properties(const Metric& metric);

}  // namespace ordvote
