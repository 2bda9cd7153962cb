#include "ordvote/metrics.hpp"

#include <algorithm>
#include <cstdlib>

namespace ordvote {

std::string Metric::name() const {
    switch (kind) {
        case MetricKind::EMD: return "emd";
        case MetricKind::L1: return "l1";
        case MetricKind::LInf: return "linf";
        case MetricKind::CandidateWise: return "candidate-wise";
    }
    return "?";
}

Radius Radius::from_fraction(const Fraction& v, int n) {
    if (v < Fraction(0) || Fraction(1) < v)
        throw DomainError("radius must lie in [0,1]");
    Radius r;
    r.value = v;
    r.vote_units = round_half_up(v, n);
    return r;
}

Radius Radius::from_votes(int votes, int n) {
    if (votes < 0) throw DomainError("radius votes must be non-negative");
    if (n <= 0) throw DomainError("radius needs a positive total");
    Radius r;
    r.value = Fraction(votes, n);
    r.vote_units = votes;
    return r;
}

namespace {

int effective_normalization(const Metric& metric, const ScoreVector& s, const ScoreVector& t) {
    if (metric.normalization > 0) return metric.normalization;
    switch (metric.kind) {
        case MetricKind::EMD:
        case MetricKind::L1:
            return std::max(1, s.total);
        default:
            throw DomainError(metric.name() + " needs an explicit normalization total");
    }
    (void)t;
}

Fraction clamp_unit(Fraction f) { return Fraction(1) < f ? Fraction(1) : f; }

}  // namespace

Fraction distance(const Metric& metric, const ScoreVector& s, const ScoreVector& t) {
    if (s.size() != t.size()) throw StructuralError("distance between different lengths");
    switch (metric.kind) {
        case MetricKind::EMD: {
            if (s.total != t.total)
                throw DomainError("EMD is defined only between equal-total vectors");
            std::int64_t l1 = 0;
            for (int c = 0; c < s.size(); ++c) l1 += std::abs(s[c] - t[c]);
            return Fraction(l1, 2LL * effective_normalization(metric, s, t));
        }
        case MetricKind::L1: {
            if (metric.normalization == 0 && s.total != t.total)
                throw DomainError("L1 needs an explicit normalization for unequal totals");
            std::int64_t l1 = 0;
            for (int c = 0; c < s.size(); ++c) l1 += std::abs(s[c] - t[c]);
            return clamp_unit(Fraction(l1, 2LL * effective_normalization(metric, s, t)));
        }
        case MetricKind::LInf: {
            std::int64_t mx = 0;
            for (int c = 0; c < s.size(); ++c)
                mx = std::max<std::int64_t>(mx, std::abs(s[c] - t[c]));
            return clamp_unit(Fraction(mx, effective_normalization(metric, s, t)));
        }
        case MetricKind::CandidateWise: {
            if (static_cast<int>(metric.weights.size()) != s.size())
                throw StructuralError("candidate-wise metric needs one weight per candidate");
            const int n = effective_normalization(metric, s, t);
            Fraction mx(0);
            for (int c = 0; c < s.size(); ++c) {
                Fraction d = metric.weights[c] * Fraction(std::abs(s[c] - t[c]), n);
                if (mx < d) mx = d;
            }
            return clamp_unit(mx);
        }
    }
    throw StructuralError("unknown metric");
}

namespace {

// largest k with k/den_scale <= value, i.e. floor(value * den_scale)
std::int64_t floor_times(const Fraction& value, std::int64_t den_scale) {
    return (value.num * den_scale) / value.den;
}

struct BallEnumerator {
    const ScoreVector& center;
    std::int64_t l1_budget;   // bound on sum of |deviation|
    bool balance;             // keep total equal to the center's
    std::int64_t visit_cap;
    std::int64_t visited = 0;
    std::vector<int> cur;
    std::vector<ScoreVector> out;

    void run() {
        cur.assign(center.size(), 0);
        descend(0, 0, 0);
    }

    void descend(int idx, std::int64_t l1_used, std::int64_t delta_sum) {
        if (++visited > visit_cap)
            throw CapacityError("ball enumeration exceeded cap of " +
                                std::to_string(visit_cap) + " nodes");
        const int m = center.size();
        if (idx == m - 1) {
            // last coordinate: forced when balancing, else scan its range
            if (balance) {
                const std::int64_t d = -delta_sum;
                const std::int64_t v = center[idx] + d;
                if (v >= 0 && l1_used + std::llabs(d) <= l1_budget) {
                    cur[idx] = static_cast<int>(v);
                    out.emplace_back(ScoreVector(cur));
                }
            } else {
                const std::int64_t room = l1_budget - l1_used;
                const std::int64_t lo = std::max<std::int64_t>(0, center[idx] - room);
                const std::int64_t hi = center[idx] + room;
                for (std::int64_t v = lo; v <= hi; ++v) {
                    cur[idx] = static_cast<int>(v);
                    out.emplace_back(ScoreVector(cur));
                }
            }
            return;
        }
        const std::int64_t room = l1_budget - l1_used;
        const std::int64_t lo = std::max<std::int64_t>(0, center[idx] - room);
        const std::int64_t hi = center[idx] + room;
        for (std::int64_t v = lo; v <= hi; ++v) {
            const std::int64_t d = v - center[idx];
            const std::int64_t used = l1_used + std::llabs(d);
            if (balance) {
                // remaining coordinates must absorb the running imbalance
                if (used + std::llabs(delta_sum + d) > l1_budget) continue;
            }
            cur[idx] = static_cast<int>(v);
            descend(idx + 1, used, delta_sum + d);
        }
    }
};

}  // namespace

std::vector<ScoreVector> ball(const Metric& metric, const ScoreVector& center,
                              const Radius& r, bool preserve_total,
                              std::int64_t visit_cap) {
    const int m = center.size();
    if (m == 0) throw StructuralError("ball around empty vector");
    switch (metric.kind) {
        case MetricKind::EMD:
        case MetricKind::L1: {
            const int n = effective_normalization(metric, center, center);
            BallEnumerator e{center,
                             floor_times(r.value, 2LL * n),
                             metric.kind == MetricKind::EMD || preserve_total,
                             visit_cap,
                             0,
                             {},
                             {}};
            e.run();
            return std::move(e.out);
        }
        case MetricKind::LInf:
        case MetricKind::CandidateWise: {
            const int n = effective_normalization(metric, center, center);
            // per-coordinate bound: w_c * |d| / n <= r
            std::vector<std::int64_t> bound(m);
            std::int64_t size_estimate = 1;
            for (int c = 0; c < m; ++c) {
                Fraction w = metric.kind == MetricKind::LInf ? Fraction(1) : metric.weights[c];
                if (w.num <= 0) throw DomainError("candidate-wise weights must be positive");
                // |d| <= r*n/w
                Fraction lim = Fraction(r.value.num * n, r.value.den) * Fraction(w.den, w.num);
                bound[c] = lim.num / lim.den;
                const std::int64_t width =
                    std::min<std::int64_t>(bound[c], center[c]) + bound[c] + 1;
                size_estimate = std::min<std::int64_t>(size_estimate * width, visit_cap + 1);
            }
            if (size_estimate > visit_cap)
                throw CapacityError("ball enumeration exceeded cap of " +
                                    std::to_string(visit_cap) + " nodes");
            std::vector<ScoreVector> out;
            std::vector<int> cur(m, 0);
            // lexicographic product of per-coordinate intervals
            std::vector<std::int64_t> lo(m), hi(m);
            for (int c = 0; c < m; ++c) {
                lo[c] = std::max<std::int64_t>(0, center[c] - bound[c]);
                hi[c] = center[c] + bound[c];
                cur[c] = static_cast<int>(lo[c]);
            }
            while (true) {
                out.emplace_back(ScoreVector(cur));
                int c = m - 1;
                while (c >= 0 && cur[c] == hi[c]) {
                    cur[c] = static_cast<int>(lo[c]);
                    --c;
                }
                if (c < 0) break;
                ++cur[c];
            }
            return out;
        }
    }
    throw StructuralError("unknown metric");
}

MetricProperties metric_properties(const Metric& metric) {
    switch (metric.kind) {
        case MetricKind::EMD:
        case MetricKind::L1:
            return {true, false};
        case MetricKind::LInf:
            return {true, true};
        case MetricKind::CandidateWise: {
            bool uniform = true;
            for (size_t c = 1; c < metric.weights.size(); ++c)
                if (!(metric.weights[c] == metric.weights[0])) uniform = false;
            return {uniform, true};
        }
    }
    return {};
}

}  // namespace ordvote
