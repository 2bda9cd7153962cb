#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "ordvote/core.hpp"
#include "ordvote/epistemic.hpp"

namespace testutil {

// deterministic across platforms, unlike <random> distributions
struct Rng {
    std::uint64_t state;
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

inline ordvote::PreferenceOrder random_strict_prefs(Rng& rng, int m,
                                                    ordvote::Bias bias = ordvote::Bias::None) {
    std::vector<ordvote::CandidateId> order(m);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    return ordvote::PreferenceOrder::from_order(order, bias);
}

// random nested structure: grow a random edge set level by level
inline ordvote::PivotGraphStructure random_structure(Rng& rng, int m, int k) {
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) all.emplace_back(a, b);
    ordvote::PivotGraphStructure s;
    s.m = m;
    std::vector<std::pair<int, int>> cur;
    for (int j = 0; j < k; ++j) {
        for (const auto& e : all) {
            const bool have =
                std::find(cur.begin(), cur.end(), e) != cur.end();
            if (!have && rng.below(3) == 0) cur.push_back(e);
        }
        s.levels.push_back(ordvote::PivotGraph(m, cur));
    }
    s.check_nesting();
    return s;
}

inline std::vector<ordvote::ScoreVector> all_states_of_total(int m, int total) {
    std::vector<ordvote::ScoreVector> out;
    std::vector<int> cur(m, 0);
    struct Rec {
        int m, total;
        std::vector<int>& cur;
        std::vector<ordvote::ScoreVector>& out;
        void go(int idx, int left) {
            if (idx == m - 1) {
                cur[idx] = left;
                out.emplace_back(ordvote::ScoreVector(cur));
                return;
            }
            for (int v = 0; v <= left; ++v) {
                cur[idx] = v;
                go(idx + 1, left - v);
            }
        }
    } rec{m, total, cur, out};
    rec.go(0, total);
    return out;
}

}  // namespace testutil
