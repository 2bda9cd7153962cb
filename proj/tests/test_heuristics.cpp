#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "ordvote/heuristics.hpp"

using namespace ordvote;

namespace {

Ballot unit(int m, int c) {
    std::vector<int> v(m, 0);
    v[c] = 1;
    return Ballot(v);
}

const ScoreVector kState({29, 26, 22, 17, 6});  // candidate order w,b,c,d,e

VoterContext plurality_ctx(const PreferenceOrder& prefs, const Ballot& cur) {
    return VoterContext{kState, cur, prefs, VotingRule::plurality(5)};
}

}  // namespace

TEST_SUITE_BEGIN("heuristics");

TEST_CASE("pragmatists promote the favorite poll leader") {
    // prefs e > c > b > w > d
    const auto prefs = PreferenceOrder::from_order({4, 2, 1, 0, 3});
    const auto ctx = plurality_ctx(prefs, unit(5, 4));
    CHECK(evaluate_heuristic(HeuristicKind::t_pragmatist(2), ctx) ==
          std::vector<Ballot>{unit(5, 1)});
    CHECK(evaluate_heuristic(HeuristicKind::t_pragmatist(3), ctx) ==
          std::vector<Ballot>{unit(5, 2)});
    CHECK(evaluate_heuristic(HeuristicKind::t_pragmatist(4), ctx) ==
          std::vector<Ballot>{unit(5, 2)});
    // already voting the favorite leader: nothing to recommend
    const auto settled = plurality_ctx(prefs, unit(5, 1));
    CHECK(evaluate_heuristic(HeuristicKind::t_pragmatist(2), settled).empty());
}

TEST_CASE("pragmatist re-ranking preserves ballot shape in any rule") {
    // borda m=4, top-2 = {c0,c1}, prefs c1 > c2 > c3 > c0, current (3,0,1,2)
    const ScoreVector s({10, 8, 5, 3});
    const auto prefs = PreferenceOrder::from_order({1, 2, 3, 0});
    const VoterContext ctx{s, Ballot({3, 0, 1, 2}), prefs, VotingRule::borda(4)};
    CHECK(evaluate_heuristic(HeuristicKind::t_pragmatist(2), ctx) ==
          std::vector<Ballot>{Ballot({2, 3, 0, 1})});
    CHECK(evaluate_heuristic(HeuristicKind::t_star(2), ctx) ==
          std::vector<Ballot>{Ballot({0, 3, 1, 2})});

    // veto: the favorite is unvetoed, the displaced veto falls to the bottom
    const VoterContext vctx{s, Ballot({1, 1, 1, 0}), prefs, VotingRule::veto(4)};
    const auto vout = evaluate_heuristic(HeuristicKind::t_star(2), vctx);
    REQUIRE(vout.size() == 1);
    CHECK(vout[0] == Ballot({0, 1, 1, 1}));  // demoted leader takes the veto
    // already vetoing the demoted leader: nothing to do
    const VoterContext settled{s, Ballot({0, 1, 1, 1}), prefs, VotingRule::veto(4)};
    CHECK(evaluate_heuristic(HeuristicKind::t_star(2), settled).empty());
}

TEST_CASE("pragmatists under k-approval keep the approval count") {
    const ScoreVector s({10, 8, 5, 3});
    const auto prefs = PreferenceOrder::from_order({1, 2, 3, 0});
    const auto rule = VotingRule::k_approval(4, 2);
    const VoterContext ctx{s, Ballot({1, 0, 0, 1}), prefs, rule};
    // favorite of the top two is c1: it takes an approval slot; the current
    // approvals c0 and c3 rank above the rest, and c0 is demoted by t-star
    const auto prag = evaluate_heuristic(HeuristicKind::t_pragmatist(2), ctx);
    REQUIRE(prag.size() == 1);
    CHECK(is_valid_ballot(rule, prag[0]));
    CHECK(prag[0][1] == 1);
    const auto star = evaluate_heuristic(HeuristicKind::t_star(2), ctx);
    REQUIRE(star.size() == 1);
    CHECK(star[0] == Ballot({0, 1, 0, 1}));
}

TEST_CASE("t-star in approval flips exactly the leader block") {
    const ScoreVector s({10, 8, 5, 3});
    const auto prefs = PreferenceOrder::from_order({1, 2, 3, 0});
    const VoterContext ctx{s, Ballot({1, 0, 1, 0}), prefs, VotingRule::approval(4)};
    CHECK(evaluate_heuristic(HeuristicKind::t_star(2), ctx) ==
          std::vector<Ballot>{Ballot({0, 1, 1, 0})});
    // untouched coordinates stay as voted
    const VoterContext ctx2{s, Ballot({1, 1, 0, 1}), prefs, VotingRule::approval(4)};
    CHECK(evaluate_heuristic(HeuristicKind::t_star(2), ctx2) ==
          std::vector<Ballot>{Ballot({0, 1, 0, 1})});
}

TEST_CASE("leader rule approves everyone above the leader") {
    // prefs e > d > c > b > w: everything beats the leader w, and w loses to b
    const auto prefs = PreferenceOrder::from_order({4, 3, 2, 1, 0});
    const VoterContext ctx{kState, Ballot({0, 0, 0, 0, 1}), prefs,
                           VotingRule::approval(5)};
    CHECK(evaluate_heuristic(HeuristicKind::leader_rule(), ctx) ==
          std::vector<Ballot>{Ballot({0, 1, 1, 1, 1})});

    // leader on top of the voter's heart: approve the leader alone
    const auto fan = PreferenceOrder::from_order({0, 1, 2, 3, 4});
    const VoterContext ctx2{kState, Ballot({0, 0, 0, 0, 1}), fan, VotingRule::approval(5)};
    CHECK(evaluate_heuristic(HeuristicKind::leader_rule(), ctx2) ==
          std::vector<Ballot>{Ballot({1, 0, 0, 0, 0})});
}

TEST_CASE("not-last fires only from the bottom choice") {
    const auto prefs = PreferenceOrder::from_order({4, 3, 2, 1, 0});  // w last
    CHECK(evaluate_heuristic(HeuristicKind::not_last(),
                             plurality_ctx(prefs, unit(5, 4)))
              .empty());
    const auto moves =
        evaluate_heuristic(HeuristicKind::not_last(), plurality_ctx(prefs, unit(5, 0)));
    CHECK(moves.size() == 4);
    CHECK(std::find(moves.begin(), moves.end(), unit(5, 0)) == moves.end());
}

TEST_CASE("heuristic and rule must match") {
    const auto prefs = PreferenceOrder::from_order({0, 1, 2});
    const VoterContext ctx{ScoreVector({3, 2, 1}), unit(3, 0), prefs,
                           VotingRule::borda(3)};
    CHECK_THROWS_AS(evaluate_heuristic(HeuristicKind::not_last(), ctx), ConfigError);
    CHECK_THROWS_AS(evaluate_heuristic(HeuristicKind::leader_rule(), ctx), ConfigError);
    CHECK_THROWS_AS(
        evaluate_heuristic(HeuristicKind::t_star(5), ctx), ConfigError);
}

TEST_CASE("local dominance moves to the best dominating candidate") {
    // (w,b) race within one relocated vote: a voter on e moves to b
    const ScoreVector s({10, 9, 2});
    const auto prefs = PreferenceOrder::from_order({2, 1, 0});  // c2 > c1 > c0
    const auto kind = HeuristicKind::local_dominance(
        Metric::emd(), Radius::from_votes(1, s.total));
    const VoterContext ctx{s, unit(3, 2), prefs, VotingRule::plurality(3)};
    CHECK(evaluate_heuristic(kind, ctx) == std::vector<Ballot>{unit(3, 1)});

    // no pivotal pair in reach: keep the current vote
    const ScoreVector calm({14, 5, 2});
    const VoterContext ctx2{calm, unit(3, 2), prefs, VotingRule::plurality(3)};
    const auto kind2 = HeuristicKind::local_dominance(
        Metric::emd(), Radius::from_votes(1, calm.total));
    CHECK(evaluate_heuristic(kind2, ctx2).empty());
}

TEST_CASE("truth bias keeps a useful vote and otherwise returns home") {
    // prefs e > d > c > b > w, truthful = e, currently on b
    const auto prefs = PreferenceOrder::from_order({4, 3, 2, 1, 0}, Bias::Truth);
    const ScoreVector s({29, 25, 22, 17, 6});
    const VoterContext ctx{s, unit(5, 1), prefs, VotingRule::plurality(5)};
    SUBCASE("a state where b needs her vote keeps her strategic") {
        const auto kind = HeuristicKind::truth_bias_ld(
            Metric::emd(), Radius::from_fraction(Fraction(1, 100), 99),
            Radius::from_fraction(Fraction(3, 100), 99));
        CHECK(evaluate_heuristic(kind, ctx).empty());
    }
    SUBCASE("with no reachable tie she votes truthfully") {
        const auto kind = HeuristicKind::truth_bias_ld(
            Metric::emd(), Radius::from_fraction(Fraction(0, 100), 99),
            Radius::from_fraction(Fraction(1, 100), 99));
        CHECK(evaluate_heuristic(kind, ctx) == std::vector<Ballot>{unit(5, 4)});
    }
}

TEST_CASE("lazy bias mirrors truth bias with abstention") {
    const auto prefs = PreferenceOrder::from_order({4, 3, 2, 1, 0}, Bias::Lazy);
    const ScoreVector s({29, 25, 22, 17, 6});
    const VoterContext ctx{s, unit(5, 1), prefs, VotingRule::plurality(5)};
    const auto kind = HeuristicKind::lazy_bias_ld(
        Metric::emd(), Radius::from_fraction(Fraction(0, 100), 99),
        Radius::from_fraction(Fraction(1, 100), 99));
    CHECK(evaluate_heuristic(kind, ctx) ==
          std::vector<Ballot>{Ballot({0, 0, 0, 0, 0})});
}

TEST_CASE("point heuristics never return more than one move") {
    testutil::Rng rng(59);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 3 + rng.below(3);
        std::vector<int> v(m);
        for (int& x : v) x = rng.below(12);
        const ScoreVector s(v);
        const auto prefs = testutil::random_strict_prefs(rng, m);
        const int T = 2 + rng.below(m - 1);
        {
            const auto ballots = allowed_ballots(VotingRule::plurality(m));
            const VoterContext ctx{s, ballots[rng.below(static_cast<int>(ballots.size()))],
                                   prefs, VotingRule::plurality(m)};
            CHECK(evaluate_heuristic(HeuristicKind::t_pragmatist(T), ctx).size() <= 1);
            CHECK(evaluate_heuristic(HeuristicKind::t_star(T), ctx).size() <= 1);
        }
        {
            const auto ballots = allowed_ballots(VotingRule::approval(m));
            const VoterContext ctx{s, ballots[rng.below(static_cast<int>(ballots.size()))],
                                   prefs, VotingRule::approval(m)};
            CHECK(evaluate_heuristic(HeuristicKind::leader_rule(), ctx).size() <= 1);
            CHECK(evaluate_heuristic(HeuristicKind::t_star(T), ctx).size() <= 1);
        }
    }
}

TEST_CASE("model shapes behind the heuristics") {
    const auto prefs = PreferenceOrder::from_order({4, 2, 1, 0, 3});
    const auto ctx = plurality_ctx(prefs, unit(5, 4));
    SUBCASE("pragmatist star") {
        const auto s = build_model(HeuristicKind::t_star(3), ctx);
        REQUIRE(s.depth() == 1);
        using E = std::vector<std::pair<CandidateId, CandidateId>>;
        CHECK(s.levels[0].edges == E{{0, 2}, {1, 2}});
    }
    SUBCASE("biased ladder keeps only edges the voter could regret") {
        // (w,b) tie in reach at the outer radius; voter currently on w and
        // prefers w only to d
        const ScoreVector near({10, 9, 2, 1, 0});
        const auto p = PreferenceOrder::from_order({4, 2, 1, 0, 3}, Bias::Truth);
        const VoterContext c2{near, unit(5, 0), p, VotingRule::plurality(5)};
        const auto kind = HeuristicKind::truth_bias_ld(
            Metric::emd(), Radius::from_votes(0, near.total),
            Radius::from_votes(1, near.total));
        const auto s = build_model(kind, c2);
        REQUIRE(s.depth() == 2);
        CHECK(s.levels[0].empty());
        // raw outer graph has the (w,b) edge, but w is preferred to d only,
        // so the filtered level keeps nothing
        CHECK(s.levels[1].empty());
    }
    SUBCASE("biased ladder keeps a regrettable edge") {
        const ScoreVector near({10, 9, 2, 1, 0});
        // prefs w > b > c > d > e: the (w,b) edge pairs w with the less liked b
        const auto p = PreferenceOrder::from_order({0, 1, 2, 3, 4}, Bias::Truth);
        const VoterContext c2{near, unit(5, 0), p, VotingRule::plurality(5)};
        const auto kind = HeuristicKind::truth_bias_ld(
            Metric::emd(), Radius::from_votes(0, near.total),
            Radius::from_votes(1, near.total));
        const auto s = build_model(kind, c2);
        using E = std::vector<std::pair<CandidateId, CandidateId>>;
        CHECK(s.levels[1].edges == E{{0, 1}});
    }
}

TEST_CASE("justification: complete graph vs not-last") {
    SUBCASE("bottom-only preferences: strong justification, exhaustively") {
        for (int m = 2; m <= 4; ++m) {
            std::vector<VoterContext> contexts;
            const auto rule = VotingRule::plurality(m);
            for (int last = 0; last < m; ++last) {
                std::vector<int> ranks(m, 0);
                ranks[last] = 1;
                const PreferenceOrder prefs(ranks);
                for (const auto& cur : allowed_ballots(rule))
                    contexts.push_back(
                        VoterContext{ScoreVector(std::vector<int>(m, 1)), cur, prefs, rule});
            }
            const auto report =
                check_justification(HeuristicKind::not_last(), contexts);
            CHECK(report.condition_i);
            CHECK(report.condition_ii);
            CHECK(report.strong);
        }
    }
    SUBCASE("strict preferences: only the top candidate survives undominated") {
        // the complete graph exposes knife-edge ties between every pair, so a
        // middling candidate's ballot can backfire; (II) fails from m = 3 on
        std::vector<VoterContext> contexts;
        const auto rule = VotingRule::plurality(3);
        std::vector<CandidateId> perm{0, 1, 2};
        do {
            for (const auto& cur : allowed_ballots(rule))
                contexts.push_back(VoterContext{ScoreVector({1, 1, 1}), cur,
                                                PreferenceOrder::from_order(perm), rule});
        } while (std::next_permutation(perm.begin(), perm.end()));
        const auto report = check_justification(HeuristicKind::not_last(), contexts);
        CHECK(report.condition_i);
        CHECK(!report.condition_ii);
        REQUIRE(!report.counterexamples.empty());
        // in every counterexample the undominated set is exactly the favorite
        for (const auto& ce : report.counterexamples) {
            REQUIRE(ce.uod.size() == 1);
            CHECK(ce.uod[0] == unit(3, ce.ctx.prefs.top()));
        }
    }
}

TEST_CASE("justification: local dominance on property-satisfying contexts") {
    std::vector<VoterContext> contexts;
    const auto rule = VotingRule::plurality(3);
    const auto kind =
        HeuristicKind::local_dominance(Metric::emd(), Radius::from_votes(1, 6));
    for (int total : {5, 6}) {
        for (const auto& s : testutil::all_states_of_total(3, total)) {
            std::vector<CandidateId> perm{0, 1, 2};
            do {
                for (const auto& cur : allowed_ballots(rule)) {
                    HeuristicKind k = HeuristicKind::local_dominance(
                        Metric::emd(), Radius::from_votes(1, std::max(1, s.total)));
                    (void)k;
                    contexts.push_back(
                        VoterContext{s, cur, PreferenceOrder::from_order(perm), rule});
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    JustificationOptions opts;
    opts.require_spp = true;
    const auto report = check_justification(
        HeuristicKind::local_dominance(Metric::emd(), Radius::from_votes(1, 6)), contexts,
        opts);
    CHECK(report.contexts_checked > 100);
    CHECK(report.condition_i);
    // condition II genuinely fails at positive radii: the most preferred
    // dominating candidate can be unwinnable inside the ball, making her
    // ballot a wasted vote dominated by a lower-ranked rescuer
    CHECK(!report.condition_ii);
    REQUIRE(!report.counterexamples.empty());
    for (const auto& ce : report.counterexamples) {
        CHECK(!ce.broke_i);
        CHECK(ce.broke_ii);
    }
}

TEST_CASE("justification: local dominance with a full-information inner set") {
    // at radius zero the ball is the poll itself and the move is a best
    // response; justification holds exhaustively
    std::vector<VoterContext> contexts;
    const auto rule = VotingRule::plurality(3);
    for (int total : {4, 5, 6}) {
        for (const auto& s : testutil::all_states_of_total(3, total)) {
            std::vector<CandidateId> perm{0, 1, 2};
            do {
                for (const auto& cur : allowed_ballots(rule))
                    contexts.push_back(
                        VoterContext{s, cur, PreferenceOrder::from_order(perm), rule});
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    JustificationOptions opts;
    opts.require_spp = true;
    const auto report = check_justification(
        HeuristicKind::local_dominance(Metric::emd(), Radius::from_votes(0, 6)), contexts,
        opts);
    CHECK(report.contexts_checked > 500);
    CHECK(report.condition_i);
    CHECK(report.condition_ii);
}

TEST_CASE("the frozen wasted-vote counterexample") {
    // D = {c0, c1} both dominate vote-c2; the heuristic names c0 whose ballot
    // vote-c1 dominates (c0 cannot win anywhere in the one-vote ball)
    const ScoreVector s({0, 2, 4});
    const auto prefs = PreferenceOrder::from_order({0, 1, 2});
    const VoterContext ctx{s, Ballot({0, 0, 1}), prefs, VotingRule::plurality(3)};
    const auto kind =
        HeuristicKind::local_dominance(Metric::emd(), Radius::from_votes(1, 6));
    CHECK(evaluate_heuristic(kind, ctx) == std::vector<Ballot>{Ballot({1, 0, 0})});
    const auto model = heuristic_model(kind);
    const auto info = info_structure(model, ctx);
    CHECK(spp_check(*info, ctx.rule).holds);
    CHECK(uod_set(ctx, model) == std::vector<Ballot>{Ballot({0, 1, 0})});
    const auto structure = derive_structure(model, ctx);
    CHECK(od_check(Ballot({0, 1, 0}), Ballot({1, 0, 0}), prefs, structure, ctx.rule)
              .dominates);
    CHECK(od_oracle(Ballot({0, 1, 0}), Ballot({1, 0, 0}), prefs, *info, ctx.rule));
}

TEST_CASE("justification: t-star strongly matches its star model in plurality") {
    testutil::Rng rng(71);
    std::vector<VoterContext> contexts;
    const auto rule = VotingRule::plurality(4);
    const auto ballots = allowed_ballots(rule);
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<int> v(4);
        for (int& x : v) x = rng.below(15);
        contexts.push_back(VoterContext{ScoreVector(v),
                                        ballots[rng.below(static_cast<int>(ballots.size()))],
                                        testutil::random_strict_prefs(rng, 4), rule});
    }
    for (int T : {2, 3, 4}) {
        const auto report = check_justification(HeuristicKind::t_star(T), contexts);
        CHECK(report.condition_i);
        CHECK(report.condition_ii);
        CHECK(report.strong);
    }
}

TEST_CASE("t-star's strong claim breaks in borda once the demoted block can permute") {
    // frozen: m=3, T=3, prefs c0>c1>c2, current (0,1,2); both max-gap ballots
    // are undominated dominators but the heuristic names only one
    const ScoreVector s({5, 4, 3});
    const auto prefs = PreferenceOrder::from_order({0, 1, 2});
    const VoterContext ctx{s, Ballot({0, 1, 2}), prefs, VotingRule::borda(3)};
    const auto report = check_justification(HeuristicKind::t_star(3), {ctx});
    CHECK(report.condition_i);
    CHECK(report.condition_ii);
    CHECK(!report.strong);
    REQUIRE(report.counterexamples.size() == 1);
    const auto& ce = report.counterexamples[0];
    CHECK(ce.heuristic_out == std::vector<Ballot>{Ballot({2, 0, 1})});
    CHECK(ce.uod == std::vector<Ballot>{Ballot({2, 0, 1}), Ballot({2, 1, 0})});
}

TEST_CASE("plain t-pragmatist output can itself be dominated") {
    // frozen witness: borda m=4, T=2; demoting the passed-over leader beats
    // the pragmatist ballot on the star edge
    const ScoreVector s({10, 8, 5, 3});
    const auto prefs = PreferenceOrder::from_order({1, 2, 3, 0});
    const VoterContext ctx{s, Ballot({3, 0, 1, 2}), prefs, VotingRule::borda(4)};
    const auto kind = HeuristicKind::t_pragmatist(2);
    const auto h = evaluate_heuristic(kind, ctx);
    REQUIRE(h.size() == 1);
    const auto model = build_model(kind, ctx);
    const auto vstar = od_check(Ballot({0, 3, 1, 2}), h[0], prefs, model, ctx.rule);
    CHECK(vstar.dominates);
    // hence condition II fails against the undominated set
    const auto report = check_justification(kind, {ctx});
    CHECK(!report.condition_ii);
}

TEST_CASE("justification: truth and lazy bias on property-satisfying contexts") {
    const auto rule = VotingRule::plurality(3);
    for (Bias bias : {Bias::Truth, Bias::Lazy}) {
        std::vector<VoterContext> contexts;
        for (int total : {5, 6}) {
            for (const auto& s : testutil::all_states_of_total(3, total)) {
                std::vector<CandidateId> perm{0, 1, 2};
                do {
                    for (const auto& cur : allowed_ballots(rule))
                        contexts.push_back(VoterContext{
                            s, cur, PreferenceOrder::from_order(perm, bias), rule});
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
        }
        const int n = 6;
        const auto kind = bias == Bias::Truth
                              ? HeuristicKind::truth_bias_ld(Metric::emd(),
                                                             Radius::from_votes(0, n),
                                                             Radius::from_votes(1, n))
                              : HeuristicKind::lazy_bias_ld(Metric::emd(),
                                                            Radius::from_votes(0, n),
                                                            Radius::from_votes(1, n));
        JustificationOptions opts;
        opts.require_spp = true;
        const auto report = check_justification(kind, contexts, opts);
        CHECK(report.contexts_checked > 50);
        CHECK(report.condition_i);
        CHECK(report.condition_ii);
    }
}

TEST_SUITE_END();
