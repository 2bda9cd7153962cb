#include "ordvote/election_io.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace ordvote {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

}  // namespace

CandidateId Election::candidate(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError(0, "unknown candidate '" + name + "'");
    return static_cast<CandidateId>(it - names.begin());
}

Election parse_election(const std::string& text) {
    Election e;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    bool header_done = false;
    while (std::getline(is, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!header_done) {
            if (line.rfind("candidates:", 0) != 0)
                throw ParseError(line_no, "expected 'candidates:' header");
            e.names = split_ws(line.substr(11));
            if (e.names.size() < 2)
                throw ParseError(line_no, "need at least two candidates");
            for (size_t i = 0; i < e.names.size(); ++i)
                for (size_t j = i + 1; j < e.names.size(); ++j)
                    if (e.names[i] == e.names[j])
                        throw ParseError(line_no,
                                         "duplicate candidate '" + e.names[i] + "'");
            header_done = true;
            continue;
        }
        if (line.rfind("poll:", 0) == 0) {
            if (e.poll)
                throw ParseError(line_no, "poll given twice");
            if (!e.prefs.empty())
                throw ParseError(line_no, "poll must precede the voter lines");
            const auto toks = split_ws(line.substr(5));
            if (static_cast<int>(toks.size()) != e.m())
                throw ParseError(line_no, "poll needs one total per candidate");
            std::vector<int> scores;
            for (const auto& t : toks) {
                try {
                    scores.push_back(std::stoi(t));
                } catch (...) {
                    throw ParseError(line_no, "bad poll entry '" + t + "'");
                }
                if (scores.back() < 0) throw ParseError(line_no, "negative poll entry");
            }
            e.poll = ScoreVector(std::move(scores));
            continue;
        }
        // voter line: prefs [| ballot]
        std::string pref_part = line, ballot_part;
        const auto bar = line.find('|');
        if (bar != std::string::npos) {
            pref_part = trim(line.substr(0, bar));
            ballot_part = trim(line.substr(bar + 1));
        }
        std::vector<int> ranks(e.m(), -1);
        int klass = 0;
        std::istringstream ps(pref_part);
        std::string chunk;
        while (std::getline(ps, chunk, '>')) {
            std::istringstream cs(trim(chunk));
            std::string name;
            bool any = false;
            while (std::getline(cs, name, '=')) {
                name = trim(name);
                if (name.empty())
                    throw ParseError(line_no, "empty candidate name in preference");
                const auto it = std::find(e.names.begin(), e.names.end(), name);
                if (it == e.names.end())
                    throw ParseError(line_no, "unknown candidate '" + name + "'");
                const int c = static_cast<int>(it - e.names.begin());
                if (ranks[c] != -1)
                    throw ParseError(line_no,
                                     "candidate '" + name + "' listed twice");
                ranks[c] = klass;
                any = true;
            }
            if (any) ++klass;
        }
        for (int c = 0; c < e.m(); ++c)
            if (ranks[c] == -1)
                throw ParseError(line_no, "candidate '" + e.names[c] + "' missing");
        e.prefs.emplace_back(std::move(ranks));
        if (!ballot_part.empty()) {
            const auto toks = split_ws(ballot_part);
            if (static_cast<int>(toks.size()) != e.m())
                throw ParseError(line_no, "ballot needs one score per candidate");
            std::vector<int> scores;
            for (const auto& t : toks) {
                try {
                    scores.push_back(std::stoi(t));
                } catch (...) {
                    throw ParseError(line_no, "bad ballot entry '" + t + "'");
                }
            }
            e.ballots.emplace_back(Ballot(std::move(scores)));
        } else {
            e.ballots.emplace_back(std::nullopt);
        }
    }
    if (!header_done) throw ParseError(line_no, "missing 'candidates:' header");
    return e;
}

std::string write_election(const Election& e) {
    std::ostringstream os;
    os << "candidates:";
    for (const auto& n : e.names) os << " " << n;
    os << "\n";
    if (e.poll) {
        os << "poll:";
        for (int v : e.poll->scores) os << " " << v;
        os << "\n";
    }
    for (int i = 0; i < e.voters(); ++i) {
        const auto& ranks = e.prefs[i].ranks;
        // emit indifference classes from best to worst
        std::vector<int> distinct = ranks;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        bool first_class = true;
        for (int r : distinct) {
            if (!first_class) os << ">";
            bool first_name = true;
            for (int c = 0; c < e.m(); ++c) {
                if (ranks[c] != r) continue;
                if (!first_name) os << "=";
                os << e.names[c];
                first_name = false;
            }
            first_class = false;
        }
        if (i < static_cast<int>(e.ballots.size()) && e.ballots[i]) {
            os << " |";
            for (int v : e.ballots[i]->scores) os << " " << v;
        }
        os << "\n";
    }
    return os.str();
}

std::vector<Radius> resolve_radii(const std::vector<RadiusSpec>& specs, int total) {
    std::vector<Radius> out;
    for (const auto& spec : specs) {
        if (spec.is_percent) out.push_back(Radius::from_fraction(spec.percent, total));
        else out.push_back(Radius::from_votes(spec.votes, total));
    }
    return out;
}

namespace {

VotingRule rule_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int m = j.at("m").get<int>();
    if (kind == "plurality") return VotingRule::plurality(m);
    if (kind == "veto") return VotingRule::veto(m);
    if (kind == "borda") return VotingRule::borda(m);
    if (kind == "approval") return VotingRule::approval(m);
    if (kind == "k-approval") return VotingRule::k_approval(m, j.at("k").get<int>());
    throw ConfigError("unknown rule kind '" + kind + "'");
}

Metric metric_from_json(const nlohmann::json& j) {
    const std::string kind = j.value("kind", "emd");
    const int n = j.value("normalization", 0);
    if (kind == "emd") return Metric::emd(n);
    if (kind == "l1") return Metric::l1(n);
    if (kind == "linf") return Metric::linf(n);
    if (kind == "candidate-wise") {
        std::vector<Fraction> weights;
        for (const auto& w : j.at("weights")) weights.push_back(Fraction(w.get<int>()));
        return Metric::candidate_wise(n, std::move(weights));
    }
    throw ConfigError("unknown metric kind '" + kind + "'");
}

RadiusSpec radius_from_json(const nlohmann::json& j) {
    if (j.contains("percent"))
        return RadiusSpec::from_percent(Fraction(j.at("percent").get<int>(), 100));
    if (j.contains("permille"))
        return RadiusSpec::from_percent(Fraction(j.at("permille").get<int>(), 1000));
    if (j.contains("votes")) return RadiusSpec::from_votes(j.at("votes").get<int>());
    throw ConfigError("radius needs 'percent', 'permille' or 'votes'");
}

}  // namespace

RunConfig load_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("config: ") + e.what());
    }
    try {
        RunConfig c;
        c.rule = rule_from_json(j.at("rule"));
        if (j.contains("metric")) c.metric = metric_from_json(j.at("metric"));
        if (j.contains("radii"))
            for (const auto& r : j.at("radii")) c.radii.push_back(radius_from_json(r));
        c.model = j.value("model", std::string("distance"));
        c.top_T = j.value("T", 2);
        c.heuristic_name = j.value("heuristic", std::string(""));
        if (j.contains("scheduler")) {
            const std::string s = j.at("scheduler").get<std::string>();
            if (s == "round-robin") c.scheduler = Scheduler::round_robin();
            else if (s == "random") c.scheduler = Scheduler::random_seeded(0);
            else throw ConfigError("unknown scheduler '" + s + "'");
        }
        if (j.contains("policy")) {
            const std::string p = j.at("policy").get<std::string>();
            if (p == "best-uod") c.policy = MovePolicy::best_uod();
            else if (p == "any-od") c.policy = MovePolicy::any_od();
            else if (p == "heuristic") c.policy = {PolicyKind::Heuristic, std::nullopt};
            else throw ConfigError("unknown policy '" + p + "'");
        }
        c.seed = j.value("seed", 1u);
        c.ball_cap = j.value("ball_cap", static_cast<std::int64_t>(10'000'000));
        c.step_cap = j.value("step_cap", 0);
        c.trials = j.value("trials", 0);
        c.truthful_start = j.value("truthful_start", false);
        c.voter = j.value("voter", 0);
        c.election_path = j.value("election", std::string(""));
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

EpistemicModel config_model(const RunConfig& config, int total) {
    const auto radii = resolve_radii(config.radii, total);
    if (config.model == "distance") {
        if (radii.empty()) throw ConfigError("distance model needs radii");
        return EpistemicModel::distance_based(config.metric, radii);
    }
    if (config.model == "all-pairs") return EpistemicModel::all_pairs();
    if (config.model == "top-star") return EpistemicModel::top_star(config.top_T);
    if (config.model == "leader-star") return EpistemicModel::leader_star();
    if (config.model == "full-information") return EpistemicModel::full_information();
    if (config.model == "local-dominance") {
        if (radii.size() != 1) throw ConfigError("local dominance takes one radius");
        return EpistemicModel::local_dominance(config.metric, radii[0]);
    }
    if (config.model == "biased-local-dominance") {
        if (radii.size() != 2)
            throw ConfigError("biased local dominance takes two radii");
        return EpistemicModel::biased_local_dominance(config.metric, radii[0], radii[1]);
    }
    throw ConfigError("unknown model '" + config.model + "'");
}

std::optional<HeuristicKind> config_heuristic(const RunConfig& config, int total) {
    if (config.heuristic_name.empty()) return std::nullopt;
    const auto radii = resolve_radii(config.radii, total);
    const std::string& h = config.heuristic_name;
    if (h == "not-last") return HeuristicKind::not_last();
    if (h == "local-dominance") {
        if (radii.empty()) throw ConfigError("local-dominance heuristic needs a radius");
        return HeuristicKind::local_dominance(config.metric, radii[0]);
    }
    if (h == "truth-bias-ld") {
        if (radii.size() < 2) throw ConfigError("truth-bias-ld needs two radii");
        return HeuristicKind::truth_bias_ld(config.metric, radii[0], radii[1]);
    }
    if (h == "lazy-bias-ld") {
        if (radii.size() < 2) throw ConfigError("lazy-bias-ld needs two radii");
        return HeuristicKind::lazy_bias_ld(config.metric, radii[0], radii[1]);
    }
    if (h == "t-pragmatist") return HeuristicKind::t_pragmatist(config.top_T);
    if (h == "t-star") return HeuristicKind::t_star(config.top_T);
    if (h == "leader-rule") return HeuristicKind::leader_rule();
    throw ConfigError("unknown heuristic '" + h + "'");
}

}  // namespace ordvote
