#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "hazsearch/rng.hpp"
#include "hazsearch/safety_metrics.hpp"
#include "hazsearch/simulator.hpp"

namespace hazsearch {

/// Search hyperparameters. k_pw and alpha control progressive widening,
/// exploration_c the revisit bonus, unsafe_reward (R_E) the terminal reward
/// for provoking an unsafe state.
struct SearchParams {
    double k_pw = 1.0;
    double alpha = 0.5;
    double exploration_c = 1.0;
    double unsafe_reward = 1.0;
    int k_max = 8;
    int max_iterations = 320;
    std::uint64_t seed = 0;
    bool stop_on_first = false;
    bool log_uct = false;  // experimental: log-based UCT instead of the plain ratio
    int reach_budget = 0;  // 0 = scenario default
};

/// Reward for the state reached by the k-th action of an episode:
/// R_E if unsafe, -1/c_D at the horizon without an unsafe state, 0 otherwise.
inline double reward(bool unsafe, int step, int k_max, double c_d, double unsafe_reward) {
    if (unsafe) return unsafe_reward;
    if (step == k_max) return -1.0 / c_d;
    return 0.0;
}

struct ActionStats {
    int action = 0;
    int visits = 0;   // N(s,a)
    double q = 0.0;   // Q(s,a), incremental mean of backpropagated returns
    int child = -1;   // index into the tree node pool
};

/// Search-tree node. visits counts the creation visit plus one per action
/// selected here, so visits == 1 + sum of the per-action counts.
struct TreeNode {
    int visits = 1;
    std::vector<ActionStats> tried;

    ActionStats* find(int action) {
        for (auto& t : tried)
            if (t.action == action) return &t;
        return nullptr;
    }
    const ActionStats* find(int action) const {
        for (const auto& t : tried)
            if (t.action == action) return &t;
        return nullptr;
    }
};

enum class SelectKind { Widen, Revisit };

struct SelectDecision {
    SelectKind kind = SelectKind::Widen;
    int action = 0;
};

/// Double-progressive-widening action selection. Widen (sample an untried
/// action uniformly) while |X(s)| < k_pw * N(s)^alpha; otherwise revisit the
/// tried action maximizing Q(s,a) + c * sqrt(N(s)/N(s,a)), ties broken by
/// the lowest action index. With all 36 actions tried, widening falls
/// through to a revisit.
inline SelectDecision select_action(const TreeNode& node, const SearchParams& p, CounterRng& rng) {
    const double cap = p.k_pw * std::pow(static_cast<double>(node.visits), p.alpha);
    const int tried = static_cast<int>(node.tried.size());
    if (tried < cap && tried < kNumActions) {
        int a = 0;
        do {
            a = static_cast<int>(rng.next_below(kNumActions));
        } while (node.find(a) != nullptr);
        return {SelectKind::Widen, a};
    }
    double best_score = -std::numeric_limits<double>::infinity();
    int best_action = -1;
    for (const auto& t : node.tried) {
        const double bonus = p.log_uct
                                 ? std::sqrt(std::log(static_cast<double>(node.visits)) / t.visits)
                                 : std::sqrt(static_cast<double>(node.visits) / t.visits);
        const double score = t.q + p.exploration_c * bonus;
        if (score > best_score || (score == best_score && t.action < best_action)) {
            best_score = score;
            best_action = t.action;
        }
    }
    return {SelectKind::Revisit, best_action};
}

struct PathEdge {
    int node = 0;
    int action = 0;
};

/// Incremental-mean backpropagation: for each edge from the root to the
/// leaf, q is the undiscounted sum of rewards from that step to the episode
/// end, and Q(s,a) += (q - Q) / N(s,a). Counts must already be incremented.
inline void backpropagate(std::vector<TreeNode>& tree, const std::vector<PathEdge>& path,
                          const std::vector<double>& rewards) {
    double suffix = 0.0;
    for (std::size_t i = rewards.size(); i-- > 0;) {
        suffix += rewards[i];
        if (i < path.size()) {
            ActionStats* st = tree[path[i].node].find(path[i].action);
            st->q += (suffix - st->q) / st->visits;
        }
    }
}

enum class TerminalKind { Unsafe, Horizon };

struct EpisodeStep {
    int action = 0;
    double c_d = 0.0;
    double reward = 0.0;
};

struct EpisodeRecord {
    int index = 0;
    std::vector<EpisodeStep> steps;
    TerminalKind terminal = TerminalKind::Horizon;
    std::optional<HazardReport> hazard;  // present iff terminal == Unsafe
    int hazard_step = -1;                // 1-based step of the hazard
};

struct SearchResult {
    std::vector<EpisodeRecord> episodes;
    std::vector<HazardReport> hazards;
    std::optional<int> first_hazard_iteration;  // 1-based episode index
    int node_count = 1;
    int max_depth = 0;
    SearchParams params;
};

/// Seed stream for the per-step reachability check. Deliberately independent
/// of the run seed so that replaying an action sequence reproduces the same
/// samples and therefore the identical hazard.
inline std::uint64_t reach_seed_for_step(int step) {
    return derive_seed(0x726561636830ULL, static_cast<std::uint64_t>(step));
}

/// Evaluation of the state after one action: reachability check, unsafe
/// predicate, and danger index, sharing one contact gathering pass.
struct StepEvaluation {
    DangerAssessment assessment;
    std::optional<HazardReport> hazard;
    std::optional<ReachResult> reach;
};

inline StepEvaluation evaluate_step(const Simulator& sim, const SimState& s, int step,
                                    int reach_budget_override = 0) {
    const Scenario& sc = sim.scenario();
    const int budget = reach_budget_override > 0 ? reach_budget_override : sc.reach_budget;
    const HumanBody body = human_body(s.human, sc.human);
    const auto links = sim.link_shapes(s);
    const auto speed_fn = [&](int robot, int link, const Vec3& point) {
        return sim.robot_point_speed(s, robot, link, point);
    };
    StepEvaluation ev;
    ev.reach = reach_check(body, sc.arm, links, sim.statics(), budget,
                           reach_seed_for_step(step), speed_fn);
    ev.hazard = is_unsafe(sim, s, ev.reach);
    ev.assessment = danger_index(sim, s, ev.reach);
    return ev;
}

namespace search_detail {

struct EpisodeOutcome {
    EpisodeRecord record;
    std::vector<double> rewards;
};

inline void finish_step(const Simulator& sim, const SimState& s, int step, int action,
                        const SearchParams& p, EpisodeOutcome& out, bool& unsafe) {
    const StepEvaluation ev = evaluate_step(sim, s, step, p.reach_budget);
    unsafe = ev.hazard.has_value();
    const double r = reward(unsafe, step, p.k_max, ev.assessment.c_d, p.unsafe_reward);
    out.rewards.push_back(r);
    out.record.steps.push_back({action, ev.assessment.c_d, r});
    if (unsafe) {
        out.record.terminal = TerminalKind::Unsafe;
        out.record.hazard = ev.hazard;
        out.record.hazard_step = step;
        out.record.hazard->actions.clear();
        for (const auto& st : out.record.steps) out.record.hazard->actions.push_back(st.action);
    }
}

inline void collect_hazard(SearchResult& result, const EpisodeRecord& rec) {
    if (!rec.hazard) return;
    result.hazards.push_back(*rec.hazard);
    if (!result.first_hazard_iteration) result.first_hazard_iteration = rec.index + 1;
}

}  // namespace search_detail

/// MCTS with double progressive widening. Each iteration starts from s0,
/// descends the tree, rolls out uniformly at random from the first
/// newly-created node, and backpropagates the undiscounted returns.
/// Deterministic for a given seed.
inline SearchResult mcts_search(const Simulator& sim, const SearchParams& params) {
    SearchResult result;
    result.params = params;
    std::vector<TreeNode> tree(1);
    const SimState s0 = sim.reset();

    for (int episode = 0; episode < params.max_iterations; ++episode) {
        CounterRng rng(derive_seed(params.seed, static_cast<std::uint64_t>(episode)));
        search_detail::EpisodeOutcome out;
        out.record.index = episode;

        SimState s = s0;
        std::vector<PathEdge> path;
        int node = 0;
        bool rollout = false;
        bool unsafe = false;
        int depth = 0;

        for (int step = 1; step <= params.k_max && !unsafe; ++step) {
            int action;
            if (!rollout) {
                const SelectDecision d = select_action(tree[node], params, rng);
                action = d.action;
                tree[node].visits += 1;
                ActionStats* st = tree[node].find(action);
                if (st == nullptr) {
                    tree[node].tried.push_back({action, 0, 0.0, -1});
                    st = &tree[node].tried.back();
                }
                st->visits += 1;
                path.push_back({node, action});
                if (st->child < 0) {
                    // New node: descend into it once, then leave the tree.
                    st->child = static_cast<int>(tree.size());
                    tree.emplace_back();
                    rollout = true;
                }
                node = st->child;
                depth = step;
            } else {
                action = static_cast<int>(rng.next_below(kNumActions));
            }
            s = sim.step(s, action_from_index(action));
            search_detail::finish_step(sim, s, step, action, params, out, unsafe);
        }

        backpropagate(tree, path, out.rewards);
        result.max_depth = std::max(result.max_depth, depth);
        search_detail::collect_hazard(result, out.record);
        result.episodes.push_back(std::move(out.record));
        if (params.stop_on_first && result.first_hazard_iteration) break;
    }
    result.node_count = static_cast<int>(tree.size());
    return result;
}

/// Uniform random-search baseline: every episode is a pure uniform rollout
/// from s0; the evaluation pipeline (including the reachability check) is
/// identical to the MCTS variant.
inline SearchResult random_search(const Simulator& sim, const SearchParams& params) {
    SearchResult result;
    result.params = params;
    const SimState s0 = sim.reset();

    for (int episode = 0; episode < params.max_iterations; ++episode) {
        CounterRng rng(derive_seed(params.seed, static_cast<std::uint64_t>(episode)));
        search_detail::EpisodeOutcome out;
        out.record.index = episode;
        SimState s = s0;
        bool unsafe = false;
        for (int step = 1; step <= params.k_max && !unsafe; ++step) {
            const int action = static_cast<int>(rng.next_below(kNumActions));
            s = sim.step(s, action_from_index(action));
            search_detail::finish_step(sim, s, step, action, params, out, unsafe);
        }
        search_detail::collect_hazard(result, out.record);
        result.episodes.push_back(std::move(out.record));
        if (params.stop_on_first && result.first_hazard_iteration) break;
    }
    result.node_count = 0;
    return result;
}

/// Re-execute a recorded action sequence against a fresh simulator and
/// return the per-step evaluations. Used for hazard replay verification.
inline EpisodeRecord replay_actions(const Simulator& sim, const std::vector<int>& actions,
                                    const SearchParams& params,
                                    const SubstepObserver& observer = {}) {
    SimState s = sim.reset();
    if (observer) {
        SubstepFrame f;
        f.time_s = s.time_s;
        f.human = s.human;
        for (const auto& rs : s.robots) {
            f.phases.push_back(rs.phase_s);
            f.factors.push_back(rs.factor);
        }
        observer(f);
    }
    bool unsafe = false;
    search_detail::EpisodeOutcome out;
    for (std::size_t i = 0; i < actions.size() && !unsafe; ++i) {
        const int step = static_cast<int>(i) + 1;
        s = sim.step(s, action_from_index(actions[i]), observer);
        search_detail::finish_step(sim, s, step, actions[i], params, out, unsafe);
    }
    return out.record;
}

}  // namespace hazsearch
