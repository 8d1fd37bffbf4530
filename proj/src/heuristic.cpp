#include "sleeproute/heuristic.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <tuple>

#include "sleeproute/error.hpp"
#include "random.hpp"

namespace sleeproute {

std::string_view to_string(Selection s) {
    switch (s) {
    case Selection::Random: return "random";
    case Selection::MaxSP: return "max-sp";
    case Selection::MinSP: return "min-sp";
    }
    return "?";
}

PartitionState PartitionState::initial(const RoutingTree& tree) {
    PartitionState st;
    st.parent = tree.parent;
    st.state.assign(tree.parent.size(), NodeState::Remaining);
    st.state[kSink] = NodeState::Active;
    return st;
}

std::vector<NodeId> PartitionState::members(NodeState which) const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < state.size(); ++v)
        if (state[v] == which) out.push_back(v);
    return out;
}

bool PartitionState::has_remaining() const {
    return std::find(state.begin(), state.end(), NodeState::Remaining) != state.end();
}

PartitionState mark_node_state(PartitionState st, NodeId s, const ConstellationSet& constellations) {
    if (s >= st.state.size() || st.state[s] != NodeState::Remaining)
        throw Error(Errc::NodeNotRemaining, "node " + std::to_string(s) + " is not in the remaining set");

    // Walk up to the first active ancestor; the sink is always active.
    std::vector<NodeId> chain;
    for (NodeId v = s; st.state[v] != NodeState::Active; v = st.parent[v]) {
        chain.push_back(v);
        st.state[v] = NodeState::Active;
        if (chain.size() > st.state.size())
            throw std::logic_error("routing tree parent pointers contain a cycle");
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        for (NodeId mate : constellations.group(constellations.group_of(*it)))
            if (st.state[mate] == NodeState::Remaining) st.state[mate] = NodeState::Dormant;
    }
    return st;
}

ActivePlan plan_from_tree(const ProblemInstance& instance, const RoutingTree& tree, const std::vector<bool>& active) {
    ActivePlan plan;
    for (NodeId v = 0; v < active.size(); ++v) {
        if (!active[v]) continue;
        plan.active.push_back(v);
        if (v != kSink) {
            NodeId p = tree.parent[v];
            plan.tree_links.push_back({std::min(v, p), std::max(v, p),
                                       instance.network.link(*instance.network.link_index(v, p)).delivery_probability});
        }
    }
    std::sort(plan.tree_links.begin(), plan.tree_links.end(),
              [](const Link& x, const Link& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    plan.objective = plan_objective(instance, plan.active, plan.tree_links);
    return plan;
}

ActivePlan solve_heuristic(const ProblemInstance& instance, const SelectionPolicy& policy) {
    instance.validate();
    const RoutingTree tree = shortest_path_tree(instance.network, instance.link_costs);
    PartitionState st = PartitionState::initial(tree);
    std::mt19937_64 rng(policy.seed);

    while (true) {
        std::vector<NodeId> remaining = st.members(NodeState::Remaining);
        if (remaining.empty()) break;
        NodeId pick = remaining.front();
        switch (policy.variant) {
        case Selection::Random:
            pick = remaining[detail::uniform_index(rng, remaining.size())];
            break;
        case Selection::MaxSP:
            // min_element returns the first extremum, i.e. the smaller id on ties.
            pick = *std::min_element(remaining.begin(), remaining.end(), [&](NodeId x, NodeId y) {
                return instance.node_costs[x] < instance.node_costs[y];
            });
            break;
        case Selection::MinSP:
            pick = *std::min_element(remaining.begin(), remaining.end(), [&](NodeId x, NodeId y) {
                return instance.node_costs[x] > instance.node_costs[y];
            });
            break;
        }
        st = mark_node_state(std::move(st), pick, instance.constellations);
    }

    std::vector<bool> active(st.state.size());
    for (NodeId v = 0; v < st.state.size(); ++v) active[v] = st.state[v] == NodeState::Active;
    ActivePlan plan = plan_from_tree(instance, tree, active);
    require_feasible(instance, plan, "solve_heuristic");
    return plan;
}

ActivePlan all_active_plan(const ProblemInstance& instance) {
    instance.validate();
    const RoutingTree tree = shortest_path_tree(instance.network, instance.link_costs);
    ActivePlan plan = plan_from_tree(instance, tree, std::vector<bool>(instance.network.node_count(), true));
    require_feasible(instance, plan, "all_active_plan");
    return plan;
}

}  // namespace sleeproute
