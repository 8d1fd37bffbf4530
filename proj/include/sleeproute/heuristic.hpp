#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sleeproute/problem.hpp"

namespace sleeproute {

enum class Selection {
    Random,  ///< uniform over remaining nodes, driven by the policy seed
    MaxSP,   ///< cheapest active cost first (highest selection probability)
    MinSP,   ///< most expensive active cost first (worst-case probe)
};

struct SelectionPolicy {
    Selection variant = Selection::MaxSP;
    std::uint64_t seed = 0;  ///< Random only
};

enum class NodeState : std::uint8_t { Remaining, Active, Dormant };

/// Working partition of the nodes into remaining (S), active (A) and
/// dormant (D), together with the routing-tree parents.
struct PartitionState {
    std::vector<NodeState> state;
    std::vector<NodeId> parent;

    /// Everything remaining except the sink, which starts active.
    static PartitionState initial(const RoutingTree& tree);

    std::vector<NodeId> members(NodeState which) const;
    bool has_remaining() const;
};

/// Activates `s` and every inactive ancestor on its path to the sink, then
/// moves the still-remaining members of each newly activated node's
/// constellation to the dormant set. Ancestors are processed before `s`,
/// which matches the recursive formulation.
///
/// An ancestor that is already dormant is woken up: leaving it asleep would
/// cut `s` off from the sink.
///
/// Throws NodeNotRemaining when `s` is not in S.
PartitionState mark_node_state(PartitionState state, NodeId s, const ConstellationSet& constellations);

/// Two-stage heuristic: build the shortest-path tree on link costs, pick
/// representatives one at a time by the policy, then keep every tree edge
/// whose ends are both active. Output is checked for feasibility.
ActivePlan solve_heuristic(const ProblemInstance& instance, const SelectionPolicy& policy);

/// Every node active, linked along the shortest-path tree.
ActivePlan all_active_plan(const ProblemInstance& instance);

/// Tree edges (child, parent) whose ends are both active.
ActivePlan plan_from_tree(const ProblemInstance& instance, const RoutingTree& tree,
                          const std::vector<bool>& active);

std::string_view to_string(Selection s);

}  // namespace sleeproute
