#pragma once

#include <string>
#include <vector>

#include "sleeproute/constellation.hpp"
#include "sleeproute/energy.hpp"
#include "sleeproute/netmodel.hpp"

namespace sleeproute {

/// One period's selection problem: pick a connected active set covering
/// every constellation, minimizing active-node plus tree-link cost.
struct ProblemInstance {
    Network network;
    ConstellationSet constellations;
    std::vector<Energy> node_costs;  ///< node_costs[kSink] == 0
    LinkCosts link_costs;

    /// Throws InvalidArgument on size mismatches, a nonzero sink cost or a
    /// non-positive cost.
    void validate() const;
};

struct ActivePlan {
    std::vector<NodeId> active;  ///< ascending, contains the sink
    std::vector<Link> tree_links;  ///< ascending by (a, b)
    Energy objective;

    friend bool operator==(const ActivePlan&, const ActivePlan&) = default;
};

/// Builds costs from residual energies: node cost from the active-cost
/// formula (max residual taken over sensing nodes), link cost from
/// delivery probability. With count_sink_rx off, sink-incident links carry
/// only the sender's share.
ProblemInstance build_instance(Network network, ConstellationSet constellations, const EnergyModel& model,
                               const PeriodConfig& config, const std::vector<Energy>& residuals,
                               bool count_sink_rx = true);

/// Sum of non-sink node costs over `active` plus link costs over `links`.
Energy plan_objective(const ProblemInstance& instance, const std::vector<NodeId>& active,
                      const std::vector<Link>& links);

/// Empty when the plan is feasible: every tree link exists and has both ends
/// active, |links| = |active| - 1, the links connect the active set, every
/// constellation is represented, and the stored objective is correct.
std::vector<std::string> plan_violations(const ProblemInstance& instance, const ActivePlan& plan);

/// Throws std::logic_error listing violations. Solvers call this on their
/// own output.
void require_feasible(const ProblemInstance& instance, const ActivePlan& plan, const char* solver);

}  // namespace sleeproute
