#include "sleeproute/problem.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sleeproute/error.hpp"

namespace sleeproute {

void ProblemInstance::validate() const {
    const std::size_t n = network.node_count();
    if (constellations.node_count() != n)
        throw Error(Errc::InvalidArgument, "constellations cover a different number of nodes than the network");
    if (node_costs.size() != n) throw Error(Errc::InvalidArgument, "one node cost per node is required");
    if (link_costs.size() != network.links().size())
        throw Error(Errc::InvalidArgument, "one link cost per link is required");
    if (node_costs[kSink] != Energy{}) throw Error(Errc::InvalidArgument, "the sink's node cost must be zero");
    for (NodeId v = 1; v < n; ++v)
        if (node_costs[v] <= Energy{}) throw Error(Errc::InvalidArgument, "node costs must be positive");
    for (Energy c : link_costs)
        if (c <= Energy{}) throw Error(Errc::InvalidArgument, "link costs must be positive");
}

ProblemInstance build_instance(Network network, ConstellationSet constellations, const EnergyModel& model,
                               const PeriodConfig& config, const std::vector<Energy>& residuals,
                               bool count_sink_rx) {
    const std::size_t n = network.node_count();
    if (residuals.size() != n) throw Error(Errc::InvalidArgument, "one residual per node is required");

    Energy max_residual{};
    for (NodeId v = 1; v < n; ++v) max_residual = std::max(max_residual, residuals[v]);

    ProblemInstance inst;
    inst.node_costs.assign(n, Energy{});
    for (NodeId v = 1; v < n; ++v)
        inst.node_costs[v] = active_node_cost(model, config, residuals[v], max_residual);
    inst.link_costs.reserve(network.links().size());
    for (const Link& l : network.links()) {
        if (!count_sink_rx && l.a == kSink)
            inst.link_costs.push_back(tx_cost(model, l.delivery_probability));
        else
            inst.link_costs.push_back(link_cost(model, l.delivery_probability));
    }
    inst.network = std::move(network);
    inst.constellations = std::move(constellations);
    inst.validate();
    return inst;
}

Energy plan_objective(const ProblemInstance& instance, const std::vector<NodeId>& active,
                      const std::vector<Link>& links) {
    Energy total{};
    for (NodeId v : active)
        if (v != kSink) total += instance.node_costs.at(v);
    for (const Link& l : links) {
        auto k = instance.network.link_index(l.a, l.b);
        if (!k) throw Error(Errc::InvalidArgument, "plan uses a link that does not exist");
        total += instance.link_costs[*k];
    }
    return total;
}

std::vector<std::string> plan_violations(const ProblemInstance& instance, const ActivePlan& plan) {
    std::vector<std::string> out;
    const std::size_t n = instance.network.node_count();

    std::vector<bool> active(n, false);
    for (NodeId v : plan.active) {
        if (v >= n) {
            out.push_back("active node " + std::to_string(v) + " is out of range");
            return out;
        }
        if (active[v]) out.push_back("active node " + std::to_string(v) + " listed twice");
        active[v] = true;
    }
    if (!active[kSink]) out.push_back("sink is not active");

    std::size_t count = static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
    if (plan.tree_links.size() + 1 != count)
        out.push_back("cardinality: " + std::to_string(plan.tree_links.size()) + " links for " +
                      std::to_string(count) + " active nodes");

    std::vector<std::size_t> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    bool links_exist = true;
    for (const Link& l : plan.tree_links) {
        if (!instance.network.link_index(l.a, l.b)) {
            out.push_back("link {" + std::to_string(l.a) + "," + std::to_string(l.b) + "} does not exist");
            links_exist = false;
            continue;
        }
        if (!active[l.a] || !active[l.b])
            out.push_back("endpoint: link {" + std::to_string(l.a) + "," + std::to_string(l.b) +
                          "} has an inactive end");
        std::size_t ra = find(l.a), rb = find(l.b);
        if (ra == rb)
            out.push_back("cycle: link {" + std::to_string(l.a) + "," + std::to_string(l.b) + "} closes a cycle");
        else
            root[std::max(ra, rb)] = std::min(ra, rb);
    }
    for (NodeId v = 0; v < n; ++v)
        if (active[v] && find(v) != find(kSink))
            out.push_back("connectivity: active node " + std::to_string(v) + " is not joined to the sink");

    if (active[kSink] && !covers_all(instance.constellations, active))
        out.push_back("coverage: some constellation has no active node");

    if (links_exist) {
        Energy expected = plan_objective(instance, plan.active, plan.tree_links);
        if (expected != plan.objective)
            out.push_back("objective: stored " + format_mj(plan.objective) + " mJ, recomputed " +
                          format_mj(expected) + " mJ");
    }
    return out;
}

void require_feasible(const ProblemInstance& instance, const ActivePlan& plan, const char* solver) {
    auto problems = plan_violations(instance, plan);
    if (problems.empty()) return;
    std::string msg = std::string(solver) + " produced an infeasible plan:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw std::logic_error(msg);
}

}  // namespace sleeproute
