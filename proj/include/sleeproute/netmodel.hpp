#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sleeproute/energy.hpp"

namespace sleeproute {

/// Dense node index. Index 0 is always the sink.
using NodeId = std::size_t;
inline constexpr NodeId kSink = 0;

/// Undirected radio link. Stored with a < b.
struct Link {
    NodeId a = 0;
    NodeId b = 0;
    double delivery_probability = 1.0;

    friend bool operator==(const Link&, const Link&) = default;
};

struct Incidence {
    NodeId node;
    std::size_t link;
};

/// Connected, undirected sensor network. Links are kept in lexicographic
/// (a, b) order, so a link index doubles as its rank in that order.
class Network {
public:
    Network() = default;

    /// Validates and normalizes the edge list. Throws EndpointOutOfRange,
    /// SelfLoop, DuplicateLink, DisconnectedGraph, or InvalidArgument (for
    /// node_count < 2 or a delivery probability outside (0, 1]).
    static Network build(std::size_t node_count, std::vector<Link> links);

    std::size_t node_count() const { return node_count_; }
    std::span<const Link> links() const { return links_; }
    const Link& link(std::size_t index) const { return links_[index]; }
    std::span<const Incidence> neighbors(NodeId node) const { return adjacency_[node]; }

    bool adjacent(NodeId i, NodeId j) const { return link_index(i, j).has_value(); }
    std::optional<std::size_t> link_index(NodeId i, NodeId j) const;

private:
    std::size_t node_count_ = 0;
    std::vector<Link> links_;
    std::vector<std::vector<Incidence>> adjacency_;
    std::vector<std::int32_t> index_;  // node_count_^2, -1 when absent
};

/// Per-link costs parallel to Network::links().
using LinkCosts = std::vector<Energy>;

LinkCosts link_costs(const Network& network, const EnergyModel& model);

struct RoutingTree {
    std::vector<NodeId> parent;     ///< parent[kSink] == kSink
    std::vector<Energy> path_cost;  ///< cheapest cost to reach the sink
};

/// Dijkstra from the sink. Among equally cheap parents the smaller NodeId wins.
RoutingTree shortest_path_tree(const Network& network, std::span<const Energy> costs);

/// Whether the subgraph induced on `subset` is connected. Throws SinkMissing
/// when the sink is not in `subset`.
bool is_connected(const Network& network, std::span<const NodeId> subset);

struct SpanningTree {
    std::vector<std::size_t> links;  ///< indices into Network::links(), ascending
    Energy total;
};

/// Minimum spanning tree of the subgraph induced on `subset` (Kruskal, ties
/// broken by link order). nullopt when the induced subgraph is disconnected.
std::optional<SpanningTree> induced_mst(const Network& network, std::span<const NodeId> subset,
                                        std::span<const Energy> costs);

/// Nodes with keep[i] set that can reach the sink through kept nodes,
/// ascending. The sink is always included.
std::vector<NodeId> reachable_from_sink(const Network& network, const std::vector<bool>& keep);

/// The subgraph induced on `nodes` relabeled densely in the given order.
/// nodes[0] must be the sink and the induced subgraph must be connected.
Network induced_subnetwork(const Network& network, std::span<const NodeId> nodes);

}  // namespace sleeproute
