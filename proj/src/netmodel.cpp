#include "sleeproute/netmodel.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "sleeproute/error.hpp"

namespace sleeproute {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

std::vector<bool> membership(std::size_t n, std::span<const NodeId> subset) {
    std::vector<bool> in(n, false);
    for (NodeId v : subset) {
        if (v >= n) throw Error(Errc::EndpointOutOfRange, "node " + std::to_string(v) + " is not in the network");
        in[v] = true;
    }
    if (!in[kSink]) throw Error(Errc::SinkMissing, "subset does not contain the sink");
    return in;
}

std::vector<bool> reach(const Network& network, const std::vector<bool>& keep) {
    std::vector<bool> seen(network.node_count(), false);
    std::vector<NodeId> stack{kSink};
    seen[kSink] = true;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (const Incidence& inc : network.neighbors(u)) {
            if (keep[inc.node] && !seen[inc.node]) {
                seen[inc.node] = true;
                stack.push_back(inc.node);
            }
        }
    }
    return seen;
}

}  // namespace

Network Network::build(std::size_t node_count, std::vector<Link> links) {
    if (node_count < 2) throw Error(Errc::InvalidArgument, "a network needs the sink and at least one sensing node");

    for (Link& l : links) {
        if (l.a >= node_count || l.b >= node_count)
            throw Error(Errc::EndpointOutOfRange, "link {" + std::to_string(l.a) + "," + std::to_string(l.b) +
                                                      "} references a node >= " + std::to_string(node_count));
        if (l.a == l.b) throw Error(Errc::SelfLoop, "link {" + std::to_string(l.a) + "," + std::to_string(l.b) + "}");
        if (!(l.delivery_probability > 0.0 && l.delivery_probability <= 1.0))
            throw Error(Errc::InvalidArgument, "link {" + std::to_string(l.a) + "," + std::to_string(l.b) +
                                                   "} delivery probability must lie in (0, 1]");
        if (l.a > l.b) std::swap(l.a, l.b);
    }
    std::sort(links.begin(), links.end(),
              [](const Link& x, const Link& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    for (std::size_t i = 1; i < links.size(); ++i) {
        if (links[i].a == links[i - 1].a && links[i].b == links[i - 1].b)
            throw Error(Errc::DuplicateLink,
                        "link {" + std::to_string(links[i].a) + "," + std::to_string(links[i].b) + "}");
    }

    Network net;
    net.node_count_ = node_count;
    net.links_ = std::move(links);
    net.adjacency_.assign(node_count, {});
    net.index_.assign(node_count * node_count, -1);
    for (std::size_t k = 0; k < net.links_.size(); ++k) {
        const Link& l = net.links_[k];
        net.adjacency_[l.a].push_back({l.b, k});
        net.adjacency_[l.b].push_back({l.a, k});
        net.index_[l.a * node_count + l.b] = static_cast<std::int32_t>(k);
        net.index_[l.b * node_count + l.a] = static_cast<std::int32_t>(k);
    }
    for (auto& adj : net.adjacency_)
        std::sort(adj.begin(), adj.end(), [](const Incidence& x, const Incidence& y) { return x.node < y.node; });

    std::vector<bool> all(node_count, true);
    std::vector<bool> seen = reach(net, all);
    for (NodeId v = 0; v < node_count; ++v) {
        if (!seen[v])
            throw Error(Errc::DisconnectedGraph, "node " + std::to_string(v) + " cannot reach the sink");
    }
    return net;
}

std::optional<std::size_t> Network::link_index(NodeId i, NodeId j) const {
    if (i >= node_count_ || j >= node_count_) return std::nullopt;
    std::int32_t k = index_[i * node_count_ + j];
    if (k < 0) return std::nullopt;
    return static_cast<std::size_t>(k);
}

LinkCosts link_costs(const Network& network, const EnergyModel& model) {
    LinkCosts costs;
    costs.reserve(network.links().size());
    for (const Link& l : network.links()) costs.push_back(link_cost(model, l.delivery_probability));
    return costs;
}

RoutingTree shortest_path_tree(const Network& network, std::span<const Energy> costs) {
    const std::size_t n = network.node_count();
    if (costs.size() != network.links().size())
        throw Error(Errc::InvalidArgument, "one cost per link is required");
    for (Energy c : costs)
        if (c <= Energy{}) throw Error(Errc::InvalidArgument, "link costs must be positive");

    RoutingTree tree;
    tree.parent.assign(n, kSink);
    std::vector<std::optional<Energy>> dist(n);
    std::vector<bool> done(n, false);
    dist[kSink] = Energy{};

    using Entry = std::pair<std::int64_t, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    queue.emplace(0, kSink);
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (done[u]) continue;
        done[u] = true;
        for (const Incidence& inc : network.neighbors(u)) {
            NodeId v = inc.node;
            if (done[v]) continue;
            Energy candidate = *dist[u] + costs[inc.link];
            // Equal-cost parents: all are settled before v (positive costs), so
            // comparing ids here yields the smallest optimal parent.
            if (!dist[v] || candidate < *dist[v] || (candidate == *dist[v] && u < tree.parent[v])) {
                dist[v] = candidate;
                tree.parent[v] = u;
                queue.emplace(candidate.nanojoules(), v);
            }
        }
    }

    tree.path_cost.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
        if (!dist[v]) throw Error(Errc::DisconnectedGraph, "node " + std::to_string(v) + " cannot reach the sink");
        tree.path_cost.push_back(*dist[v]);
    }
    return tree;
}

bool is_connected(const Network& network, std::span<const NodeId> subset) {
    std::vector<bool> in = membership(network.node_count(), subset);
    std::vector<bool> seen = reach(network, in);
    for (NodeId v = 0; v < network.node_count(); ++v)
        if (in[v] && !seen[v]) return false;
    return true;
}

std::optional<SpanningTree> induced_mst(const Network& network, std::span<const NodeId> subset,
                                        std::span<const Energy> costs) {
    if (costs.size() != network.links().size())
        throw Error(Errc::InvalidArgument, "one cost per link is required");
    std::vector<bool> in = membership(network.node_count(), subset);

    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < network.links().size(); ++k) {
        const Link& l = network.link(k);
        if (in[l.a] && in[l.b]) candidates.push_back(k);
    }
    // Stable sort keeps lexicographic link order among equal costs.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t x, std::size_t y) { return costs[x] < costs[y]; });

    std::size_t members = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
    DisjointSets sets(network.node_count());
    SpanningTree tree;
    for (std::size_t k : candidates) {
        if (tree.links.size() + 1 == members) break;
        const Link& l = network.link(k);
        if (sets.unite(l.a, l.b)) {
            tree.links.push_back(k);
            tree.total += costs[k];
        }
    }
    if (tree.links.size() + 1 != members) return std::nullopt;
    std::sort(tree.links.begin(), tree.links.end());
    return tree;
}

std::vector<NodeId> reachable_from_sink(const Network& network, const std::vector<bool>& keep) {
    if (keep.size() != network.node_count())
        throw Error(Errc::InvalidArgument, "keep mask size must equal the node count");
    std::vector<bool> mask = keep;
    mask[kSink] = true;
    std::vector<bool> seen = reach(network, mask);
    std::vector<NodeId> out;
    for (NodeId v = 0; v < network.node_count(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

Network induced_subnetwork(const Network& network, std::span<const NodeId> nodes) {
    if (nodes.empty() || nodes.front() != kSink)
        throw Error(Errc::SinkMissing, "subnetwork node list must start with the sink");
    std::vector<std::int64_t> relabel(network.node_count(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] >= network.node_count())
            throw Error(Errc::EndpointOutOfRange, "node " + std::to_string(nodes[i]) + " is not in the network");
        relabel[nodes[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<Link> links;
    for (const Link& l : network.links()) {
        if (relabel[l.a] >= 0 && relabel[l.b] >= 0)
            links.push_back({static_cast<NodeId>(relabel[l.a]), static_cast<NodeId>(relabel[l.b]),
                             l.delivery_probability});
    }
    return Network::build(nodes.size(), std::move(links));
}

}  // namespace sleeproute
