#include "sleeproute/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>

#include "sleeproute/error.hpp"

namespace sleeproute {

namespace {

using Mask = std::uint64_t;

// Kruskal over the links whose ends are both in `mask`, using links
// pre-sorted by (cost, index). nullopt when the induced subgraph is
// disconnected.
std::optional<Energy> mst_cost(const Network& net, std::span<const std::size_t> sorted_links,
                               std::span<const Energy> costs, Mask mask, std::vector<std::size_t>* chosen) {
    const std::size_t n = net.node_count();
    std::size_t members = static_cast<std::size_t>(std::popcount(mask));
    std::size_t root[64];
    std::iota(root, root + n, std::size_t{0});
    auto find = [&](std::size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    Energy total{};
    std::size_t used = 0;
    for (std::size_t k : sorted_links) {
        if (used + 1 == members) break;
        const Link& l = net.link(k);
        if (!((mask >> l.a) & 1U) || !((mask >> l.b) & 1U)) continue;
        std::size_t ra = find(l.a), rb = find(l.b);
        if (ra == rb) continue;
        root[std::max(ra, rb)] = std::min(ra, rb);
        total += costs[k];
        ++used;
        if (chosen) chosen->push_back(k);
    }
    if (used + 1 != members) return std::nullopt;
    return total;
}

// Lexicographic comparison of the ascending member lists of two masks.
bool lex_less(Mask a, Mask b) {
    while (a != 0 && b != 0) {
        int x = std::countr_zero(a), y = std::countr_zero(b);
        if (x != y) return x < y;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

}  // namespace

ActivePlan solve_exact(const ProblemInstance& instance, const ExactOptions& options) {
    instance.validate();
    const Network& net = instance.network;
    const std::size_t n = net.node_count();
    if (options.node_cap > 63) throw Error(Errc::InvalidArgument, "exact node cap cannot exceed 63");
    if (n > options.node_cap)
        throw Error(Errc::InstanceTooLarge, std::to_string(n) + " nodes exceed the exact solver cap of " +
                                                std::to_string(options.node_cap) +
                                                "; use a heuristic strategy or raise the cap");

    std::vector<Mask> group_masks;
    for (const auto& g : instance.constellations.groups()) {
        Mask m = 0;
        for (NodeId v : g) m |= Mask{1} << v;
        group_masks.push_back(m);
    }

    std::vector<std::size_t> sorted_links(net.links().size());
    std::iota(sorted_links.begin(), sorted_links.end(), std::size_t{0});
    std::stable_sort(sorted_links.begin(), sorted_links.end(), [&](std::size_t x, std::size_t y) {
        return instance.link_costs[x] < instance.link_costs[y];
    });

    std::optional<Energy> best;
    Mask best_mask = 0;
    const std::size_t sensing = n - 1;
    for (Mask bits = 0; bits < (Mask{1} << sensing); ++bits) {
        const Mask mask = (bits << 1) | 1U;
        if (!std::all_of(group_masks.begin(), group_masks.end(), [&](Mask g) { return (g & mask) != 0; }))
            continue;

        Energy nodes{};
        for (Mask rest = bits << 1; rest != 0; rest &= rest - 1)
            nodes += instance.node_costs[static_cast<std::size_t>(std::countr_zero(rest))];
        // Link costs are positive, so node cost alone bounds the objective.
        if (best && nodes > *best) continue;

        auto links = mst_cost(net, sorted_links, instance.link_costs, mask, nullptr);
        if (!links) continue;
        Energy total = nodes + *links;
        if (!best || total < *best || (total == *best && lex_less(mask, best_mask))) {
            best = total;
            best_mask = mask;
        }
    }
    if (!best) throw Error(Errc::Infeasible, "no connected active set covers every constellation");

    ActivePlan plan;
    for (NodeId v = 0; v < n; ++v)
        if ((best_mask >> v) & 1U) plan.active.push_back(v);
    std::vector<std::size_t> chosen;
    mst_cost(net, sorted_links, instance.link_costs, best_mask, &chosen);
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t k : chosen) plan.tree_links.push_back(net.link(k));
    plan.objective = *best;
    require_feasible(instance, plan, "solve_exact");
    return plan;
}

}  // namespace sleeproute
