#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sleeproute/error.hpp"
#include "sleeproute/heuristic.hpp"

using namespace sleeproute;

namespace {

const std::vector<std::vector<NodeId>> kGroups{{0}, {1, 2, 8}, {3, 6, 9}, {4, 5, 7}};

RoutingTree tree_from_parents(std::vector<NodeId> parent) {
    return {parent, std::vector<Energy>(parent.size())};
}

}  // namespace

TEST_CASE("marking walks up the chain") {
    auto cons = ConstellationSet::from_groups(3, {{0}, {1}, {2}});
    auto s = mark_node_state(PartitionState::initial(tree_from_parents({0, 0, 1})), 2, cons);
    CHECK(s.members(NodeState::Active) == std::vector<NodeId>{0, 1, 2});
    CHECK(s.members(NodeState::Dormant).empty());
    CHECK_FALSE(s.has_remaining());
}

TEST_CASE("marking puts group mates to sleep") {
    auto cons = ConstellationSet::from_groups(10, kGroups);
    auto s = mark_node_state(PartitionState::initial(tree_from_parents({0, 0, 0, 0, 0, 0, 0, 0, 0, 0})), 1, cons);
    CHECK(s.members(NodeState::Active) == std::vector<NodeId>{0, 1});
    CHECK(s.members(NodeState::Dormant) == std::vector<NodeId>{2, 8});
}

TEST_CASE("active parent means one new node") {
    auto cons = ConstellationSet::from_groups(4, {{0}, {1}, {2}, {3}});
    auto s0 = mark_node_state(PartitionState::initial(tree_from_parents({0, 0, 1, 1})), 1, cons);
    auto s1 = mark_node_state(s0, 3, cons);
    CHECK(s1.members(NodeState::Active).size() == s0.members(NodeState::Active).size() + 1);
    CHECK_THROWS_AS(mark_node_state(s1, 3, cons), Error);
}

TEST_CASE("dormant ancestor is woken") {
    // 2 hangs below 1, and 1 shares a group with 3
    auto cons = ConstellationSet::from_groups(4, {{0}, {1, 3}, {2}});
    auto s = mark_node_state(PartitionState::initial(tree_from_parents({0, 0, 1, 0})), 3, cons);
    CHECK(s.state[1] == NodeState::Dormant);
    s = mark_node_state(s, 2, cons);
    CHECK(s.members(NodeState::Active) == std::vector<NodeId>{0, 1, 2, 3});
}

TEST_CASE("one group on a star") {
    ProblemInstance p;
    p.network = Network::build(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    p.constellations = ConstellationSet::from_groups(4, {{0}, {1, 2, 3}});
    p.node_costs = {Energy{}, Energy::from_nanojoules(30), Energy::from_nanojoules(10), Energy::from_nanojoules(20)};
    p.link_costs = std::vector<Energy>(3, Energy::from_nanojoules(5));
    CHECK(solve_heuristic(p, {Selection::MaxSP}).active == std::vector<NodeId>{0, 2});
    CHECK(solve_heuristic(p, {Selection::MinSP}).active == std::vector<NodeId>{0, 1});
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(solve_heuristic(p, {Selection::Random, seed}).active.size() == 2);
}

TEST_CASE("chain forces everything active") {
    ProblemInstance p;
    p.network = Network::build(3, {{0, 1, 1}, {1, 2, 1}});
    p.constellations = ConstellationSet::from_groups(3, {{0}, {1}, {2}});
    p.node_costs = {Energy{}, Energy::from_nanojoules(30), Energy::from_nanojoules(10)};
    p.link_costs = std::vector<Energy>(2, Energy::from_nanojoules(5));
    for (auto sel : {Selection::Random, Selection::MaxSP, Selection::MinSP}) {
        auto plan = solve_heuristic(p, {sel, 3});
        CHECK(plan.active == std::vector<NodeId>{0, 1, 2});
        CHECK(plan.tree_links.size() == 2);
    }
}

TEST_CASE("plans are feasible and deterministic") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto p = oracle::random_instance(3 + seed % 10, std::min<std::size_t>(2 + seed % 4, 3 + seed % 10), 0.3, seed);
        for (auto sel : {Selection::Random, Selection::MaxSP, Selection::MinSP}) {
            auto a = solve_heuristic(p, {sel, seed});
            CHECK(oracle::check_plan(p, a).empty());
            CHECK(solve_heuristic(p, {sel, seed}) == a);
            if (sel != Selection::Random) CHECK(solve_heuristic(p, {sel, seed + 1}) == a);
        }
        CHECK(oracle::check_plan(p, all_active_plan(p)).empty());
    }
}
