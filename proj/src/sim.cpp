#include "sleeproute/sim.hpp"

#include <algorithm>
#include <random>

#include "sleeproute/exact.hpp"
#include "sleeproute/heuristic.hpp"
#include "random.hpp"

namespace sleeproute {

namespace {

constexpr int kMaxAttempts = 100000;

std::vector<NodeId> plan_parents(const Network& network, const ActivePlan& plan) {
    const std::size_t n = network.node_count();
    std::vector<std::vector<NodeId>> adj(n);
    for (const Link& l : plan.tree_links) {
        adj[l.a].push_back(l.b);
        adj[l.b].push_back(l.a);
    }
    std::vector<NodeId> parent(n, n);
    parent[kSink] = kSink;
    std::vector<NodeId> stack{kSink};
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : adj[u])
            if (parent[v] == n) {
                parent[v] = u;
                stack.push_back(v);
            }
    }
    return parent;
}

std::optional<ActivePlan> solve_for(Strategy strategy, const ProblemInstance& inst, std::mt19937_64& rng,
                                    const ExperimentOptions& options) {
    switch (strategy) {
    case Strategy::Exact: return solve_exact(inst, {options.exact_node_cap});
    case Strategy::Random: return solve_heuristic(inst, {Selection::Random, rng()});
    case Strategy::MaxSP: return solve_heuristic(inst, {Selection::MaxSP, 0});
    case Strategy::MinSP: return solve_heuristic(inst, {Selection::MinSP, 0});
    case Strategy::AllActive:
    case Strategy::Lms: return all_active_plan(inst);
    }
    return std::nullopt;
}

}  // namespace

std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::Exact: return "exact";
    case Strategy::Random: return "random";
    case Strategy::MaxSP: return "max-sp";
    case Strategy::MinSP: return "min-sp";
    case Strategy::AllActive: return "all-active";
    case Strategy::Lms: return "lms";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    for (Strategy s : {Strategy::Exact, Strategy::Random, Strategy::MaxSP, Strategy::MinSP, Strategy::AllActive,
                       Strategy::Lms})
        if (to_string(s) == name) return s;
    return std::nullopt;
}

SimulationState SimulationState::initial(const Scenario& scenario, std::uint64_t seed) {
    SimulationState st;
    st.residual = scenario.initial_energy;
    st.residual[kSink] = Energy{};
    st.alive.assign(scenario.network.node_count(), true);
    st.rng_seed = seed;
    return st;
}

std::pair<SimulationState, PeriodReport> run_period(const SimulationState& state, const Network& network,
                                                    const ActivePlan& plan, const EnergyModel& model,
                                                    const PeriodConfig& config, const TrafficSpec& traffic) {
    const std::size_t n = network.node_count();
    if (state.residual.size() != n || state.alive.size() != n)
        throw Error(Errc::InvalidArgument, "simulation state does not match the network");

    std::vector<bool> active(n, false);
    for (NodeId v : plan.active) {
        if (v >= n) throw Error(Errc::InvalidArgument, "plan node out of range");
        if (!state.alive[v]) throw Error(Errc::PlanUsesDeadNode, "node " + std::to_string(v) + " is dead");
        active[v] = true;
    }
    if (!active[kSink]) throw Error(Errc::SinkInactive, "plan leaves the sink inactive");
    for (const Link& l : plan.tree_links) {
        if (!network.adjacent(l.a, l.b))
            throw Error(Errc::InvalidArgument, "plan link {" + std::to_string(l.a) + "," + std::to_string(l.b) +
                                                   "} does not exist");
        if (!active[l.a] || !active[l.b])
            throw Error(Errc::InvalidArgument, "plan link {" + std::to_string(l.a) + "," + std::to_string(l.b) +
                                                   "} has an inactive end");
    }
    const std::vector<NodeId> parent = plan_parents(network, plan);
    for (NodeId v = 0; v < n; ++v)
        if (active[v] && parent[v] == n)
            throw Error(Errc::InvalidArgument, "active node " + std::to_string(v) + " has no route to the sink");

    PeriodReport report;
    report.period = state.period_index;
    report.plan = plan;
    report.per_node_spend.assign(n, Energy{});
    report.active_count = plan.active.size();

    const Energy active_base = period_base_energy(model, config, Mode::Active) + period_sensing_energy(model, config);
    const Energy dormant_base = period_base_energy(model, config, Mode::Dormant);
    for (NodeId v = 1; v < n; ++v) {
        if (!state.alive[v]) continue;
        ++report.alive_count;
        report.per_node_spend[v] = active[v] ? active_base : dormant_base;
    }

    std::mt19937_64 loss_rng(traffic.loss_seed);
    const Energy tx_attempt = Energy::from_microjoules(model.e_tx_uj);
    const Energy rx_attempt = Energy::from_microjoules(model.e_rv_uj);
    auto send = [&](NodeId origin) {
        for (NodeId v = origin; v != kSink; v = parent[v]) {
            const NodeId up = parent[v];
            const double p = network.link(*network.link_index(v, up)).delivery_probability;
            if (traffic.sampled_losses) {
                std::int64_t attempts = 1;
                while (detail::uniform_unit(loss_rng) >= p && attempts < kMaxAttempts) ++attempts;
                report.per_node_spend[v] += tx_attempt * attempts;
                if (up != kSink) report.per_node_spend[up] += rx_attempt * attempts;
            } else {
                report.per_node_spend[v] += tx_cost(model, p);
                if (up != kSink) report.per_node_spend[up] += rx_cost(model, p);
            }
        }
        ++report.messages_delivered;
    };

    if (traffic.origins_per_sample.empty()) {
        for (int s = 0; s < config.samples_per_period; ++s)
            for (NodeId v : plan.active)
                if (v != kSink) send(v);
    } else {
        for (const auto& origins : traffic.origins_per_sample)
            for (NodeId v : origins) {
                if (v >= n || v == kSink || !active[v])
                    throw Error(Errc::InvalidArgument, "traffic origin " + std::to_string(v) + " is not an active sensing node");
                send(v);
            }
    }

    SimulationState next = state;
    next.period_index = state.period_index + 1;
    for (NodeId v = 1; v < n; ++v) {
        if (!state.alive[v]) continue;
        next.residual[v] -= report.per_node_spend[v];
        report.total_spend += report.per_node_spend[v];
        if (next.residual[v] < dormant_base) next.alive[v] = false;
    }
    return {std::move(next), std::move(report)};
}

bool constellations_served(const Network& network, const ConstellationSet& constellations,
                           const std::vector<bool>& alive) {
    std::vector<NodeId> reach = reachable_from_sink(network, alive);
    std::vector<bool> ok(network.node_count(), false);
    for (NodeId v : reach) ok[v] = true;
    for (const auto& g : constellations.groups())
        if (std::none_of(g.begin(), g.end(), [&](NodeId v) { return ok[v]; })) return false;
    return true;
}

ExperimentReport run_experiment(const Scenario& scenario, Strategy strategy, int horizon, std::uint64_t seed,
                                const ExperimentOptions& options) {
    if (horizon < 0) throw Error(Errc::InvalidArgument, "horizon must be non-negative");
    ExperimentReport report;
    report.strategy = strategy;
    report.seed = seed;

    SimulationState state = SimulationState::initial(scenario, seed);
    report.initial_residual = state.residual;
    std::mt19937_64 rng(seed);
    const Network& net = scenario.network;
    Energy cumulative{};

    if (!constellations_served(net, scenario.constellations, state.alive)) report.lifetime = 0;
    while (!report.lifetime && state.period_index < horizon) {
        // Restrict the problem to alive nodes that can still reach the sink.
        const std::vector<NodeId> nodes = reachable_from_sink(net, state.alive);
        std::vector<std::int64_t> local(net.node_count(), -1);
        for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<std::int64_t>(i);
        std::vector<std::vector<NodeId>> groups;
        for (const auto& g : scenario.constellations.groups()) {
            std::vector<NodeId> kept;
            for (NodeId v : g)
                if (local[v] >= 0) kept.push_back(static_cast<NodeId>(local[v]));
            groups.push_back(std::move(kept));
        }
        std::vector<Energy> residual(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) residual[i] = state.residual[nodes[i]];

        ProblemInstance inst = build_instance(induced_subnetwork(net, nodes),
                                              ConstellationSet::from_groups(nodes.size(), std::move(groups)),
                                              scenario.energy_model, scenario.period, residual,
                                              scenario.count_sink_rx);
        ActivePlan local_plan;
        try {
            local_plan = *solve_for(strategy, inst, rng, options);
        } catch (const Error& e) {
            if (e.code() == Errc::Infeasible) throw Error(Errc::StrategyInfeasible, e.what());
            throw;
        }

        ActivePlan plan;
        plan.objective = local_plan.objective;
        for (NodeId v : local_plan.active) plan.active.push_back(nodes[v]);
        for (const Link& l : local_plan.tree_links)
            plan.tree_links.push_back({nodes[l.a], nodes[l.b], l.delivery_probability});

        TrafficSpec traffic;
        if (strategy == Strategy::Lms) {
            std::vector<NodeId> pool(plan.active.begin() + 1, plan.active.end());
            const std::size_t k = std::min(scenario.lms_k, pool.size());
            for (int s = 0; s < scenario.period.samples_per_period; ++s) {
                for (std::size_t i = 0; i < k; ++i)
                    std::swap(pool[i], pool[i + detail::uniform_index(rng, pool.size() - i)]);
                std::vector<NodeId> picked(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
                std::sort(picked.begin(), picked.end());
                traffic.origins_per_sample.push_back(std::move(picked));
            }
        }
        if (scenario.sampled_losses) {
            traffic.sampled_losses = true;
            traffic.loss_seed = rng();
        }

        auto [next, period] = run_period(state, net, plan, scenario.energy_model, scenario.period, traffic);
        state = std::move(next);
        cumulative += period.total_spend;
        report.cumulative.push_back(cumulative);
        report.periods.push_back(std::move(period));
        if (!constellations_served(net, scenario.constellations, state.alive)) report.lifetime = state.period_index;
    }
    report.final_residual = state.residual;
    return report;
}

int lifetime(const Scenario& scenario, Strategy strategy, int max_horizon, std::uint64_t seed,
             const ExperimentOptions& options) {
    ExperimentReport r = run_experiment(scenario, strategy, max_horizon, seed, options);
    return r.lifetime.value_or(max_horizon);
}

}  // namespace sleeproute
