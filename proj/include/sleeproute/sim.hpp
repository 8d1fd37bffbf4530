#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "sleeproute/problem.hpp"
#include "sleeproute/scenario.hpp"

namespace sleeproute {

enum class Strategy { Exact, Random, MaxSP, MinSP, AllActive, Lms };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct SimulationState {
    std::vector<Energy> residual;  ///< per node; sink entry stays 0
    std::vector<bool> alive;       ///< sink always alive
    int period_index = 0;
    std::uint64_t rng_seed = 0;

    static SimulationState initial(const Scenario& scenario, std::uint64_t seed);
};

/// Who sends what during one period.
struct TrafficSpec {
    /// Originating nodes for each sample. Empty means every active sensing
    /// node reports in every sample.
    std::vector<std::vector<NodeId>> origins_per_sample;
    /// Draw retransmission counts instead of charging the expected 1/p_d.
    bool sampled_losses = false;
    std::uint64_t loss_seed = 0;
};

struct PeriodReport {
    int period = 0;
    ActivePlan plan;                    ///< in scenario node ids
    std::vector<Energy> per_node_spend; ///< 0 for the sink and for nodes dead at period start
    Energy total_spend;
    std::int64_t messages_delivered = 0;
    std::size_t active_count = 0;       ///< sink included
    std::size_t alive_count = 0;        ///< sensing nodes alive at period start
};

/// Charges one operational period:
///  - dormant alive node: base(dormant)
///  - active node: base(active) + sensing, plus per message and hop e_tx/p_d
///    for the sender and e_rv/p_d for a non-sink receiver
/// Messages climb the plan's tree to the sink. A node dies once its residual
/// can no longer pay for a dormant period.
/// Throws PlanUsesDeadNode when the plan activates a dead node.
std::pair<SimulationState, PeriodReport> run_period(const SimulationState& state, const Network& network,
                                                    const ActivePlan& plan, const EnergyModel& model,
                                                    const PeriodConfig& config, const TrafficSpec& traffic = {});

struct ExperimentOptions {
    std::size_t exact_node_cap = 16;
};

struct ExperimentReport {
    Strategy strategy = Strategy::MaxSP;
    std::uint64_t seed = 0;
    std::vector<PeriodReport> periods;
    std::vector<Energy> cumulative;  ///< running total of total_spend
    /// Completed periods when some constellation lost its last reachable
    /// member; nullopt if the horizon came first.
    std::optional<int> lifetime;
    std::vector<Energy> initial_residual;
    std::vector<Energy> final_residual;
};

/// Re-plans before every period from current residuals over the alive nodes
/// that can still reach the sink, then charges the period. Stops at the
/// horizon or when a constellation can no longer be represented.
ExperimentReport run_experiment(const Scenario& scenario, Strategy strategy, int horizon, std::uint64_t seed,
                                const ExperimentOptions& options = {});

/// Periods completed before some constellation can no longer be served,
/// capped at max_horizon.
int lifetime(const Scenario& scenario, Strategy strategy, int max_horizon, std::uint64_t seed,
             const ExperimentOptions& options = {});

/// Every constellation has an alive member with an alive path to the sink.
bool constellations_served(const Network& network, const ConstellationSet& constellations,
                           const std::vector<bool>& alive);

}  // namespace sleeproute
