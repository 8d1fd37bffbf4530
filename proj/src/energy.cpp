#include "sleeproute/energy.hpp"

#include <cmath>
#include <cstdlib>

#include "sleeproute/error.hpp"

namespace sleeproute {

std::string_view to_string(Errc code) {
    switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DuplicateLink: return "DuplicateLink";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::EndpointOutOfRange: return "EndpointOutOfRange";
    case Errc::SinkMissing: return "SinkMissing";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::SinkInactive: return "SinkInactive";
    case Errc::NegativeResidual: return "NegativeResidual";
    case Errc::Infeasible: return "Infeasible";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::TooManySubtourConstraints: return "TooManySubtourConstraints";
    case Errc::NodeNotRemaining: return "NodeNotRemaining";
    case Errc::PlanUsesDeadNode: return "PlanUsesDeadNode";
    case Errc::StrategyInfeasible: return "StrategyInfeasible";
    case Errc::CouldNotConnect: return "CouldNotConnect";
    case Errc::Validation: return "Validation";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::Parse: return "Parse";
    }
    return "Unknown";
}

bool is_input_error(Errc code) {
    switch (code) {
    case Errc::InvalidArgument:
    case Errc::DuplicateLink:
    case Errc::SelfLoop:
    case Errc::DisconnectedGraph:
    case Errc::EndpointOutOfRange:
    case Errc::NotAPartition:
    case Errc::Validation:
    case Errc::FileNotFound:
    case Errc::Parse:
        return true;
    default:
        return false;
    }
}

namespace {

std::int64_t round_scaled(long double value, long double scale) {
    return static_cast<std::int64_t>(std::llround(value * scale));
}

}  // namespace

Energy Energy::from_microjoules(double uj) { return Energy(round_scaled(uj, 1e3L)); }
Energy Energy::from_millijoules(double mj) { return Energy(round_scaled(mj, 1e6L)); }
Energy Energy::from_joules(double j) { return Energy(round_scaled(j, 1e9L)); }

std::string format_mj(Energy e) {
    std::int64_t nj = e.nanojoules();
    std::string sign;
    if (nj < 0) {
        sign = "-";
        nj = -nj;
    }
    std::string whole = std::to_string(nj / 1000000);
    std::string frac = std::to_string(nj % 1000000);
    frac.insert(0, 6 - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return sign + whole + (frac.empty() ? "" : "." + frac);
}

void EnergyModel::validate() const {
    auto require = [](bool ok, const char* field) {
        if (!ok) throw Error(Errc::InvalidArgument, std::string("energy model field '") + field + "' must be positive");
    };
    require(e_tx_uj > 0, "e_tx_uj");
    require(e_rv_uj > 0, "e_rv_uj");
    require(e_sense_uj > 0, "e_sense_uj");
    require(p_active_mw > 0, "p_active_mw");
    require(p_sleep_mw > 0, "p_sleep_mw");
    require(initial_energy_j > 0, "initial_energy_j");
    require(message_bytes > 0, "message_bytes");
    if (!(p_active_mw > p_sleep_mw))
        throw Error(Errc::InvalidArgument, "p_active_mw must exceed p_sleep_mw");
}

void PeriodConfig::validate() const {
    if (samples_per_period < 1)
        throw Error(Errc::InvalidArgument, "samples_per_period must be at least 1");
    if (!(sample_interval_s > 0))
        throw Error(Errc::InvalidArgument, "sample_interval_s must be positive");
    if (!(duty_cycle > 0 && duty_cycle < 1))
        throw Error(Errc::InvalidArgument, "duty_cycle must lie strictly between 0 and 1");
}

namespace {

void check_probability(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw Error(Errc::InvalidArgument, "delivery probability must lie in (0, 1]");
}

}  // namespace

Energy link_cost(const EnergyModel& model, double delivery_probability) {
    check_probability(delivery_probability);
    return Energy::from_microjoules((model.e_tx_uj + model.e_rv_uj) / delivery_probability);
}

Energy tx_cost(const EnergyModel& model, double delivery_probability) {
    check_probability(delivery_probability);
    return Energy::from_microjoules(model.e_tx_uj / delivery_probability);
}

Energy rx_cost(const EnergyModel& model, double delivery_probability) {
    check_probability(delivery_probability);
    return Energy::from_microjoules(model.e_rv_uj / delivery_probability);
}

Energy period_base_energy(const EnergyModel& model, const PeriodConfig& config, Mode mode) {
    // mW * s = mJ
    const long double tp = static_cast<long double>(config.samples_per_period) * config.sample_interval_s;
    const long double d = config.duty_cycle;
    long double mj = 0;
    if (mode == Mode::Active)
        mj = tp * d * model.p_active_mw + tp * (1.0L - d) * model.p_sleep_mw;
    else
        mj = tp * model.p_sleep_mw;
    return Energy::from_nanojoules(round_scaled(mj, 1e6L));
}

Energy period_sensing_energy(const EnergyModel& model, const PeriodConfig& config) {
    return Energy::from_microjoules(model.e_sense_uj) * config.samples_per_period;
}

Energy active_node_cost(const EnergyModel& model, const PeriodConfig& config,
                        Energy node_residual, Energy max_residual) {
    if (node_residual < Energy{})
        throw Error(Errc::NegativeResidual, "node residual energy is negative");
    if (node_residual > max_residual)
        throw Error(Errc::InvalidArgument, "node residual exceeds the maximum residual");
    return period_base_energy(model, config, Mode::Active) + period_sensing_energy(model, config) +
           (max_residual - node_residual);
}

}  // namespace sleeproute
