#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace sleeproute {

/// An amount of energy held as an exact count of nanojoules.
///
/// Every cost in the library is additive, so keeping integers means sums
/// are independent of evaluation order. Two solvers that reach the same
/// plan report bit-identical objectives, and simulated spend balances the
/// residual decrease exactly.
class Energy {
public:
    constexpr Energy() = default;

    static constexpr Energy from_nanojoules(std::int64_t nj) { return Energy(nj); }
    static Energy from_microjoules(double uj);
    static Energy from_millijoules(double mj);
    static Energy from_joules(double j);

    constexpr std::int64_t nanojoules() const { return nj_; }
    double microjoules() const { return static_cast<double>(nj_) / 1e3; }
    double millijoules() const { return static_cast<double>(nj_) / 1e6; }
    double joules() const { return static_cast<double>(nj_) / 1e9; }

    constexpr Energy& operator+=(Energy o) { nj_ += o.nj_; return *this; }
    constexpr Energy& operator-=(Energy o) { nj_ -= o.nj_; return *this; }
    friend constexpr Energy operator+(Energy a, Energy b) { return Energy(a.nj_ + b.nj_); }
    friend constexpr Energy operator-(Energy a, Energy b) { return Energy(a.nj_ - b.nj_); }
    friend constexpr Energy operator*(Energy a, std::int64_t k) { return Energy(a.nj_ * k); }
    friend constexpr Energy operator*(std::int64_t k, Energy a) { return Energy(a.nj_ * k); }
    friend constexpr auto operator<=>(Energy, Energy) = default;

private:
    constexpr explicit Energy(std::int64_t nj) : nj_(nj) {}
    std::int64_t nj_ = 0;
};

/// Exact decimal rendering in millijoules, e.g. "236.654" (trailing zeros trimmed).
std::string format_mj(Energy e);

/// Per-node hardware constants. Defaults are the Tmote Sky figures.
struct EnergyModel {
    double e_tx_uj = 450.0;           ///< transmit one message
    double e_rv_uj = 400.0;           ///< receive one message
    double e_sense_uj = 20.30;        ///< take one sample
    double p_active_mw = 4.898;
    double p_sleep_mw = 0.144;
    double initial_energy_j = 100.0;
    int message_bytes = 128;          // informational
    double tx_power_dbm = 5.0;        // informational

    /// Throws Error(InvalidArgument) naming the first bad field.
    void validate() const;
};

struct PeriodConfig {
    int samples_per_period = 20;
    double sample_interval_s = 31.0;
    double duty_cycle = 0.05;

    double period_seconds() const { return samples_per_period * sample_interval_s; }
    void validate() const;
};

enum class Mode { Active, Dormant };

/// Expected energy to push one message over a link with the given
/// delivery probability, retransmissions included: (e_tx + e_rv) / p_d.
Energy link_cost(const EnergyModel& model, double delivery_probability);

/// Sender-side and receiver-side shares of link_cost.
Energy tx_cost(const EnergyModel& model, double delivery_probability);
Energy rx_cost(const EnergyModel& model, double delivery_probability);

/// Radio-on/radio-off baseline for one operational period, excluding
/// sensing and communication.
///   Active:  T_p * d * p_active + T_p * (1 - d) * p_sleep
///   Dormant: T_p * p_sleep
Energy period_base_energy(const EnergyModel& model, const PeriodConfig& config, Mode mode);

/// samples_per_period * e_sense.
Energy period_sensing_energy(const EnergyModel& model, const PeriodConfig& config);

/// Weight of making a node active for the next period:
///   base(active) + sensing + (max_residual - node_residual)
/// The residual penalty steers selection toward nodes with more energy left.
/// Throws NegativeResidual when node_residual < 0 and InvalidArgument when
/// node_residual exceeds max_residual.
Energy active_node_cost(const EnergyModel& model, const PeriodConfig& config,
                        Energy node_residual, Energy max_residual);

}  // namespace sleeproute
