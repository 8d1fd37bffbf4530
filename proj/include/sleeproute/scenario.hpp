#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sleeproute/constellation.hpp"
#include "sleeproute/energy.hpp"
#include "sleeproute/error.hpp"
#include "sleeproute/netmodel.hpp"

namespace sleeproute {

/// A complete, validated problem setup.
struct Scenario {
    std::string name;
    Network network;
    ConstellationSet constellations;
    EnergyModel energy_model;
    PeriodConfig period;
    std::vector<Energy> initial_energy;  ///< per node; the sink entry is unused (0)
    std::size_t lms_k = 2;
    std::vector<std::uint64_t> seeds{0};
    bool count_sink_rx = true;
    bool sampled_losses = false;
};

struct Violation {
    std::string path;  ///< JSON pointer into the scenario document
    std::string message;
};

/// Thrown by validate_scenario with every violation found, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Builds a Scenario from a parsed document. In strict mode unknown keys
/// are violations too.
Scenario validate_scenario(const nlohmann::json& doc, bool strict = false);

/// Reads a scenario file (JSON with // and /* */ comments). Throws
/// FileNotFound, Parse, or ValidationError.
Scenario load_scenario(const std::filesystem::path& path, bool strict = false);

/// Canonical document for a scenario: links as [a, b, p], constellations as
/// groups, every energy field spelled out. validate_scenario inverts it.
nlohmann::json scenario_to_json(const Scenario& scenario);

/// Random connected network with n nodes (sink included) split into m
/// constellations (sink's singleton included). Each node pair is linked with
/// probability `density`; delivery probabilities are uniform in [0.5, 1.0].
/// Redraws edges until connected; throws CouldNotConnect after max_attempts.
Scenario generate_random(std::size_t n, std::size_t m, double density, std::uint64_t seed,
                         int max_attempts = 1000);

}  // namespace sleeproute
