#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sleeproute {

enum class Errc {
    InvalidArgument,
    DuplicateLink,
    SelfLoop,
    DisconnectedGraph,
    EndpointOutOfRange,
    SinkMissing,
    NotAPartition,
    SinkInactive,
    NegativeResidual,
    Infeasible,
    InstanceTooLarge,
    TooManySubtourConstraints,
    NodeNotRemaining,
    PlanUsesDeadNode,
    StrategyInfeasible,
    CouldNotConnect,
    Validation,
    FileNotFound,
    Parse,
};

std::string_view to_string(Errc code);

/// True for codes caused by bad input (files, scenario data, arguments)
/// rather than by a solver or the simulation.
bool is_input_error(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace sleeproute
