#pragma once

#include <cstddef>
#include <string>

#include "sleeproute/problem.hpp"

namespace sleeproute {

struct ExactOptions {
    /// Largest node count (sink included) the enumeration will attempt.
    std::size_t node_cap = 16;
};

/// Optimal plan by exhaustive search over active sets.
///
/// For a fixed active set A the tree constraints admit exactly the spanning
/// trees of the subgraph induced on A, so the cheapest links for A are its
/// minimum spanning tree. Enumerating every A that contains the sink and
/// covers all constellations, and pricing each by node costs plus MST,
/// therefore reaches the integer program's optimum. The problem is NP-hard,
/// so the exponential search is inherent; node_cap guards against runaway
/// instances.
///
/// Among equal objectives the lexicographically smallest active set wins.
/// Throws InstanceTooLarge above the cap and Infeasible when no connected
/// covering set exists.
ActivePlan solve_exact(const ProblemInstance& instance, const ExactOptions& options = {});

enum class SubtourMode {
    Full,      ///< one subtour-elimination row per subset of nodes
    LazyNote,  ///< omit them and describe the family in a comment block
};

/// Largest number of sensing nodes accepted by export_ilp in Full mode.
inline constexpr std::size_t kMaxFullSubtourSensingNodes = 12;

/// Writes the integer program in CPLEX LP format. Variables are x_a_i for
/// each sensing node (the sink is fixed active and substituted as the
/// constant 1) and x_l_i_j for each existing link with i < j. Objective
/// coefficients are in millijoules.
/// Throws TooManySubtourConstraints in Full mode above 12 sensing nodes.
std::string export_ilp(const ProblemInstance& instance, SubtourMode mode);

}  // namespace sleeproute
