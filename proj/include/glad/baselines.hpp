#pragma once

#include <cstdint>

#include "glad/cost.hpp"
#include "glad/model.hpp"

namespace glad {

struct OracleResult {
    GraphLayout optimal_layout;
    CostBreakdown optimal_cost;
    long long states_examined = 0;
};

// Exhaustive search over all |D|^|V| layouts, walking a reflected mixed-radix
// Gray code so each step re-prices a single vertex move. Infeasible layouts
// (cross links over missing connections) are skipped. Cost ties resolve to
// the lexicographically smallest assignment over ascending vertex ids.
// Throws TooLargeError when the state count exceeds max_states.
OracleResult brute_force_optimal(const Instance& inst, long long max_states = 20'000'000);

// Uniform random assignment, seeded; vertices drawn in ascending id order.
GraphLayout random_layout(const Instance& inst, uint64_t seed);

// Independently places each vertex at its cheapest server by upload +
// compute + per-vertex maintenance (ties to the lowest id). Ignores traffic
// and the layout-independent epsilons.
GraphLayout greedy_layout(const Instance& inst);

}  // namespace glad
