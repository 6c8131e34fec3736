#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "chimera/hamiltonian.hpp"

namespace chimera {

// Thrown when an exact method is asked to exceed its enumeration or table
// budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WeightedEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    double c = 0.0;
};

// An arbitrary weighted graph small enough to enumerate.
struct SmallProblem {
    static constexpr std::size_t max_vertices = 25;

    std::size_t n = 0;
    std::vector<WeightedEdge> edges;
    std::vector<double> fields;  // empty means all zero

    // Canonical energy: edges in list order, then fields, in long double.
    double energy(std::span<const Spin> s) const;
};

struct OracleResult {
    double energy = 0.0;
    std::vector<Spin> assignment;
};

SmallProblem to_small_problem(const ChimeraInstance& inst);

// Exact minimum over all 2^n assignments. Ties go to the lexicographically
// smallest assignment with -1 < +1. Throws BudgetExceeded for n > 25.
OracleResult brute_force(const SmallProblem& p);

}  // namespace chimera
