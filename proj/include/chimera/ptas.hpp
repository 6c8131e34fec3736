#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chimera/hamiltonian.hpp"
#include "chimera/strip_dp.hpp"

namespace chimera {

// Approximation parameter and the derived cut period T = ceil(2/epsilon).
class PtasParams {
public:
    static constexpr int max_period = 1 << 20;

    // epsilon in (0, 1); gives T >= 3.
    static PtasParams from_epsilon(double epsilon);
    // T >= 2, epsilon = 2/T. T = 2 carries only the unconditional guarantee.
    static PtasParams from_period(int period);

    double epsilon() const noexcept { return epsilon_; }
    int period() const noexcept { return period_; }
    // Proven ratio 1 - 2/T against the optimum.
    double guarantee() const noexcept { return 1.0 - 2.0 / period_; }

private:
    PtasParams(double epsilon, int period) : epsilon_(epsilon), period_(period) {}
    double epsilon_;
    int period_;
};

// Edges of `layer` with an endpoint at cut-axis index `index` (i for layer 0,
// j for layer 1). Sorted edge indices.
std::vector<std::size_t> column_edge_group(const ChimeraInstance& inst, int layer, int index);

// Union of the groups with index = k (mod T).
std::vector<std::size_t> class_edges(const ChimeraInstance& inst, int layer, int period, int k);

// A^k for k = 0..T-1.
std::vector<double> class_weights(const ChimeraInstance& inst, int layer, int period);

// 0 if A0 <= A1, else 1.
int choose_cut(const ChimeraInstance& inst);

struct KStar {
    int k = 0;
    double removed_weight = 0.0;
};

// Lightest class, ties to the smaller k.
KStar choose_kstar(const ChimeraInstance& inst, int period, int cut_layer);

struct CandidateSummary {
    int k = 0;
    double removed_weight = 0.0;
    double h_sub_energy = 0.0;  // sum of strip optima
    double energy = 0.0;        // true H of the stitched assignment
    std::size_t strips = 0;
    std::size_t max_width = 0;
    std::size_t peak_state_bits = 0;
};

struct PtasResult {
    SpinAssignment assignment;
    double energy = 0.0;
    std::string source;  // "strip-dp" or "path-witness"
    PtasParams params = PtasParams::from_period(2);

    int cut_layer = 0;
    double cut_magnitude = 0.0;  // A of the cut layer
    int k_star = 0;
    double k_star_weight = 0.0;

    // The best strip-DP candidate over all k.
    int chosen_k = 0;
    double removed_weight = 0.0;
    double h_sub_energy = 0.0;
    double candidate_energy = 0.0;
    std::size_t strips = 0;
    std::size_t max_width = 0;

    double witness_energy = 0.0;
    // Distinct classes only; classes past r+1 repeat the empty class.
    std::vector<CandidateSummary> candidates;
};

// Cuts the lighter layer (transposing when that is layer 1), solves every
// class k's strips exactly, and keeps the lowest true-H stitched assignment;
// the path witness replaces it if strictly lower. Throws BudgetExceeded when
// a strip is wider than the DP budget.
PtasResult ptas_solve(const ChimeraInstance& inst, const PtasParams& params);

struct RuntimeEstimate {
    double asymptotic_log2 = 0.0;      // log2(n 2^(32/eps))
    double optimized_log2 = 0.0;  // log2(T n b 2^b), b = 8T
    double asymptotic_ops = 0.0;       // may be +inf
    double optimized_ops = 0.0;
};

RuntimeEstimate predicted_runtime(double n, double epsilon);

}  // namespace chimera
