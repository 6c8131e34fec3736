#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "chimera/hamiltonian.hpp"

namespace chimera {

// C = ln(1+sqrt 2)/pi from Krivine's bound K <= pi/(2 ln(1+sqrt 2)), with
// C = 1/(2K). factor = (3C+4)/C.
struct GrothendieckConstants {
    static double k_upper();
    static double c_lower();
    static double factor();
};

// Couplings of one K4,4 block: c[k0][k1] joins (i,j,k0+1,0) and (i,j,k1+1,1).
using CellCoefficients = std::array<std::array<double, 4>, 4>;

struct K44Minimum {
    double value = 0.0;
    std::array<Spin, 4> u{};  // layer-0 side
    std::array<Spin, 4> v{};  // layer-1 side
};

// Exact minimum of sum c_ij S_ui S_vj over the 128 patterns with S_u1 = +1;
// the other 128 are their global flips.
K44Minimum k44_exhaustive_min(const CellCoefficients& c);

using Vec4 = std::array<double, 4>;

struct SignVectors {
    std::array<Vec4, 4> x{};
    std::array<Vec4, 4> y{};
    // sum_ij c_ij <x_i, y_j>, equal to 0.5 * sum |c_ij|.
    double value = 0.0;
};

// x_i = e_i, y_j = (1/2) sum_i sgn(c_ij) e_i with sgn(0) = +1.
SignVectors sign_vectors(const CellCoefficients& c);

CellCoefficients cell_coefficients(const ChimeraInstance& inst, int i, int j);

// Walks every E0 and E1 path so M0 = -A0 and M1 = -A1, then flips layer 0
// if M01 > 0 and everything if D > 0. H <= -(A0 + A1).
SpinAssignment path_witness(const ChimeraInstance& inst);

// Minimizes every K4,4 block exactly, then flips everything if D > 0.
// M01 <= -C A01, H <= A0 + A1 - C A01.
SpinAssignment k44_witness(const ChimeraInstance& inst);

// S_u = -1 where d_u > 0, else +1. D = -B, H <= A0 + A1 + A01 - B.
SpinAssignment field_witness(const ChimeraInstance& inst);

struct WitnessEnergy {
    std::string name;
    double energy = 0.0;
    double bound = 0.0;  // the inequality this witness certifies
};

struct BoundReport {
    MagnitudeSums sums;
    double trivial_bound = 0.0;      // -(A0 + A1)
    double k44_bound = 0.0;          // A0 + A1 - C A01
    double field_bound = 0.0;        // A0 + A1 + A01 - B
    double certificate_bound = 0.0;  // -(C / (3C + 4)) (A0 + A1 + A01 + B)
    std::vector<WitnessEnergy> witnesses;  // path, k44, field
    std::string best_witness_name;
    double best_witness_energy = 0.0;
    SpinAssignment best_witness;
};

// All three witnesses and the best of them. Ties keep the earlier witness.
BoundReport certificate(const ChimeraInstance& inst);

}  // namespace chimera
