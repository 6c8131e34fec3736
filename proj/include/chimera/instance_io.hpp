#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chimera/hamiltonian.hpp"

namespace chimera {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kInstanceFormat = "chimera-ising/v1";
inline constexpr std::string_view kAssignmentFormat = "spin-assignment/v1";

// JSON text:
//   {"format": "chimera-ising/v1", "r": R,
//    "couplings": [{"u": [i,j,k,l], "v": [i,j,k,l], "c": x}, ...],
//    "fields": [{"u": [i,j,k,l], "d": x}, ...]}
// Omitted edges and vertices are 0. Numbers are written in shortest
// round-trip decimal, so load(save(x)) is bit-exact.
std::string save_instance(const ChimeraInstance& inst);
ChimeraInstance load_instance(std::string_view text);

struct AssignmentFile {
    int r = 1;
    SpinAssignment spins;
    // Written by the solver so verify can detect tampering.
    std::optional<double> energy;
    std::string algo;
    std::optional<double> epsilon;
};

//   {"format": "spin-assignment/v1", "r": R, "spins": [s_0, ..., s_{8R^2-1}],
//    "energy": x, "algo": "...", "epsilon": x}
// spins in VertexId order; energy, algo and epsilon are optional.
std::string save_assignment(const AssignmentFile& file);
AssignmentFile load_assignment(std::string_view text);

struct Distribution {
    enum class Kind { Zero, UniformPm1, Gaussian, Uniform };
    Kind kind = Kind::Zero;
    double a = 0.0;  // mean or lo
    double b = 0.0;  // sd or hi
};

// "zero", "uniform-pm1", "gaussian(mean,sd)", "uniform(lo,hi)".
Distribution parse_distribution(std::string_view text);
std::string to_string(const Distribution& d);

struct GeneratorSpec {
    Distribution couplings{Distribution::Kind::UniformPm1};
    Distribution fields{Distribution::Kind::Zero};
    std::uint64_t seed = 0;
};

// Draws couplings in edge order, then fields in vertex order, from one
// XorShift64Star stream. Zero draws nothing.
ChimeraInstance generate(int r, const GeneratorSpec& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace chimera
