#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chimera/graph.hpp"

namespace chimera {

using Spin = std::int8_t;

// A +/-1 value per vertex, indexed by VertexId.
class SpinAssignment {
public:
    SpinAssignment() = default;
    // All spins +1.
    explicit SpinAssignment(std::size_t n) : spins_(n, Spin{1}) {}
    // Throws std::invalid_argument if any entry is not -1 or +1.
    explicit SpinAssignment(std::vector<Spin> spins);

    std::size_t size() const noexcept { return spins_.size(); }
    Spin operator[](std::size_t v) const { return spins_[v]; }
    Spin operator[](VertexId v) const { return spins_[v.value]; }
    void set(std::size_t v, Spin s);
    void flip(std::size_t v) { spins_[v] = static_cast<Spin>(-spins_[v]); }

    std::span<const Spin> spins() const noexcept { return spins_; }

    bool operator==(const SpinAssignment&) const = default;

private:
    std::vector<Spin> spins_;
};

// Problem data: couplings dense in topology edge order, fields dense in
// VertexId order.
class ChimeraInstance {
public:
    explicit ChimeraInstance(ChimeraTopology topology);
    ChimeraInstance(ChimeraTopology topology, std::vector<double> couplings, std::vector<double> fields);

    const ChimeraTopology& topology() const noexcept { return topology_; }
    int r() const noexcept { return topology_.r(); }
    std::size_t vertex_count() const noexcept { return topology_.vertex_count(); }

    const std::vector<double>& couplings() const noexcept { return couplings_; }
    const std::vector<double>& fields() const noexcept { return fields_; }

    double coupling(std::size_t edge) const { return couplings_.at(edge); }
    double field(VertexId v) const { return fields_.at(v.value); }
    void set_coupling(std::size_t edge, double c);
    void set_field(VertexId v, double d);

    bool operator==(const ChimeraInstance&) const = default;

private:
    ChimeraTopology topology_;
    std::vector<double> couplings_;
    std::vector<double> fields_;
};

struct EnergyBreakdown {
    double m0 = 0.0;
    double m1 = 0.0;
    double m01 = 0.0;
    double d = 0.0;
    double total = 0.0;
};

struct MagnitudeSums {
    double a0 = 0.0;
    double a1 = 0.0;
    double a01 = 0.0;
    double b = 0.0;

    double total() const noexcept { return a0 + a1 + a01 + b; }
};

// H(S) split by edge class. Sums accumulate left to right in edge order in
// long double, so results are reproducible bit for bit.
EnergyBreakdown evaluate(const ChimeraInstance& inst, const SpinAssignment& s);
EnergyBreakdown evaluate(const ChimeraInstance& inst, std::span<const Spin> s);

MagnitudeSums magnitude_sums(const ChimeraInstance& inst);

// Sum of |c| over one class.
double class_magnitude(const ChimeraInstance& inst, EdgeClass cls);

SpinAssignment flip_all(const SpinAssignment& s);
// Negates the spins of every vertex in `layer`; throws on layer not in {0,1}.
SpinAssignment flip_layer(const SpinAssignment& s, int layer, int r);

// The instance relabeled by the transpose map, and the pull-back of an
// assignment on the transposed instance.
ChimeraInstance transpose_instance(const ChimeraInstance& inst, const Transpose& t);
SpinAssignment pull_back(const SpinAssignment& s, const Transpose& t);

ChimeraInstance scaled(const ChimeraInstance& inst, double alpha);

}  // namespace chimera
