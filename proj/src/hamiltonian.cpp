#include "chimera/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chimera {

namespace {

void check_spin(Spin s) {
    if (s != 1 && s != -1) {
        throw std::invalid_argument("spin value must be -1 or +1, got " + std::to_string(int{s}));
    }
}

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string("non-finite ") + what);
}

}  // namespace

SpinAssignment::SpinAssignment(std::vector<Spin> spins) : spins_(std::move(spins)) {
    for (auto s : spins_) check_spin(s);
}

void SpinAssignment::set(std::size_t v, Spin s) {
    check_spin(s);
    spins_.at(v) = s;
}

ChimeraInstance::ChimeraInstance(ChimeraTopology topology)
    : topology_(std::move(topology)),
      couplings_(topology_.edge_count(), 0.0),
      fields_(topology_.vertex_count(), 0.0) {}

ChimeraInstance::ChimeraInstance(ChimeraTopology topology, std::vector<double> couplings,
                                 std::vector<double> fields)
    : topology_(std::move(topology)), couplings_(std::move(couplings)), fields_(std::move(fields)) {
    if (couplings_.size() != topology_.edge_count()) {
        throw std::invalid_argument("coupling count " + std::to_string(couplings_.size()) + " != edge count " +
                                    std::to_string(topology_.edge_count()));
    }
    if (fields_.size() != topology_.vertex_count()) {
        throw std::invalid_argument("field count " + std::to_string(fields_.size()) + " != vertex count " +
                                    std::to_string(topology_.vertex_count()));
    }
    for (auto c : couplings_) check_finite(c, "coupling");
    for (auto d : fields_) check_finite(d, "field");
}

void ChimeraInstance::set_coupling(std::size_t edge, double c) {
    check_finite(c, "coupling");
    couplings_.at(edge) = c;
}

void ChimeraInstance::set_field(VertexId v, double d) {
    check_finite(d, "field");
    fields_.at(v.value) = d;
}

EnergyBreakdown evaluate(const ChimeraInstance& inst, const SpinAssignment& s) {
    return evaluate(inst, s.spins());
}

EnergyBreakdown evaluate(const ChimeraInstance& inst, std::span<const Spin> s) {
    if (s.size() != inst.vertex_count()) {
        throw std::invalid_argument("assignment length " + std::to_string(s.size()) + " != vertex count " +
                                    std::to_string(inst.vertex_count()));
    }
    long double m[3] = {0.0L, 0.0L, 0.0L};
    const auto& edges = inst.topology().edges();
    const auto& c = inst.couplings();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const int prod = s[edges[e].u.value] * s[edges[e].v.value];
        m[static_cast<int>(edges[e].cls)] += static_cast<long double>(c[e]) * prod;
    }
    long double d = 0.0L;
    const auto& f = inst.fields();
    for (std::size_t v = 0; v < f.size(); ++v) d += static_cast<long double>(f[v]) * s[v];

    EnergyBreakdown out;
    out.m0 = static_cast<double>(m[0]);
    out.m1 = static_cast<double>(m[1]);
    out.m01 = static_cast<double>(m[2]);
    out.d = static_cast<double>(d);
    out.total = static_cast<double>(m[0] + m[1] + m[2] + d);
    return out;
}

double class_magnitude(const ChimeraInstance& inst, EdgeClass cls) {
    long double sum = 0.0L;
    const auto& edges = inst.topology().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].cls == cls) sum += std::fabs(static_cast<long double>(inst.couplings()[e]));
    }
    return static_cast<double>(sum);
}

MagnitudeSums magnitude_sums(const ChimeraInstance& inst) {
    MagnitudeSums out;
    out.a0 = class_magnitude(inst, EdgeClass::Layer0);
    out.a1 = class_magnitude(inst, EdgeClass::Layer1);
    out.a01 = class_magnitude(inst, EdgeClass::Cross);
    long double b = 0.0L;
    for (auto d : inst.fields()) b += std::fabs(static_cast<long double>(d));
    out.b = static_cast<double>(b);
    return out;
}

SpinAssignment flip_all(const SpinAssignment& s) {
    SpinAssignment out = s;
    for (std::size_t v = 0; v < out.size(); ++v) out.flip(v);
    return out;
}

SpinAssignment flip_layer(const SpinAssignment& s, int layer, int r) {
    if (layer != 0 && layer != 1) throw std::invalid_argument("layer must be 0 or 1, got " + std::to_string(layer));
    if (s.size() != static_cast<std::size_t>(8 * r * r)) {
        throw std::invalid_argument("assignment length does not match r=" + std::to_string(r));
    }
    SpinAssignment out = s;
    // The layer is the lowest bit of the canonical id.
    for (std::size_t v = static_cast<std::size_t>(layer); v < out.size(); v += 2) out.flip(v);
    return out;
}

ChimeraInstance transpose_instance(const ChimeraInstance& inst, const Transpose& t) {
    const auto& topo = inst.topology();
    const auto edge_map = t.edge_map(topo);
    std::vector<double> couplings(topo.edge_count());
    std::vector<double> fields(topo.vertex_count());
    for (std::size_t e = 0; e < edge_map.size(); ++e) couplings[edge_map[e]] = inst.couplings()[e];
    for (std::uint32_t v = 0; v < fields.size(); ++v) fields[t(VertexId(v)).value] = inst.fields()[v];
    return ChimeraInstance(topo, std::move(couplings), std::move(fields));
}

SpinAssignment pull_back(const SpinAssignment& s, const Transpose& t) {
    if (s.size() != t.forward.size()) throw std::invalid_argument("assignment length does not match transpose");
    std::vector<Spin> out(s.size());
    for (std::uint32_t v = 0; v < out.size(); ++v) out[v] = s[t(VertexId(v))];
    return SpinAssignment(std::move(out));
}

ChimeraInstance scaled(const ChimeraInstance& inst, double alpha) {
    auto couplings = inst.couplings();
    auto fields = inst.fields();
    for (auto& c : couplings) c *= alpha;
    for (auto& d : fields) d *= alpha;
    return ChimeraInstance(inst.topology(), std::move(couplings), std::move(fields));
}

}  // namespace chimera
