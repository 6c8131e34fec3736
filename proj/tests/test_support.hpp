#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chimera/instance_io.hpp"
#include "chimera/strip_dp.hpp"

namespace chimera::fixtures {

// Multiples of 1/4 in [-2, 2]: every partial sum is exact in double, so
// independent solvers must agree bit for bit.
inline double dyadic(std::mt19937_64& rng) {
    return static_cast<double>(std::uniform_int_distribution<int>(-8, 8)(rng)) / 4.0;
}

struct StripShape {
    std::size_t levels = 3;
    std::size_t max_width = 4;
    double intra_density = 0.5;
    double inter_density = 0.5;
    double field_density = 0.5;
    // Inter edges only between equal positions, as in Chimera strips.
    bool aligned = false;
};

inline StripGraph random_strip(std::mt19937_64& rng, const StripShape& shape) {
    std::uniform_int_distribution<std::size_t> width(1, shape.max_width);
    std::vector<std::size_t> widths(shape.levels);
    for (auto& w : widths) w = width(rng);
    StripGraph g(widths);
    std::bernoulli_distribution intra(shape.intra_density);
    std::bernoulli_distribution inter(shape.inter_density);
    std::bernoulli_distribution field(shape.field_density);
    for (std::size_t t = 0; t < g.levels(); ++t) {
        for (std::size_t p = 0; p < g.width(t); ++p) {
            for (std::size_t q = p + 1; q < g.width(t); ++q) {
                if (intra(rng)) g.add_edge(g.offset(t) + p, g.offset(t) + q, dyadic(rng));
            }
            if (t + 1 < g.levels()) {
                for (std::size_t q = 0; q < g.width(t + 1); ++q) {
                    if (shape.aligned && q != p) continue;
                    if (inter(rng)) g.add_edge(g.offset(t) + p, g.offset(t + 1) + q, dyadic(rng));
                }
            }
            if (field(rng)) g.set_field(g.offset(t) + p, dyadic(rng));
        }
    }
    return g;
}

inline ChimeraInstance gaussian_instance(int r, std::uint64_t seed, bool with_fields = true) {
    GeneratorSpec spec;
    spec.couplings = parse_distribution("gaussian(0,1)");
    spec.fields = parse_distribution(with_fields ? "gaussian(0,1)" : "zero");
    spec.seed = seed;
    return generate(r, spec);
}

// Dyadic couplings and fields on G_r.
inline ChimeraInstance dyadic_instance(int r, std::mt19937_64& rng, bool with_fields = true) {
    ChimeraInstance inst{ChimeraTopology(r)};
    for (std::size_t e = 0; e < inst.topology().edge_count(); ++e) inst.set_coupling(e, dyadic(rng));
    if (with_fields) {
        for (std::uint32_t v = 0; v < inst.vertex_count(); ++v) inst.set_field(VertexId(v), dyadic(rng));
    }
    return inst;
}

// Plain double loop over all 2^n assignments, independent of the Gray-code
// oracle.
inline double enumerate_minimum(const SmallProblem& p) {
    double best = 0.0;
    bool first = true;
    std::vector<Spin> s(p.n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << p.n); ++x) {
        for (std::size_t u = 0; u < p.n; ++u) s[u] = ((x >> u) & 1u) ? Spin{1} : Spin{-1};
        const double e = p.energy(s);
        if (first || e < best) {
            best = e;
            first = false;
        }
    }
    return best;
}

}  // namespace chimera::fixtures
