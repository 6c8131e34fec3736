#include "chimera/bounds.hpp"

#include <cmath>
#include <numbers>

namespace chimera {

namespace {

// sign(0) = +1 everywhere.
Spin sign_of(double x) { return x < 0.0 ? Spin{-1} : Spin{1}; }

}  // namespace

double GrothendieckConstants::k_upper() { return std::numbers::pi / (2.0 * std::log(1.0 + std::numbers::sqrt2)); }

double GrothendieckConstants::c_lower() { return std::log(1.0 + std::numbers::sqrt2) / std::numbers::pi; }

double GrothendieckConstants::factor() {
    const double c = c_lower();
    return (3.0 * c + 4.0) / c;
}

K44Minimum k44_exhaustive_min(const CellCoefficients& c) {
    K44Minimum best;
    bool first = true;
    for (unsigned pattern = 0; pattern < 128; ++pattern) {
        std::array<Spin, 4> u{Spin{1}, Spin{1}, Spin{1}, Spin{1}};
        std::array<Spin, 4> v{Spin{1}, Spin{1}, Spin{1}, Spin{1}};
        for (int a = 0; a < 3; ++a) u[a + 1] = ((pattern >> a) & 1u) ? Spin{-1} : Spin{1};
        for (int b = 0; b < 4; ++b) v[b] = ((pattern >> (3 + b)) & 1u) ? Spin{-1} : Spin{1};
        double value = 0.0;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) value += c[a][b] * (u[a] * v[b]);
        }
        if (first || value < best.value) {
            best = {value, u, v};
            first = false;
        }
    }
    return best;
}

SignVectors sign_vectors(const CellCoefficients& c) {
    SignVectors out;
    for (int i = 0; i < 4; ++i) {
        out.x[i] = {0.0, 0.0, 0.0, 0.0};
        out.x[i][i] = 1.0;
    }
    for (int j = 0; j < 4; ++j) {
        for (int d = 0; d < 4; ++d) {
            out.y[j][d] = 0.0;
            for (int i = 0; i < 4; ++i) out.y[j][d] += 0.5 * sign_of(c[i][j]) * out.x[i][d];
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double dot = 0.0;
            for (int d = 0; d < 4; ++d) dot += out.x[i][d] * out.y[j][d];
            out.value += c[i][j] * dot;
        }
    }
    return out;
}

CellCoefficients cell_coefficients(const ChimeraInstance& inst, int i, int j) {
    const auto& topo = inst.topology();
    CellCoefficients c{};
    for (int k0 = 1; k0 <= 4; ++k0) {
        for (int k1 = 1; k1 <= 4; ++k1) {
            const auto e = topo.find_edge(topo.id({i, j, k0, 0}), topo.id({i, j, k1, 1}));
            c[k0 - 1][k1 - 1] = inst.coupling(*e);
        }
    }
    return c;
}

SpinAssignment path_witness(const ChimeraInstance& inst) {
    const auto& topo = inst.topology();
    const int r = inst.r();
    SpinAssignment s(inst.vertex_count());

    auto walk = [&](auto next_coord, ChimeraCoord start) {
        ChimeraCoord cur = start;
        Spin spin = 1;
        s.set(topo.id(cur).value, spin);
        for (int step = 1; step < r; ++step) {
            const ChimeraCoord nxt = next_coord(cur);
            const auto e = topo.find_edge(topo.id(cur), topo.id(nxt));
            spin = static_cast<Spin>(-sign_of(inst.coupling(*e)) * spin);
            s.set(topo.id(nxt).value, spin);
            cur = nxt;
        }
    };
    for (int k = 1; k <= 4; ++k) {
        for (int j = 1; j <= r; ++j) {
            walk([](ChimeraCoord c) { return ChimeraCoord{c.i + 1, c.j, c.k, c.l}; }, {1, j, k, 0});
        }
        for (int i = 1; i <= r; ++i) {
            walk([](ChimeraCoord c) { return ChimeraCoord{c.i, c.j + 1, c.k, c.l}; }, {i, 1, k, 1});
        }
    }

    if (evaluate(inst, s).m01 > 0.0) s = flip_layer(s, 0, r);
    if (evaluate(inst, s).d > 0.0) s = flip_all(s);
    return s;
}

SpinAssignment k44_witness(const ChimeraInstance& inst) {
    const auto& topo = inst.topology();
    const int r = inst.r();
    SpinAssignment s(inst.vertex_count());
    for (int i = 1; i <= r; ++i) {
        for (int j = 1; j <= r; ++j) {
            const auto best = k44_exhaustive_min(cell_coefficients(inst, i, j));
            for (int k = 1; k <= 4; ++k) {
                s.set(topo.id({i, j, k, 0}).value, best.u[k - 1]);
                s.set(topo.id({i, j, k, 1}).value, best.v[k - 1]);
            }
        }
    }
    if (evaluate(inst, s).d > 0.0) s = flip_all(s);
    return s;
}

SpinAssignment field_witness(const ChimeraInstance& inst) {
    SpinAssignment s(inst.vertex_count());
    for (std::size_t v = 0; v < s.size(); ++v) s.set(v, inst.fields()[v] > 0.0 ? Spin{-1} : Spin{1});
    return s;
}

BoundReport certificate(const ChimeraInstance& inst) {
    BoundReport report;
    const auto& m = report.sums = magnitude_sums(inst);
    const double c = GrothendieckConstants::c_lower();
    report.trivial_bound = -(m.a0 + m.a1);
    report.k44_bound = m.a0 + m.a1 - c * m.a01;
    report.field_bound = m.a0 + m.a1 + m.a01 - m.b;
    report.certificate_bound = -(c / (3.0 * c + 4.0)) * m.total();

    const std::pair<const char*, SpinAssignment> candidates[] = {
        {"path", path_witness(inst)},
        {"k44", k44_witness(inst)},
        {"field", field_witness(inst)},
    };
    const double bounds[] = {report.trivial_bound, report.k44_bound, report.field_bound};
    for (std::size_t w = 0; w < 3; ++w) {
        const double energy = evaluate(inst, candidates[w].second).total;
        report.witnesses.push_back({candidates[w].first, energy, bounds[w]});
        if (w == 0 || energy < report.best_witness_energy) {
            report.best_witness_name = candidates[w].first;
            report.best_witness_energy = energy;
            report.best_witness = candidates[w].second;
        }
    }
    return report;
}

}  // namespace chimera
