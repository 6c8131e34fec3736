#include "chimera/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace chimera {

namespace {

void validate(const SmallProblem& p) {
    if (p.n > SmallProblem::max_vertices) {
        throw BudgetExceeded("brute force limited to " + std::to_string(SmallProblem::max_vertices) +
                             " vertices, got " + std::to_string(p.n));
    }
    if (!p.fields.empty() && p.fields.size() != p.n) {
        throw std::invalid_argument("field count does not match vertex count");
    }
    for (const auto& e : p.edges) {
        if (e.u >= p.n || e.v >= p.n || e.u == e.v) throw std::invalid_argument("invalid edge in small problem");
        if (!std::isfinite(e.c)) throw std::invalid_argument("non-finite coupling in small problem");
    }
    for (auto d : p.fields) {
        if (!std::isfinite(d)) throw std::invalid_argument("non-finite field in small problem");
    }
}

// Lexicographic key with vertex 0 most significant and bit 1 <-> +1.
std::uint32_t lex_key(std::uint32_t state, std::size_t n) {
    std::uint32_t key = 0;
    for (std::size_t u = 0; u < n; ++u) key = (key << 1) | ((state >> u) & 1u);
    return key;
}

}  // namespace

double SmallProblem::energy(std::span<const Spin> s) const {
    if (s.size() != n) throw std::invalid_argument("assignment length does not match small problem");
    long double e = 0.0L;
    for (const auto& edge : edges) e += static_cast<long double>(edge.c) * (s[edge.u] * s[edge.v]);
    for (std::size_t u = 0; u < fields.size(); ++u) e += static_cast<long double>(fields[u]) * s[u];
    return static_cast<double>(e);
}

SmallProblem to_small_problem(const ChimeraInstance& inst) {
    SmallProblem p;
    p.n = inst.vertex_count();
    const auto& edges = inst.topology().edges();
    p.edges.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        p.edges.push_back({edges[e].u.value, edges[e].v.value, inst.couplings()[e]});
    }
    p.fields = inst.fields();
    return p;
}

OracleResult brute_force(const SmallProblem& p) {
    validate(p);
    const std::size_t n = p.n;
    if (n == 0) return {0.0, {}};

    struct Neighbor {
        std::size_t v;
        long double c;
    };
    std::vector<std::vector<Neighbor>> adj(n);
    for (const auto& e : p.edges) {
        adj[e.u].push_back({e.v, e.c});
        adj[e.v].push_back({e.u, e.c});
    }
    std::vector<long double> field(n, 0.0L);
    for (std::size_t u = 0; u < p.fields.size(); ++u) field[u] = p.fields[u];

    std::vector<Spin> s(n, Spin{-1});
    auto exact = [&] {
        long double e = 0.0L;
        for (const auto& edge : p.edges) e += static_cast<long double>(edge.c) * (s[edge.u] * s[edge.v]);
        for (std::size_t u = 0; u < n; ++u) e += field[u] * s[u];
        return e;
    };

    // Gray-code walk: one spin flip per step, with an exact resync every
    // 4096 steps to bound drift.
    constexpr std::uint64_t resync = 4096;
    const std::uint64_t total = std::uint64_t{1} << n;
    long double energy = exact();
    long double best = energy;
    std::uint32_t best_state = 0;
    std::uint32_t state = 0;
    for (std::uint64_t t = 1; t < total; ++t) {
        const auto u = static_cast<std::size_t>(std::countr_zero(t));
        long double local = field[u];
        for (const auto& nb : adj[u]) local += nb.c * s[nb.v];
        energy -= 2.0L * s[u] * local;
        s[u] = static_cast<Spin>(-s[u]);
        state ^= std::uint32_t{1} << u;
        if (t % resync == 0) energy = exact();
        if (energy < best || (energy == best && lex_key(state, n) < lex_key(best_state, n))) {
            best = energy;
            best_state = state;
        }
    }

    OracleResult out;
    out.assignment.resize(n);
    for (std::size_t u = 0; u < n; ++u) out.assignment[u] = ((best_state >> u) & 1u) ? Spin{1} : Spin{-1};
    out.energy = p.energy(out.assignment);
    return out;
}

}  // namespace chimera
