#include "chimera/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace chimera {

std::string to_string(const ChimeraCoord& c) {
    return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + "," + std::to_string(c.k) + "," +
           std::to_string(c.l) + ")";
}

const char* to_string(EdgeClass cls) {
    switch (cls) {
        case EdgeClass::Layer0: return "E0";
        case EdgeClass::Layer1: return "E1";
        case EdgeClass::Cross: return "E01";
    }
    return "?";
}

bool coord_in_range(const ChimeraCoord& c, int r) noexcept {
    return r >= 1 && c.i >= 1 && c.i <= r && c.j >= 1 && c.j <= r && c.k >= 1 && c.k <= 4 &&
           (c.l == 0 || c.l == 1);
}

VertexId coord_to_id(const ChimeraCoord& c, int r) {
    if (!coord_in_range(c, r)) {
        throw std::out_of_range("coordinate " + to_string(c) + " outside G_" + std::to_string(r));
    }
    const auto id = (((c.i - 1) * r + (c.j - 1)) * 4 + (c.k - 1)) * 2 + c.l;
    return VertexId(static_cast<std::uint32_t>(id));
}

ChimeraCoord id_to_coord(VertexId v, int r) {
    if (r < 1 || v.value >= static_cast<std::uint32_t>(8 * r * r)) {
        throw std::out_of_range("vertex id " + std::to_string(v.value) + " outside G_" + std::to_string(r));
    }
    int id = static_cast<int>(v.value);
    ChimeraCoord c;
    c.l = id % 2;
    id /= 2;
    c.k = id % 4 + 1;
    id /= 4;
    c.j = id % r + 1;
    c.i = id / r + 1;
    return c;
}

ChimeraTopology::ChimeraTopology(int r) : r_(r) {
    if (r < 1) {
        throw std::invalid_argument("Chimera size r must be >= 1, got " + std::to_string(r));
    }
    edges_.reserve(static_cast<std::size_t>(24 * r * r - 8 * r));
    auto add = [this](ChimeraCoord a, ChimeraCoord b, EdgeClass cls) {
        auto u = coord_to_id(a, r_);
        auto v = coord_to_id(b, r_);
        if (v < u) std::swap(u, v);
        edges_.push_back({u, v, cls});
    };
    for (int i = 1; i <= r; ++i) {
        for (int j = 1; j <= r; ++j) {
            for (int k = 1; k <= 4; ++k) {
                if (i < r) add({i, j, k, 0}, {i + 1, j, k, 0}, EdgeClass::Layer0);
                if (j < r) add({i, j, k, 1}, {i, j + 1, k, 1}, EdgeClass::Layer1);
            }
            for (int k0 = 1; k0 <= 4; ++k0) {
                for (int k1 = 1; k1 <= 4; ++k1) add({i, j, k0, 0}, {i, j, k1, 1}, EdgeClass::Cross);
            }
        }
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
}

std::optional<std::size_t> ChimeraTopology::find_edge(VertexId a, VertexId b) const {
    if (b < a) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                               [](const Edge& e, const std::pair<VertexId, VertexId>& key) {
                                   return std::tie(e.u, e.v) < std::tie(key.first, key.second);
                               });
    if (it == edges_.end() || it->u != a || it->v != b) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

std::size_t ChimeraTopology::count(EdgeClass cls) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [cls](const Edge& e) { return e.cls == cls; }));
}

ChimeraTopology build_chimera(int r) { return ChimeraTopology(r); }

Transpose transpose(const ChimeraTopology& topo) {
    Transpose t;
    t.r = topo.r();
    t.forward.resize(topo.vertex_count());
    for (std::uint32_t id = 0; id < topo.vertex_count(); ++id) {
        const auto c = topo.coord(VertexId(id));
        t.forward[id] = topo.id({c.j, c.i, c.k, 1 - c.l});
    }
    return t;
}

std::vector<std::size_t> Transpose::edge_map(const ChimeraTopology& topo) const {
    std::vector<std::size_t> map(topo.edge_count());
    for (std::size_t e = 0; e < topo.edge_count(); ++e) {
        const auto& edge = topo.edge(e);
        const auto image = topo.find_edge((*this)(edge.u), (*this)(edge.v));
        if (!image) throw std::logic_error("transpose produced a non-edge");
        map[e] = *image;
    }
    return map;
}

}  // namespace chimera
