#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chimera {

// Chimera graph G_r: an r x r grid of cells, each cell holding four
// layer-0 and four layer-1 vertices joined as a K4,4. Layer-0 vertices
// chain along i, layer-1 vertices chain along j.

struct ChimeraCoord {
    int i = 1;  // grid row, 1..r
    int j = 1;  // grid column, 1..r
    int k = 1;  // cell slot, 1..4
    int l = 0;  // layer, 0 or 1

    auto operator<=>(const ChimeraCoord&) const = default;
};

std::string to_string(const ChimeraCoord& c);

struct VertexId {
    std::uint32_t value = 0;

    constexpr VertexId() = default;
    constexpr explicit VertexId(std::uint32_t v) : value(v) {}
    auto operator<=>(const VertexId&) const = default;
};

enum class EdgeClass : std::uint8_t { Layer0, Layer1, Cross };

const char* to_string(EdgeClass cls);

struct Edge {
    VertexId u;  // always the smaller id
    VertexId v;
    EdgeClass cls;

    bool operator==(const Edge&) const = default;
};

// Canonical numbering: id = (((i-1)*r + (j-1))*4 + (k-1))*2 + l.
// Throws std::out_of_range on any out-of-range component.
VertexId coord_to_id(const ChimeraCoord& c, int r);
ChimeraCoord id_to_coord(VertexId v, int r);

bool coord_in_range(const ChimeraCoord& c, int r) noexcept;

class ChimeraTopology {
public:
    explicit ChimeraTopology(int r);

    int r() const noexcept { return r_; }
    std::size_t vertex_count() const noexcept { return static_cast<std::size_t>(8 * r_ * r_); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    // Sorted by (u, v).
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t index) const { return edges_.at(index); }

    std::optional<std::size_t> find_edge(VertexId a, VertexId b) const;
    std::size_t count(EdgeClass cls) const noexcept;

    VertexId id(const ChimeraCoord& c) const { return coord_to_id(c, r_); }
    ChimeraCoord coord(VertexId v) const { return id_to_coord(v, r_); }

    bool operator==(const ChimeraTopology&) const = default;

private:
    int r_;
    std::vector<Edge> edges_;
};

ChimeraTopology build_chimera(int r);

// Relabeling (i,j,k,l) -> (j,i,k,1-l). G_r maps onto itself with E0 and E1
// swapped; forward[old id] = new id.
struct Transpose {
    int r = 0;
    std::vector<VertexId> forward;

    VertexId operator()(VertexId v) const { return forward.at(v.value); }
    // Edge index in the topology after relabeling.
    std::vector<std::size_t> edge_map(const ChimeraTopology& topo) const;
};

Transpose transpose(const ChimeraTopology& topo);

}  // namespace chimera
