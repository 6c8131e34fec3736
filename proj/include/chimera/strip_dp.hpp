#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chimera/hamiltonian.hpp"
#include "chimera/oracle.hpp"

namespace chimera {

// A graph laid out in m levels; edges join vertices of the same level or of
// adjacent levels only. Local vertex index = level offset + position, so
// vertices are numbered level by level in position order. In a level state,
// bit p is the spin of the vertex at position p, bit 1 <-> +1.
class StripGraph {
public:
    struct LocalEdge {
        std::size_t u = 0;
        std::size_t v = 0;
        double c = 0.0;
    };

    StripGraph() = default;
    explicit StripGraph(std::vector<std::size_t> level_widths);

    // Adds an edge between local vertices; routes it to intra or inter by the
    // levels of its endpoints. Throws if the levels are more than one apart.
    void add_edge(std::size_t u, std::size_t v, double c);
    void set_field(std::size_t v, double d);

    std::size_t levels() const noexcept { return widths_.size(); }
    std::size_t width(std::size_t level) const { return widths_.at(level); }
    std::size_t max_width() const noexcept;
    std::size_t vertex_count() const noexcept { return fields_.size(); }
    std::size_t offset(std::size_t level) const { return offsets_.at(level); }
    std::size_t level_of(std::size_t v) const;

    const std::vector<std::size_t>& widths() const noexcept { return widths_; }
    const std::vector<LocalEdge>& intra_edges() const noexcept { return intra_; }
    const std::vector<LocalEdge>& inter_edges() const noexcept { return inter_; }
    const std::vector<double>& fields() const noexcept { return fields_; }

    // Original Chimera ids of the local vertices, when the strip was cut out
    // of an instance; empty for synthetic strips.
    std::vector<VertexId> vertex_ids;
    // Sorted cut-axis indices (grid i values) covered by an extracted strip.
    std::vector<int> cut_axis_span;

    // Canonical energy: intra edges, inter edges, then fields, in insertion
    // order, accumulated in long double.
    double energy(std::span<const Spin> s) const;

    SmallProblem to_small_problem() const;

private:
    std::vector<std::size_t> widths_;
    std::vector<std::size_t> offsets_;
    std::vector<LocalEdge> intra_;
    std::vector<LocalEdge> inter_;
    std::vector<double> fields_;
};

struct StripSolution {
    // Canonical energy of `assignment`.
    double energy = 0.0;
    // Value carried by the DP table; equal to `energy` up to rounding order.
    double table_value = 0.0;
    std::vector<Spin> assignment;

    // Table entries written; the DP's unit of work.
    std::uint64_t work = 0;
    // Largest state table used, as a bit count.
    std::size_t peak_state_bits = 0;
};

constexpr std::size_t kReferenceWidthBudget = 16;
constexpr std::size_t kStripWidthBudget = 24;
// The optimized DP's table may hold a few more vertices than one level when
// inter-level edges are not position aligned.
constexpr std::size_t kStateBitsBudget = 25;

// Level-by-level DP over all pairs of level states, O(m 4^b). Ties go to the
// numerically smallest level state. Throws BudgetExceeded for width > 16.
StripSolution solve_strip_reference(const StripGraph& g);

// Vertex-by-vertex DP over a frontier of live vertices. When the vertex
// entering the frontier is the last unseen neighbour of a live vertex, the
// two swap places in the state index, so position-aligned inter-level edges
// (as in Chimera strips) keep the table at one level's width or less.
// Throws BudgetExceeded for width > 24 or a frontier over 25 vertices.
StripSolution solve_strip(const StripGraph& g);

// Largest frontier solve_strip would use, without allocating the tables.
std::size_t planned_state_bits(const StripGraph& g);

// Connected components of the instance after deleting `removed` (indices of
// layer-0 edges), each as a strip whose levels run along j. Within a level,
// vertices are in ascending id order. Throws std::invalid_argument if a
// removed edge is not a layer-0 edge.
std::vector<StripGraph> extract_strips(const ChimeraInstance& inst, std::span<const std::size_t> removed);

}  // namespace chimera
