#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "chimera/strip_dp.hpp"
#include "test_support.hpp"

using namespace chimera;

namespace {

std::vector<std::size_t> layer0_edges_at(const ChimeraInstance& inst, const std::set<int>& cut_rows) {
    std::vector<std::size_t> out;
    const auto& topo = inst.topology();
    for (std::size_t e = 0; e < topo.edge_count(); ++e) {
        const auto& edge = topo.edge(e);
        if (edge.cls != EdgeClass::Layer0) continue;
        if (cut_rows.count(topo.coord(edge.u).i) || cut_rows.count(topo.coord(edge.v).i)) out.push_back(e);
    }
    return out;
}

// Row sets of the connected components, by a separate union-find.
std::set<std::set<int>> component_rows(const ChimeraInstance& inst, const std::vector<std::size_t>& removed) {
    const auto& topo = inst.topology();
    std::vector<std::size_t> parent(topo.vertex_count());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::set<std::size_t> gone(removed.begin(), removed.end());
    for (std::size_t e = 0; e < topo.edge_count(); ++e) {
        if (!gone.count(e)) parent[find(topo.edge(e).u.value)] = find(topo.edge(e).v.value);
    }
    std::map<std::size_t, std::set<int>> rows;
    for (std::uint32_t v = 0; v < topo.vertex_count(); ++v) rows[find(v)].insert(topo.coord(VertexId(v)).i);
    std::set<std::set<int>> out;
    for (auto& [root, set] : rows) out.insert(set);
    return out;
}

}  // namespace

TEST(StripDp, SingleSpinWithField) {
    StripGraph g({1});
    g.set_field(0, 1.0);
    for (const auto& sol : {solve_strip_reference(g), solve_strip(g)}) {
        EXPECT_EQ(sol.energy, -1.0);
        ASSERT_EQ(sol.assignment.size(), 1u);
        EXPECT_EQ(sol.assignment[0], -1);
    }
}

TEST(StripDp, AntialignedPairAcrossLevels) {
    StripGraph g({1, 1});
    g.add_edge(0, 1, 1.0);
    EXPECT_EQ(solve_strip_reference(g).energy, -1.0);
    EXPECT_EQ(solve_strip(g).energy, -1.0);
}

TEST(StripDp, ZeroStrip) {
    StripGraph g({3, 2, 4});
    EXPECT_EQ(solve_strip(g).energy, 0.0);
    EXPECT_EQ(solve_strip_reference(g).energy, 0.0);
}

TEST(StripDp, FerromagneticLadder) {
    StripGraph g({5, 5, 5, 5});
    double total = 0.0;
    for (std::size_t t = 0; t + 1 < g.levels(); ++t) {
        for (std::size_t p = 0; p < 5; ++p) {
            const double c = -0.25 * static_cast<double>(1 + (p + t) % 4);
            g.add_edge(g.offset(t) + p, g.offset(t + 1) + p, c);
            total += std::fabs(c);
        }
    }
    const auto sol = solve_strip(g);
    EXPECT_EQ(sol.energy, -total);
    EXPECT_EQ(g.energy(std::vector<Spin>(g.vertex_count(), Spin{1})), -total);
    EXPECT_EQ(solve_strip_reference(g).energy, -total);
}

TEST(StripDp, RejectsEdgesSkippingALevel) {
    StripGraph g({2, 2, 2});
    EXPECT_THROW(g.add_edge(0, 4, 1.0), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 0, 1.0), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 6, 1.0), std::out_of_range);
    EXPECT_THROW(StripGraph({2, 0}), std::invalid_argument);
}

TEST(StripDp, WidthBudgets) {
    EXPECT_THROW(solve_strip_reference(StripGraph({17})), BudgetExceeded);
    EXPECT_THROW(solve_strip(StripGraph({25})), BudgetExceeded);
    // A complete bipartite join of two 14-wide levels cannot fit the frontier.
    StripGraph dense({14, 14, 14});
    for (std::size_t t = 0; t < 2; ++t) {
        for (std::size_t p = 0; p < 14; ++p) {
            for (std::size_t q = 0; q < 14; ++q) dense.add_edge(dense.offset(t) + p, dense.offset(t + 1) + q, 1.0);
        }
    }
    EXPECT_GT(planned_state_bits(dense), kStateBitsBudget);
    EXPECT_THROW(solve_strip(dense), BudgetExceeded);
}

TEST(StripDp, BothVariantsMatchBruteForce) {
    std::mt19937_64 rng(2024);
    int checked = 0;
    while (checked < 200) {
        fixtures::StripShape shape;
        shape.levels = 1 + rng() % 5;
        shape.max_width = 1 + rng() % 6;
        shape.intra_density = 0.6;
        shape.inter_density = 0.5;
        const auto g = fixtures::random_strip(rng, shape);
        if (g.vertex_count() > 20) continue;
        const auto oracle = brute_force(g.to_small_problem());
        const auto ref = solve_strip_reference(g);
        const auto opt = solve_strip(g);
        ASSERT_EQ(ref.energy, oracle.energy);
        ASSERT_EQ(opt.energy, oracle.energy);
        ASSERT_EQ(g.energy(ref.assignment), ref.energy);
        ASSERT_EQ(g.energy(opt.assignment), opt.energy);
        ASSERT_NEAR(opt.table_value, opt.energy, 1e-9 * (1.0 + std::fabs(opt.energy)));
        ASSERT_NEAR(ref.table_value, ref.energy, 1e-9 * (1.0 + std::fabs(ref.energy)));
        ++checked;
    }
}

TEST(StripDp, OptimizedMatchesReferenceUpToWidthFourteen) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        fixtures::StripShape shape;
        shape.levels = 2 + rng() % 3;
        shape.max_width = 4 + rng() % 11;
        shape.intra_density = 0.5;
        // Half the strips are Chimera-like ladders; the rest have sparse
        // arbitrary inter-level edges.
        shape.aligned = trial % 2 == 0;
        shape.inter_density = shape.aligned ? 0.9 : 0.12;
        const auto g = fixtures::random_strip(rng, shape);
        const auto ref = solve_strip_reference(g);
        const auto opt = solve_strip(g);
        ASSERT_EQ(opt.energy, ref.energy) << "trial " << trial;
    }
}

TEST(StripDp, ExtractStripsColumnSets) {
    const auto inst4 = fixtures::gaussian_instance(4, 1);
    const auto removed4 = layer0_edges_at(inst4, {2, 4});
    const auto strips4 = extract_strips(inst4, removed4);
    ASSERT_EQ(strips4.size(), 4u);
    std::set<std::set<int>> got4;
    for (const auto& s : strips4) {
        got4.insert(std::set<int>(s.cut_axis_span.begin(), s.cut_axis_span.end()));
        EXPECT_EQ(s.levels(), 4u);
        EXPECT_EQ(s.max_width(), 8u);
    }
    EXPECT_EQ(got4, component_rows(inst4, removed4));
    EXPECT_EQ(got4, (std::set<std::set<int>>{{1}, {2}, {3}, {4}}));

    const auto inst5 = fixtures::gaussian_instance(5, 2);
    const auto removed5 = layer0_edges_at(inst5, {3});
    const auto strips5 = extract_strips(inst5, removed5);
    ASSERT_EQ(strips5.size(), 3u);
    std::map<std::set<int>, std::size_t> width_of;
    for (const auto& s : strips5) {
        width_of[std::set<int>(s.cut_axis_span.begin(), s.cut_axis_span.end())] = s.max_width();
    }
    EXPECT_EQ(width_of, (std::map<std::set<int>, std::size_t>{{{1, 2}, 16}, {{3}, 8}, {{4, 5}, 16}}));
    std::set<std::set<int>> got5;
    for (const auto& [rows, w] : width_of) got5.insert(rows);
    EXPECT_EQ(got5, component_rows(inst5, removed5));
}

TEST(StripDp, ExtractWithoutRemovalIsOneStrip) {
    const auto inst = fixtures::gaussian_instance(3, 4);
    const auto strips = extract_strips(inst, {});
    ASSERT_EQ(strips.size(), 1u);
    EXPECT_EQ(strips[0].levels(), 3u);
    EXPECT_EQ(strips[0].max_width(), 24u);
    EXPECT_EQ(strips[0].intra_edges().size() + strips[0].inter_edges().size(), inst.topology().edge_count());
}

TEST(StripDp, ExtractRejectsNonLayerZeroEdges) {
    const auto inst = fixtures::gaussian_instance(2, 4);
    const auto& topo = inst.topology();
    std::size_t cross = 0;
    while (topo.edge(cross).cls != EdgeClass::Cross) ++cross;
    const std::vector<std::size_t> removed{cross};
    EXPECT_THROW(extract_strips(inst, removed), std::invalid_argument);
}

TEST(StripDp, ExtractedStripsPartitionRetainedEdges) {
    const auto inst = fixtures::gaussian_instance(6, 8);
    const auto removed = layer0_edges_at(inst, {3, 6});
    const auto strips = extract_strips(inst, removed);
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::set<std::uint32_t> seen;
    for (const auto& s : strips) {
        vertices += s.vertex_count();
        edges += s.intra_edges().size() + s.inter_edges().size();
        for (auto v : s.vertex_ids) EXPECT_TRUE(seen.insert(v.value).second);
        // Levels list vertices in ascending id order.
        for (std::size_t t = 0; t < s.levels(); ++t) {
            for (std::size_t p = 1; p < s.width(t); ++p) {
                EXPECT_LT(s.vertex_ids[s.offset(t) + p - 1], s.vertex_ids[s.offset(t) + p]);
            }
        }
    }
    EXPECT_EQ(vertices, inst.vertex_count());
    EXPECT_EQ(edges + removed.size(), inst.topology().edge_count());
}

TEST(StripDp, StripOptimaSumToMinimumOfRetainedHamiltonian) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const auto inst = fixtures::dyadic_instance(3, rng);
        const auto removed = layer0_edges_at(inst, {2});
        double sum = 0.0;
        for (const auto& s : extract_strips(inst, removed)) sum += solve_strip(s).energy;
        // Route 2: zero the removed couplings and solve the whole graph as one strip.
        auto retained = inst;
        for (auto e : removed) retained.set_coupling(e, 0.0);
        const auto whole = extract_strips(retained, {});
        ASSERT_EQ(whole.size(), 1u);
        EXPECT_EQ(solve_strip(whole[0]).energy, sum);
    }
}

TEST(StripDp, ChimeraStripsKeepFrontierBelowWidth) {
    const auto inst = fixtures::gaussian_instance(3, 12);
    const auto strips = extract_strips(inst, {});
    EXPECT_LT(planned_state_bits(strips[0]), 24u);
}

TEST(StripDp, WorkPerVertexDoublesPerWidthUnit) {
    std::mt19937_64 rng(4);
    double previous = 0.0;
    for (std::size_t w = 8; w <= 14; ++w) {
        StripGraph g(std::vector<std::size_t>(4, w));
        for (std::size_t t = 0; t < 4; ++t) {
            for (std::size_t p = 0; p < w; ++p) {
                if (p + 1 < w) g.add_edge(g.offset(t) + p, g.offset(t) + p + 1, fixtures::dyadic(rng));
                if (t + 1 < 4) g.add_edge(g.offset(t) + p, g.offset(t + 1) + p, fixtures::dyadic(rng));
            }
        }
        const auto sol = solve_strip(g);
        const double per_vertex = static_cast<double>(sol.work) / static_cast<double>(g.vertex_count());
        if (previous > 0.0) {
            EXPECT_GT(per_vertex / previous, 1.6);
            EXPECT_LT(per_vertex / previous, 2.4);
        }
        previous = per_vertex;
    }
}
