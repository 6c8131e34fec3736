#include "chimera/strip_dp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace chimera {

StripGraph::StripGraph(std::vector<std::size_t> level_widths) : widths_(std::move(level_widths)) {
    offsets_.reserve(widths_.size());
    std::size_t total = 0;
    for (auto w : widths_) {
        if (w == 0) throw std::invalid_argument("strip levels must be non-empty");
        offsets_.push_back(total);
        total += w;
    }
    fields_.assign(total, 0.0);
}

std::size_t StripGraph::max_width() const noexcept {
    return widths_.empty() ? 0 : *std::max_element(widths_.begin(), widths_.end());
}

std::size_t StripGraph::level_of(std::size_t v) const {
    if (v >= vertex_count()) throw std::out_of_range("strip vertex " + std::to_string(v) + " out of range");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

void StripGraph::add_edge(std::size_t u, std::size_t v, double c) {
    if (u == v) throw std::invalid_argument("strip edge must join distinct vertices");
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite strip coupling");
    const auto lu = level_of(u);
    const auto lv = level_of(v);
    if (lu == lv) {
        intra_.push_back({u, v, c});
    } else if (lu + 1 == lv || lv + 1 == lu) {
        inter_.push_back({u, v, c});
    } else {
        throw std::invalid_argument("strip edge spans non-adjacent levels " + std::to_string(lu) + " and " +
                                    std::to_string(lv));
    }
}

void StripGraph::set_field(std::size_t v, double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite strip field");
    fields_.at(v) = d;
}

double StripGraph::energy(std::span<const Spin> s) const {
    if (s.size() != vertex_count()) throw std::invalid_argument("assignment length does not match strip");
    long double e = 0.0L;
    for (const auto& edge : intra_) e += static_cast<long double>(edge.c) * (s[edge.u] * s[edge.v]);
    for (const auto& edge : inter_) e += static_cast<long double>(edge.c) * (s[edge.u] * s[edge.v]);
    for (std::size_t v = 0; v < fields_.size(); ++v) e += static_cast<long double>(fields_[v]) * s[v];
    return static_cast<double>(e);
}

SmallProblem StripGraph::to_small_problem() const {
    SmallProblem p;
    p.n = vertex_count();
    for (const auto& e : intra_) p.edges.push_back({e.u, e.v, e.c});
    for (const auto& e : inter_) p.edges.push_back({e.u, e.v, e.c});
    p.fields = fields_;
    return p;
}

namespace {

inline Spin spin_of(std::uint64_t state, std::size_t bit) {
    return ((state >> bit) & 1u) ? Spin{1} : Spin{-1};
}

// ---------------------------------------------------------------------------
// Reference DP

StripSolution reference_impl(const StripGraph& g) {
    const std::size_t m = g.levels();
    StripSolution out;
    if (m == 0) return out;

    std::vector<std::vector<StripGraph::LocalEdge>> intra(m);
    for (const auto& edge : g.intra_edges()) intra[g.level_of(edge.u)].push_back(edge);

    // Per-level intra + field energy of every level state.
    auto level_energy = [&](std::size_t t) {
        const std::size_t w = g.width(t);
        const std::size_t base = g.offset(t);
        std::vector<double> e(std::size_t{1} << w, 0.0);
        for (std::uint64_t x = 0; x < e.size(); ++x) {
            double sum = 0.0;
            for (const auto& edge : intra[t]) {
                sum += edge.c * spin_of(x, edge.u - base) * spin_of(x, edge.v - base);
            }
            for (std::size_t p = 0; p < w; ++p) sum += g.fields()[base + p] * spin_of(x, p);
            e[x] = sum;
        }
        return e;
    };

    std::vector<std::vector<double>> best(m);
    std::vector<std::vector<std::uint32_t>> back(m);
    best[0] = level_energy(0);
    out.work += best[0].size();

    for (std::size_t t = 0; t + 1 < m; ++t) {
        const std::size_t wx = g.width(t);
        const std::size_t bx = g.offset(t);
        const std::size_t by = g.offset(t + 1);
        std::vector<const StripGraph::LocalEdge*> between;
        for (const auto& edge : g.inter_edges()) {
            const auto lu = g.level_of(edge.u);
            const auto lv = g.level_of(edge.v);
            if (std::min(lu, lv) == t) between.push_back(&edge);
        }
        auto next = level_energy(t + 1);
        back[t + 1].assign(next.size(), 0);
        std::vector<double> coupling(wx);  // g_u(y) for u in level t
        std::vector<double> pair(std::size_t{1} << wx);
        for (std::uint64_t y = 0; y < next.size(); ++y) {
            std::fill(coupling.begin(), coupling.end(), 0.0);
            for (const auto* edge : between) {
                const bool u_low = edge->u < by;
                const auto x_vertex = u_low ? edge->u : edge->v;
                const auto y_vertex = u_low ? edge->v : edge->u;
                coupling[x_vertex - bx] += edge->c * spin_of(y, y_vertex - by);
            }
            // pair[x] = sum_u s_u(x) g_u(y), built from the lowest set bit.
            pair[0] = -std::accumulate(coupling.begin(), coupling.end(), 0.0);
            for (std::uint64_t x = 1; x < pair.size(); ++x) {
                pair[x] = pair[x & (x - 1)] + 2.0 * coupling[static_cast<std::size_t>(std::countr_zero(x))];
            }
            double min_value = std::numeric_limits<double>::infinity();
            std::uint32_t arg = 0;
            for (std::uint64_t x = 0; x < pair.size(); ++x) {
                const double v = best[t][x] + pair[x];
                if (v < min_value) {
                    min_value = v;
                    arg = static_cast<std::uint32_t>(x);
                }
            }
            next[y] += min_value;
            back[t + 1][y] = arg;
            out.work += pair.size();
        }
        best[t + 1] = std::move(next);
    }

    const auto& last = best[m - 1];
    std::uint32_t state = static_cast<std::uint32_t>(std::min_element(last.begin(), last.end()) - last.begin());
    out.table_value = last[state];
    out.assignment.assign(g.vertex_count(), Spin{1});
    for (std::size_t t = m; t-- > 0;) {
        for (std::size_t p = 0; p < g.width(t); ++p) out.assignment[g.offset(t) + p] = spin_of(state, p);
        if (t > 0) state = back[t][state];
    }
    out.peak_state_bits = g.max_width();
    out.energy = g.energy(out.assignment);
    return out;
}

// ---------------------------------------------------------------------------
// Frontier DP

struct Neighbor {
    std::size_t v;
    double c;
};

// Steps for one vertex: how it enters the frontier and which live vertices
// are eliminated afterwards.
struct Step {
    // Slot whose vertex is replaced by the entering one; npos to append.
    std::size_t replace_slot = npos;
    double replace_coupling = 0.0;
    std::vector<std::size_t> forget_vertices;
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

struct Plan {
    std::vector<std::vector<Neighbor>> earlier;  // neighbours with smaller index
    std::vector<Step> steps;
    std::size_t peak_bits = 0;
};

Plan make_plan(const StripGraph& g) {
    const std::size_t n = g.vertex_count();
    Plan plan;
    plan.earlier.resize(n);
    std::vector<std::size_t> last(n);
    std::iota(last.begin(), last.end(), std::size_t{0});
    auto note = [&](const StripGraph::LocalEdge& e) {
        const auto lo = std::min(e.u, e.v);
        const auto hi = std::max(e.u, e.v);
        plan.earlier[hi].push_back({lo, e.c});
        last[lo] = std::max(last[lo], hi);
    };
    for (const auto& e : g.intra_edges()) note(e);
    for (const auto& e : g.inter_edges()) note(e);

    plan.steps.resize(n);
    std::vector<std::size_t> frontier;
    for (std::size_t s = 0; s < n; ++s) {
        Step& step = plan.steps[s];
        for (std::size_t slot = 0; slot < frontier.size(); ++slot) {
            if (last[frontier[slot]] == s) {
                step.replace_slot = slot;
                break;
            }
        }
        if (step.replace_slot != Step::npos) {
            const auto old = frontier[step.replace_slot];
            for (const auto& nb : plan.earlier[s]) {
                if (nb.v == old) step.replace_coupling += nb.c;
            }
            frontier[step.replace_slot] = s;
        } else {
            frontier.push_back(s);
        }
        plan.peak_bits = std::max(plan.peak_bits, frontier.size());
        for (std::size_t slot = frontier.size(); slot-- > 0;) {
            if (last[frontier[slot]] <= s) {
                step.forget_vertices.push_back(frontier[slot]);
                frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(slot));
            }
        }
    }
    return plan;
}

class BitSet {
public:
    explicit BitSet(std::uint64_t n) : words_((n + 63) / 64, 0) {}
    void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

private:
    std::vector<std::uint64_t> words_;
};

struct Elimination {
    std::size_t vertex;
    std::vector<std::size_t> frontier_after;
    BitSet choice;  // indexed by the post-elimination state
};

// Local field h(state) = d + sum_slots coef[slot] * spin(slot), looked up from
// two half tables.
class LocalField {
public:
    LocalField(double d, const std::vector<double>& coef) {
        low_bits_ = coef.size() / 2;
        low_ = build(coef, 0, low_bits_);
        high_ = build(coef, low_bits_, coef.size());
        low_mask_ = (std::uint64_t{1} << low_bits_) - 1;
        for (auto& x : low_) x += d;
    }
    double operator()(std::uint64_t state) const { return low_[state & low_mask_] + high_[state >> low_bits_]; }

private:
    static std::vector<double> build(const std::vector<double>& coef, std::size_t from, std::size_t to) {
        std::vector<double> t(std::size_t{1} << (to - from));
        double base = 0.0;
        for (std::size_t i = from; i < to; ++i) base -= coef[i];
        t[0] = base;
        for (std::uint64_t x = 1; x < t.size(); ++x) {
            t[x] = t[x & (x - 1)] + 2.0 * coef[from + static_cast<std::size_t>(std::countr_zero(x))];
        }
        return t;
    }
    std::size_t low_bits_ = 0;
    std::uint64_t low_mask_ = 0;
    std::vector<double> low_;
    std::vector<double> high_;
};

StripSolution frontier_impl(const StripGraph& g, const Plan& plan) {
    const std::size_t n = g.vertex_count();
    StripSolution out;
    out.peak_state_bits = plan.peak_bits;

    std::vector<double> table{0.0};
    std::vector<double> scratch;
    std::vector<std::size_t> frontier;
    std::vector<std::size_t> slot_of(n, Step::npos);
    std::vector<Elimination> log;
    log.reserve(n);

    for (std::size_t s = 0; s < n; ++s) {
        const Step& step = plan.steps[s];
        const std::size_t bits = frontier.size();

        std::vector<double> coef(bits, 0.0);
        for (const auto& nb : plan.earlier[s]) {
            const auto slot = slot_of[nb.v];
            if (slot != step.replace_slot) coef[slot] += nb.c;
        }
        const LocalField h(g.fields()[s], coef);

        if (step.replace_slot != Step::npos) {
            // The replaced vertex x leaves, s takes its bit: for each y,
            // min over x of T[x] + c x y, plus y h.
            const std::size_t b = step.replace_slot;
            const std::uint64_t bit = std::uint64_t{1} << b;
            const double c = step.replace_coupling;
            Elimination e{frontier[b], {}, BitSet(table.size())};
            for (std::uint64_t i0 = 0; i0 < table.size(); ++i0) {
                if (i0 & bit) continue;
                const std::uint64_t i1 = i0 | bit;
                const double lo = table[i0];
                const double hi = table[i1];
                const double field = h(i0);
                // y = -1
                const double down_lo = lo + c;
                const double down_hi = hi - c;
                // y = +1
                const double up_lo = lo - c;
                const double up_hi = hi + c;
                if (down_hi < down_lo) {
                    table[i0] = down_hi - field;
                    e.choice.set(i0);
                } else {
                    table[i0] = down_lo - field;
                }
                if (up_hi < up_lo) {
                    table[i1] = up_hi + field;
                    e.choice.set(i1);
                } else {
                    table[i1] = up_lo + field;
                }
            }
            out.work += table.size();
            slot_of[frontier[b]] = Step::npos;
            frontier[b] = s;
            slot_of[s] = b;
            e.frontier_after = frontier;
            log.push_back(std::move(e));
        } else {
            const std::uint64_t half = table.size();
            scratch.resize(2 * half);
            for (std::uint64_t i = 0; i < half; ++i) {
                const double field = h(i);
                scratch[i] = table[i] - field;
                scratch[i + half] = table[i] + field;
            }
            std::swap(table, scratch);
            out.work += table.size();
            slot_of[s] = frontier.size();
            frontier.push_back(s);
        }

        for (const auto w : step.forget_vertices) {
            const std::size_t b = slot_of[w];
            const std::uint64_t low_mask = (std::uint64_t{1} << b) - 1;
            const std::uint64_t half = table.size() / 2;
            scratch.resize(half);
            Elimination e{w, {}, BitSet(half)};
            for (std::uint64_t j = 0; j < half; ++j) {
                const std::uint64_t i0 = (j & low_mask) | ((j & ~low_mask) << 1);
                const std::uint64_t i1 = i0 | (std::uint64_t{1} << b);
                if (table[i1] < table[i0]) {
                    scratch[j] = table[i1];
                    e.choice.set(j);
                } else {
                    scratch[j] = table[i0];
                }
            }
            std::swap(table, scratch);
            out.work += half;
            frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(b));
            slot_of[w] = Step::npos;
            for (std::size_t slot = b; slot < frontier.size(); ++slot) slot_of[frontier[slot]] = slot;
            e.frontier_after = frontier;
            log.push_back(std::move(e));
        }
    }

    out.table_value = table.at(0);
    out.assignment.assign(n, Spin{0});
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        std::uint64_t state = 0;
        for (std::size_t slot = 0; slot < it->frontier_after.size(); ++slot) {
            if (out.assignment[it->frontier_after[slot]] > 0) state |= std::uint64_t{1} << slot;
        }
        out.assignment[it->vertex] = it->choice.test(state) ? Spin{1} : Spin{-1};
    }
    out.energy = g.energy(out.assignment);
    return out;
}

}  // namespace

StripSolution solve_strip_reference(const StripGraph& g) {
    if (g.max_width() > kReferenceWidthBudget) {
        throw BudgetExceeded("reference strip DP limited to width " + std::to_string(kReferenceWidthBudget) +
                             ", got " + std::to_string(g.max_width()));
    }
    return reference_impl(g);
}

std::size_t planned_state_bits(const StripGraph& g) { return make_plan(g).peak_bits; }

StripSolution solve_strip(const StripGraph& g) {
    if (g.max_width() > kStripWidthBudget) {
        throw BudgetExceeded("strip DP limited to width " + std::to_string(kStripWidthBudget) + ", got " +
                             std::to_string(g.max_width()));
    }
    const auto plan = make_plan(g);
    if (plan.peak_bits > kStateBitsBudget) {
        throw BudgetExceeded("strip DP frontier of " + std::to_string(plan.peak_bits) + " vertices exceeds " +
                             std::to_string(kStateBitsBudget));
    }
    return frontier_impl(g, plan);
}

// ---------------------------------------------------------------------------
// Strip extraction

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<StripGraph> extract_strips(const ChimeraInstance& inst, std::span<const std::size_t> removed) {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    const auto& topo = inst.topology();
    const std::size_t n = topo.vertex_count();
    std::vector<bool> is_removed(topo.edge_count(), false);
    for (auto e : removed) {
        if (e >= topo.edge_count()) throw std::out_of_range("removed edge index out of range");
        if (topo.edge(e).cls != EdgeClass::Layer0) {
            throw std::invalid_argument("removed edge " + std::to_string(e) + " is not a layer-0 edge");
        }
        is_removed[e] = true;
    }

    DisjointSets sets(n);
    for (std::size_t e = 0; e < topo.edge_count(); ++e) {
        if (!is_removed[e]) sets.unite(topo.edge(e).u.value, topo.edge(e).v.value);
    }

    // Components in order of their smallest vertex id; vertices ascend, so
    // each level lists its vertices in id order.
    std::vector<std::size_t> component_index(n, unset);
    std::vector<std::vector<std::uint32_t>> members;
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto root = sets.find(v);
        if (component_index[root] == unset) {
            component_index[root] = members.size();
            members.emplace_back();
        }
        members[component_index[root]].push_back(v);
    }

    std::vector<std::size_t> local(n);
    std::vector<std::size_t> owner(n);
    std::vector<StripGraph> strips;
    strips.reserve(members.size());
    for (std::size_t comp = 0; comp < members.size(); ++comp) {
        std::vector<int> js;
        std::vector<int> is;
        for (auto v : members[comp]) {
            const auto c = topo.coord(VertexId(v));
            js.push_back(c.j);
            is.push_back(c.i);
        }
        std::sort(js.begin(), js.end());
        js.erase(std::unique(js.begin(), js.end()), js.end());
        std::sort(is.begin(), is.end());
        is.erase(std::unique(is.begin(), is.end()), is.end());

        std::vector<std::vector<std::uint32_t>> level_members(js.size());
        for (auto v : members[comp]) {
            const auto j = topo.coord(VertexId(v)).j;
            const auto level = static_cast<std::size_t>(std::lower_bound(js.begin(), js.end(), j) - js.begin());
            level_members[level].push_back(v);
        }
        std::vector<std::size_t> widths;
        for (const auto& lm : level_members) widths.push_back(lm.size());
        StripGraph strip(widths);
        for (std::size_t level = 0; level < level_members.size(); ++level) {
            for (std::size_t p = 0; p < level_members[level].size(); ++p) {
                const auto v = level_members[level][p];
                local[v] = strip.offset(level) + p;
                owner[v] = comp;
                strip.vertex_ids.push_back(VertexId(v));
            }
        }
        strip.cut_axis_span = std::move(is);
        strips.push_back(std::move(strip));
    }

    for (std::size_t e = 0; e < topo.edge_count(); ++e) {
        if (is_removed[e]) continue;
        const auto& edge = topo.edge(e);
        strips[owner[edge.u.value]].add_edge(local[edge.u.value], local[edge.v.value], inst.couplings()[e]);
    }
    for (std::uint32_t v = 0; v < n; ++v) strips[owner[v]].set_field(local[v], inst.fields()[v]);
    return strips;
}

}  // namespace chimera
