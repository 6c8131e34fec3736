#include "chimera/ptas.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "chimera/bounds.hpp"

namespace chimera {

PtasParams PtasParams::from_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
    // 2/(2/3) must give 3, not 4.
    const double t = std::ceil(2.0 / epsilon - 1e-9);
    if (t > max_period) throw std::invalid_argument("epsilon too small: cut period exceeds 2^20");
    return PtasParams(epsilon, static_cast<int>(t));
}

PtasParams PtasParams::from_period(int period) {
    if (period < 2 || period > max_period) {
        throw std::invalid_argument("cut period must lie in [2, 2^20], got " + std::to_string(period));
    }
    return PtasParams(2.0 / period, period);
}

std::vector<std::size_t> column_edge_group(const ChimeraInstance& inst, int layer, int index) {
    if (layer != 0 && layer != 1) throw std::invalid_argument("layer must be 0 or 1");
    const int r = inst.r();
    if (index < 1 || index > r) {
        throw std::out_of_range("cut-axis index " + std::to_string(index) + " outside 1.." + std::to_string(r));
    }
    const auto& topo = inst.topology();
    const EdgeClass cls = layer == 0 ? EdgeClass::Layer0 : EdgeClass::Layer1;
    std::vector<std::size_t> out;
    for (int other = 1; other <= r; ++other) {
        for (int k = 1; k <= 4; ++k) {
            const ChimeraCoord here = layer == 0 ? ChimeraCoord{index, other, k, 0} : ChimeraCoord{other, index, k, 1};
            for (int step : {-1, 1}) {
                if (index + step < 1 || index + step > r) continue;
                ChimeraCoord there = here;
                (layer == 0 ? there.i : there.j) += step;
                const auto e = topo.find_edge(topo.id(here), topo.id(there));
                if (e && topo.edge(*e).cls == cls) out.push_back(*e);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> class_edges(const ChimeraInstance& inst, int layer, int period, int k) {
    if (period < 1 || k < 0 || k >= period) throw std::invalid_argument("class index outside [0, T)");
    std::vector<std::size_t> out;
    for (int i = 1; i <= inst.r(); ++i) {
        if (i % period != k) continue;
        auto group = column_edge_group(inst, layer, i);
        out.insert(out.end(), group.begin(), group.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

double weight_of(const ChimeraInstance& inst, const std::vector<std::size_t>& edges) {
    long double sum = 0.0L;
    for (auto e : edges) sum += std::fabs(static_cast<long double>(inst.coupling(e)));
    return static_cast<double>(sum);
}

// Classes k >= r+2 (when T > r+1) are empty, like class 0.
int distinct_classes(int r, int period) { return std::min(period, r + 2); }

}  // namespace

std::vector<double> class_weights(const ChimeraInstance& inst, int layer, int period) {
    if (period < 2 || period > PtasParams::max_period) throw std::invalid_argument("cut period must be >= 2");
    std::vector<double> out(static_cast<std::size_t>(period), 0.0);
    for (int k = 0; k < distinct_classes(inst.r(), period); ++k) {
        out[static_cast<std::size_t>(k)] = weight_of(inst, class_edges(inst, layer, period, k));
    }
    return out;
}

int choose_cut(const ChimeraInstance& inst) {
    return class_magnitude(inst, EdgeClass::Layer0) <= class_magnitude(inst, EdgeClass::Layer1) ? 0 : 1;
}

KStar choose_kstar(const ChimeraInstance& inst, int period, int cut_layer) {
    if (period < 2) throw std::invalid_argument("cut period must be >= 2");
    KStar best;
    for (int k = 0; k < distinct_classes(inst.r(), period); ++k) {
        const double w = weight_of(inst, class_edges(inst, cut_layer, period, k));
        if (k == 0 || w < best.removed_weight) best = {k, w};
    }
    return best;
}

PtasResult ptas_solve(const ChimeraInstance& inst, const PtasParams& params) {
    const int period = params.period();
    PtasResult result;
    result.params = params;
    result.cut_layer = choose_cut(inst);
    result.cut_magnitude =
        class_magnitude(inst, result.cut_layer == 0 ? EdgeClass::Layer0 : EdgeClass::Layer1);
    const auto kstar = choose_kstar(inst, period, result.cut_layer);
    result.k_star = kstar.k;
    result.k_star_weight = kstar.removed_weight;

    std::optional<Transpose> relabel;
    if (result.cut_layer == 1) relabel = transpose(inst.topology());
    const ChimeraInstance work = relabel ? transpose_instance(inst, *relabel) : inst;

    // Decompose every class first so an over-budget strip fails before any
    // solving.
    struct Decomposition {
        int k;
        std::vector<std::size_t> removed;
        std::vector<StripGraph> strips;
    };
    std::vector<Decomposition> decompositions;
    bool have_empty = false;
    for (int k = 0; k < distinct_classes(inst.r(), period); ++k) {
        auto removed = class_edges(work, 0, period, k);
        if (removed.empty()) {
            if (have_empty) continue;
            have_empty = true;
        }
        auto strips = extract_strips(work, removed);
        for (const auto& strip : strips) {
            if (strip.max_width() > kStripWidthBudget) {
                throw BudgetExceeded("class " + std::to_string(k) + " leaves a strip of width " +
                                     std::to_string(strip.max_width()) + " > " + std::to_string(kStripWidthBudget) +
                                     "; use a larger epsilon");
            }
        }
        decompositions.push_back({k, std::move(removed), std::move(strips)});
    }

    bool have_candidate = false;
    for (const auto& dec : decompositions) {
        CandidateSummary summary;
        summary.k = dec.k;
        summary.removed_weight = weight_of(work, dec.removed);
        summary.strips = dec.strips.size();

        std::vector<Spin> spins(work.vertex_count(), Spin{1});
        long double h_sub = 0.0L;
        for (const auto& strip : dec.strips) {
            summary.max_width = std::max(summary.max_width, strip.max_width());
            const auto solution = solve_strip(strip);
            summary.peak_state_bits = std::max(summary.peak_state_bits, solution.peak_state_bits);
            h_sub += solution.energy;
            for (std::size_t v = 0; v < solution.assignment.size(); ++v) {
                spins[strip.vertex_ids[v].value] = solution.assignment[v];
            }
        }
        summary.h_sub_energy = static_cast<double>(h_sub);
        SpinAssignment stitched(std::move(spins));
        if (relabel) stitched = pull_back(stitched, *relabel);
        summary.energy = evaluate(inst, stitched).total;
        result.candidates.push_back(summary);

        if (!have_candidate || summary.energy < result.candidate_energy) {
            have_candidate = true;
            result.assignment = std::move(stitched);
            result.candidate_energy = summary.energy;
            result.chosen_k = summary.k;
            result.removed_weight = summary.removed_weight;
            result.h_sub_energy = summary.h_sub_energy;
            result.strips = summary.strips;
            result.max_width = summary.max_width;
        }
    }

    result.energy = result.candidate_energy;
    result.source = "strip-dp";
    auto witness = path_witness(inst);
    result.witness_energy = evaluate(inst, witness).total;
    if (result.witness_energy < result.energy) {
        result.assignment = std::move(witness);
        result.energy = result.witness_energy;
        result.source = "path-witness";
    }
    return result;
}

RuntimeEstimate predicted_runtime(double n, double epsilon) {
    if (!(n >= 1.0) || !(epsilon > 0.0)) throw std::invalid_argument("predicted_runtime needs n >= 1, epsilon > 0");
    RuntimeEstimate out;
    out.asymptotic_log2 = std::log2(n) + 32.0 / epsilon;
    const double t = std::ceil(2.0 / epsilon - 1e-9);
    const double b = 8.0 * t;
    out.optimized_log2 = std::log2(t) + std::log2(n) + std::log2(b) + b;
    out.asymptotic_ops = n * std::exp2(32.0 / epsilon);
    out.optimized_ops = t * n * b * std::exp2(b);
    return out;
}

}  // namespace chimera
