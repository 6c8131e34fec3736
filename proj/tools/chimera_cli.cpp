#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chimera/bounds.hpp"
#include "chimera/instance_io.hpp"
#include "chimera/oracle.hpp"
#include "chimera/ptas.hpp"
#include "chimera/strip_dp.hpp"

using namespace chimera;
using nlohmann::json;

namespace {

// Carries a machine-readable code into the one-line error message.
struct CliError : std::runtime_error {
    CliError(std::string c, const std::string& what) : std::runtime_error(what), code(std::move(c)) {}
    std::string code;
};

constexpr double kDefaultEpsilon = 2.0 / 3.0;

std::string fmt(double x) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

ChimeraInstance read_instance(const std::string& path) {
    try {
        return load_instance(read_file(path));
    } catch (const FormatError& e) {
        throw CliError("format", path + ": " + e.what());
    } catch (const std::runtime_error& e) {
        throw CliError("io", e.what());
    }
}

void write_output(const std::string& path, std::string_view text) {
    try {
        write_file(path, text);
    } catch (const std::runtime_error& e) {
        throw CliError("io", e.what());
    }
}

json sums_json(const MagnitudeSums& m) {
    return {{"a0", m.a0}, {"a1", m.a1}, {"a01", m.a01}, {"b", m.b}, {"total", m.total()}};
}

json bounds_json(const BoundReport& rep) {
    json witnesses = json::array();
    for (const auto& w : rep.witnesses) witnesses.push_back({{"name", w.name}, {"energy", w.energy}, {"bound", w.bound}});
    return {{"trivial_bound", rep.trivial_bound},
            {"k44_bound", rep.k44_bound},
            {"field_bound", rep.field_bound},
            {"certificate_bound", rep.certificate_bound},
            {"witnesses", witnesses},
            {"best_witness", rep.best_witness_name},
            {"best_witness_energy", rep.best_witness_energy}};
}

struct SolveOutcome {
    SpinAssignment assignment;
    double energy = 0.0;
    json details;
};

SolveOutcome solve_exact(const ChimeraInstance& inst) {
    if (inst.vertex_count() <= SmallProblem::max_vertices) {
        auto res = brute_force(to_small_problem(inst));
        SpinAssignment s(std::move(res.assignment));
        const double e = evaluate(inst, s).total;
        return {std::move(s), e, {{"method", "brute-force"}}};
    }
    if (8 * static_cast<std::size_t>(inst.r()) > kStripWidthBudget) {
        throw CliError("budget", "exact solve needs n <= " + std::to_string(SmallProblem::max_vertices) +
                                     " or strip width 8r <= " + std::to_string(kStripWidthBudget) + "; r = " +
                                     std::to_string(inst.r()) + " is too large, use --algo ptas or witness");
    }
    const auto strips = extract_strips(inst, {});
    std::vector<Spin> spins(inst.vertex_count(), Spin{1});
    std::size_t width = 0;
    for (const auto& strip : strips) {
        const auto sol = solve_strip(strip);
        width = std::max(width, strip.max_width());
        for (std::size_t v = 0; v < sol.assignment.size(); ++v) spins[strip.vertex_ids[v].value] = sol.assignment[v];
    }
    SpinAssignment s(std::move(spins));
    const double e = evaluate(inst, s).total;
    return {std::move(s), e, {{"method", "strip-dp"}, {"strips", strips.size()}, {"max_width", width}}};
}

SolveOutcome solve_ptas(const ChimeraInstance& inst, const PtasParams& params) {
    auto res = ptas_solve(inst, params);
    json candidates = json::array();
    for (const auto& c : res.candidates) {
        candidates.push_back({{"k", c.k},
                              {"removed_weight", c.removed_weight},
                              {"h_sub_energy", c.h_sub_energy},
                              {"energy", c.energy},
                              {"strips", c.strips},
                              {"max_width", c.max_width}});
    }
    json details = {{"source", res.source},
                    {"period", params.period()},
                    {"guarantee", params.guarantee()},
                    {"cut_layer", res.cut_layer},
                    {"cut_magnitude", res.cut_magnitude},
                    {"k_star", res.k_star},
                    {"k_star_weight", res.k_star_weight},
                    {"chosen_k", res.chosen_k},
                    {"removed_weight", res.removed_weight},
                    {"h_sub_energy", res.h_sub_energy},
                    {"candidate_energy", res.candidate_energy},
                    {"strips", res.strips},
                    {"max_width", res.max_width},
                    {"witness_energy", res.witness_energy},
                    {"candidates", candidates}};
    return {std::move(res.assignment), res.energy, std::move(details)};
}

SolveOutcome solve_witness(const ChimeraInstance& inst) {
    auto rep = certificate(inst);
    return {std::move(rep.best_witness), rep.best_witness_energy, {{"witness", rep.best_witness_name}}};
}

PtasParams ptas_params(double epsilon) {
    try {
        return PtasParams::from_epsilon(epsilon);
    } catch (const std::invalid_argument& e) {
        throw CliError("invalid-argument", e.what());
    }
}

// generate ------------------------------------------------------------------

struct GenerateOpts {
    int r = 1;
    std::string couplings = "uniform-pm1";
    std::string fields = "zero";
    std::uint64_t seed = 0;
    std::string out;
};

int run_generate(const GenerateOpts& o) {
    GeneratorSpec spec;
    try {
        spec.couplings = parse_distribution(o.couplings);
        spec.fields = parse_distribution(o.fields);
    } catch (const std::invalid_argument& e) {
        throw CliError("invalid-argument", e.what());
    }
    spec.seed = o.seed;
    if (o.r < 1 || o.r > 4096) throw CliError("invalid-argument", "r must lie in [1, 4096]");
    write_output(o.out, save_instance(generate(o.r, spec)));
    return 0;
}

// solve ---------------------------------------------------------------------

struct SolveOpts {
    std::string algo;
    std::optional<double> epsilon;
    std::string in;
    std::string out_assignment;
    std::string report;
};

int run_solve(const SolveOpts& o) {
    const auto inst = read_instance(o.in);
    if (o.epsilon && o.algo != "ptas") throw CliError("invalid-argument", "--epsilon only applies to --algo ptas");
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    std::optional<double> epsilon;
    if (o.algo == "exact") {
        out = solve_exact(inst);
    } else if (o.algo == "ptas") {
        epsilon = o.epsilon.value_or(kDefaultEpsilon);
        out = solve_ptas(inst, ptas_params(*epsilon));
    } else {
        out = solve_witness(inst);
    }
    const double ms = elapsed_ms(start);
    const auto bounds = certificate(inst);

    if (!o.out_assignment.empty()) {
        AssignmentFile file;
        file.r = inst.r();
        file.spins = out.assignment;
        file.energy = out.energy;
        file.algo = o.algo;
        file.epsilon = epsilon;
        write_output(o.out_assignment, save_assignment(file));
    }
    if (!o.report.empty()) {
        json rep = {{"format", "chimera-report/v1"},
                    {"r", inst.r()},
                    {"sums", sums_json(bounds.sums)},
                    {"algo", o.algo},
                    {"energy", out.energy},
                    {"details", out.details},
                    {"bounds", bounds_json(bounds)}};
        if (epsilon) rep["epsilon"] = *epsilon;
        write_output(o.report, rep.dump(1) + "\n");
    }
    std::cout << "algo=" << o.algo << " energy=" << fmt(out.energy) << " trivial_bound=" << fmt(bounds.trivial_bound)
              << " certificate_bound=" << fmt(bounds.certificate_bound) << " wall_ms=" << fmt(ms) << "\n";
    return 0;
}

// bounds --------------------------------------------------------------------

int run_bounds(const std::string& in, const std::string& report) {
    const auto inst = read_instance(in);
    const auto rep = certificate(inst);
    if (!report.empty()) {
        json doc = {{"format", "chimera-bounds/v1"}, {"r", inst.r()}, {"sums", sums_json(rep.sums)}};
        doc["bounds"] = bounds_json(rep);
        write_output(report, doc.dump(1) + "\n");
    }
    std::cout << "trivial_bound=" << fmt(rep.trivial_bound) << " k44_bound=" << fmt(rep.k44_bound)
              << " field_bound=" << fmt(rep.field_bound) << " certificate_bound=" << fmt(rep.certificate_bound)
              << " best_witness=" << rep.best_witness_name << " best_witness_energy=" << fmt(rep.best_witness_energy)
              << "\n";
    return 0;
}

// verify --------------------------------------------------------------------

int run_verify(const std::string& in, const std::string& assignment_path) {
    const auto inst = read_instance(in);
    AssignmentFile file;
    try {
        file = load_assignment(read_file(assignment_path));
    } catch (const FormatError& e) {
        throw CliError("format", assignment_path + ": " + e.what());
    } catch (const std::runtime_error& e) {
        throw CliError("io", e.what());
    }
    if (file.r != inst.r()) {
        throw CliError("format", "assignment is for r=" + std::to_string(file.r) + ", instance has r=" +
                                     std::to_string(inst.r()));
    }
    const double h = evaluate(inst, file.spins).total;
    const auto rep = certificate(inst);
    const double total = rep.sums.total();
    const double tol = 1e-9 * (1.0 + total);

    std::vector<std::string> violations;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) violations.push_back(what);
    };
    // Files are written with round-trip precision, so the stored energy must
    // match bit for bit.
    if (file.energy) check(*file.energy == h, "energy-mismatch: stored " + fmt(*file.energy) + ", recomputed " + fmt(h));
    check(std::fabs(h) <= total + tol, "magnitude: |H| = " + fmt(std::fabs(h)) + " > " + fmt(total));
    const bool solver = file.algo == "exact" || file.algo == "ptas" || file.algo == "witness";
    if (solver) check(h <= rep.trivial_bound + tol, "trivial-bound: H = " + fmt(h) + " > " + fmt(rep.trivial_bound));
    if (file.algo == "exact" || file.algo == "witness") {
        check(h <= rep.certificate_bound + tol,
              "certificate-bound: H = " + fmt(h) + " > " + fmt(rep.certificate_bound));
    }
    if (file.algo == "exact") {
        check(h <= rep.best_witness_energy + tol,
              "witness: exact H = " + fmt(h) + " above witness " + fmt(rep.best_witness_energy));
    }
    if (file.algo == "ptas" && file.epsilon) {
        const auto params = ptas_params(*file.epsilon);
        const double bound = -params.guarantee() * (rep.sums.a0 + rep.sums.a1);
        check(h <= bound + tol, "ptas-bound: H = " + fmt(h) + " > " + fmt(bound));
    }
    for (const auto& v : violations) std::cout << "violation: " << v << "\n";
    if (!violations.empty()) return 1;
    std::cout << "ok energy=" << fmt(h) << "\n";
    return 0;
}

// bench ---------------------------------------------------------------------

struct BenchOpts {
    std::vector<int> r_list;
    std::vector<double> epsilon_list;
    int seeds = 1;
    std::uint64_t seed_base = 1;
    std::string couplings = "gaussian(0,1)";
    std::string fields = "zero";
    std::string csv;
    int jobs = 1;
};

struct BenchRow {
    int r = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    double energy = 0.0;
    double trivial = 0.0;
    double certificate_bound = 0.0;
    std::size_t strips = 0;
    std::size_t max_width = 0;
    double wall_ms = 0.0;
    std::string error;
};

int run_bench(const BenchOpts& o) {
    GeneratorSpec base;
    try {
        base.couplings = parse_distribution(o.couplings);
        base.fields = parse_distribution(o.fields);
    } catch (const std::invalid_argument& e) {
        throw CliError("invalid-argument", e.what());
    }
    if (o.seeds < 1) throw CliError("invalid-argument", "--seeds must be >= 1");
    if (o.jobs < 1) throw CliError("invalid-argument", "--jobs must be >= 1");
    for (int r : o.r_list) {
        if (r < 1 || r > 4096) throw CliError("invalid-argument", "r must lie in [1, 4096]");
    }
    for (double eps : o.epsilon_list) ptas_params(eps);

    std::vector<BenchRow> rows;
    for (int r : o.r_list) {
        for (double eps : o.epsilon_list) {
            for (int s = 0; s < o.seeds; ++s) {
                BenchRow row;
                row.r = r;
                row.epsilon = eps;
                row.seed = o.seed_base + static_cast<std::uint64_t>(s);
                rows.push_back(row);
            }
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx = next++; idx < rows.size(); idx = next++) {
            auto& row = rows[idx];
            GeneratorSpec spec = base;
            spec.seed = row.seed;
            try {
                const auto inst = generate(row.r, spec);
                const auto start = std::chrono::steady_clock::now();
                const auto res = ptas_solve(inst, PtasParams::from_epsilon(row.epsilon));
                row.wall_ms = elapsed_ms(start);
                const auto rep = certificate(inst);
                row.energy = res.energy;
                row.trivial = rep.trivial_bound;
                row.certificate_bound = rep.certificate_bound;
                row.strips = res.strips;
                row.max_width = res.max_width;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const int threads = std::min<int>(o.jobs, static_cast<int>(rows.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& row : rows) {
        if (!row.error.empty()) {
            throw CliError("budget", "r=" + std::to_string(row.r) + " epsilon=" + fmt(row.epsilon) + ": " + row.error);
        }
    }
    std::ostringstream csv;
    csv << "r,epsilon,seed,algo,energy,trivial_bound,certificate_bound,ratio_vs_trivial,strips,max_width,wall_ms\n";
    for (const auto& row : rows) {
        csv << row.r << ',' << fmt(row.epsilon) << ',' << row.seed << ",ptas," << fmt(row.energy) << ','
            << fmt(row.trivial) << ',' << fmt(row.certificate_bound) << ','
            << (row.trivial != 0.0 ? fmt(row.energy / row.trivial) : std::string()) << ',' << row.strips << ','
            << row.max_width << ',' << fmt(std::round(row.wall_ms * 1000.0) / 1000.0) << '\n';
    }
    write_output(o.csv, csv.str());
    std::cout << "rows=" << rows.size() << " csv=" << o.csv << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ising ground states on Chimera graphs: exact, PTAS and certified bounds"};
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* generate_cmd = app.add_subcommand("generate", "Write a seeded random instance");
    generate_cmd->add_option("--r", gen.r, "Grid size")->required();
    generate_cmd->add_option("--couplings", gen.couplings, "zero | uniform-pm1 | gaussian(m,sd) | uniform(lo,hi)");
    generate_cmd->add_option("--fields", gen.fields, "Same forms as --couplings");
    generate_cmd->add_option("--seed", gen.seed, "64-bit seed");
    generate_cmd->add_option("--out", gen.out, "Instance file to write")->required();

    SolveOpts solve;
    double epsilon = 0.0;
    auto* solve_cmd = app.add_subcommand("solve", "Minimize H");
    solve_cmd->add_option("--algo", solve.algo)->required()->check(CLI::IsMember({"exact", "ptas", "witness"}));
    auto* eps_opt = solve_cmd->add_option("--epsilon", epsilon, "PTAS accuracy in (0,1), default 2/3");
    solve_cmd->add_option("--in", solve.in, "Instance file")->required();
    solve_cmd->add_option("--out-assignment", solve.out_assignment);
    solve_cmd->add_option("--report", solve.report, "JSON report (no timing)");

    std::string bounds_in;
    std::string bounds_report;
    auto* bounds_cmd = app.add_subcommand("bounds", "Witness energies and certified bounds");
    bounds_cmd->add_option("--in", bounds_in)->required();
    bounds_cmd->add_option("--report", bounds_report);

    std::string verify_in;
    std::string verify_assignment;
    auto* verify_cmd = app.add_subcommand("verify", "Re-evaluate an assignment and check bounds");
    verify_cmd->add_option("--in", verify_in)->required();
    verify_cmd->add_option("--assignment", verify_assignment)->required();

    BenchOpts bench;
    auto* bench_cmd = app.add_subcommand("bench", "PTAS over a grid of sizes, epsilons and seeds");
    bench_cmd->add_option("--r-list", bench.r_list)->required()->delimiter(',');
    bench_cmd->add_option("--epsilon-list", bench.epsilon_list)->required()->delimiter(',');
    bench_cmd->add_option("--seeds", bench.seeds, "Seeds seed-base .. seed-base+N-1")->required();
    bench_cmd->add_option("--seed-base", bench.seed_base);
    bench_cmd->add_option("--couplings", bench.couplings);
    bench_cmd->add_option("--fields", bench.fields);
    bench_cmd->add_option("--csv", bench.csv)->required();
    bench_cmd->add_option("--jobs", bench.jobs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::string what = e.what();
        std::replace(what.begin(), what.end(), '\n', ' ');
        std::cerr << "error: usage: " << what << "\n";
        return 2;
    }

    try {
        if (*generate_cmd) return run_generate(gen);
        if (*solve_cmd) {
            if (*eps_opt) solve.epsilon = epsilon;
            return run_solve(solve);
        }
        if (*bounds_cmd) return run_bounds(bounds_in, bounds_report);
        if (*verify_cmd) return run_verify(verify_in, verify_assignment);
        if (*bench_cmd) return run_bench(bench);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.code << ": " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: budget: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
