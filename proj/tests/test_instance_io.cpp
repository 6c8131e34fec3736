#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "chimera/instance_io.hpp"
#include "chimera/rng.hpp"
#include "test_support.hpp"

using namespace chimera;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void expect_bit_identical(const ChimeraInstance& a, const ChimeraInstance& b) {
    ASSERT_EQ(a.r(), b.r());
    for (std::size_t e = 0; e < a.couplings().size(); ++e) ASSERT_TRUE(same_bits(a.couplings()[e], b.couplings()[e]));
    for (std::size_t v = 0; v < a.fields().size(); ++v) ASSERT_TRUE(same_bits(a.fields()[v], b.fields()[v]));
}

}  // namespace

TEST(InstanceIo, MinimalFileIsZeroInstance) {
    const auto inst = load_instance(R"({"format": "chimera-ising/v1", "r": 1})");
    EXPECT_EQ(inst.r(), 1);
    EXPECT_EQ(inst, ChimeraInstance{ChimeraTopology(1)});
    const auto empty = load_instance(R"({"format": "chimera-ising/v1", "r": 2, "couplings": [], "fields": []})");
    EXPECT_EQ(empty, ChimeraInstance{ChimeraTopology(2)});
}

TEST(InstanceIo, ReadsEntries) {
    const auto inst = load_instance(R"({"format": "chimera-ising/v1", "r": 2,
        "couplings": [{"u": [1,1,2,0], "v": [2,1,2,0], "c": -1.5},
                      {"u": [1,2,1,1], "v": [1,2,3,0], "c": 0.25}],
        "fields": [{"u": [2,2,4,1], "d": 3}]})");
    const auto& t = inst.topology();
    EXPECT_EQ(inst.coupling(*t.find_edge(t.id({1, 1, 2, 0}), t.id({2, 1, 2, 0}))), -1.5);
    EXPECT_EQ(inst.coupling(*t.find_edge(t.id({1, 2, 3, 0}), t.id({1, 2, 1, 1}))), 0.25);
    EXPECT_EQ(inst.field(t.id({2, 2, 4, 1})), 3.0);
    EXPECT_EQ(magnitude_sums(inst).total(), 4.75);
}

TEST(InstanceIo, RejectsBadInput) {
    // Two layer-0 vertices in the same cell are not adjacent.
    EXPECT_THROW(load_instance(R"({"format": "chimera-ising/v1", "r": 2,
        "couplings": [{"u": [1,1,1,0], "v": [1,1,2,0], "c": 1}]})"),
                 FormatError);
    EXPECT_THROW(load_instance(R"({"format": "chimera-ising/v1", "r": 2,
        "couplings": [{"u": [1,1,1,0], "v": [2,1,1,0], "c": 1},
                      {"u": [2,1,1,0], "v": [1,1,1,0], "c": 2}]})"),
                 FormatError);
    EXPECT_THROW(load_instance(R"({"format": "chimera-ising/v1", "r": 1,
        "fields": [{"u": [1,1,1,0], "d": 1}, {"u": [1,1,1,0], "d": 1}]})"),
                 FormatError);
    EXPECT_THROW(load_instance(R"({"format": "chimera-ising/v2", "r": 1})"), FormatError);
    EXPECT_THROW(load_instance(R"({"r": 1})"), FormatError);
    EXPECT_THROW(load_instance(R"({"format": "chimera-ising/v1", "r": 0})"), FormatError);
    EXPECT_THROW(load_instance(R"({"format": "chimera-ising/v1", "r": 1,
        "fields": [{"u": [1,1,5,0], "d": 1}]})"),
                 FormatError);
    EXPECT_THROW(load_instance(R"({"format": "chimera-ising/v1", "r": 1,
        "fields": [{"u": [1,1,1,0], "d": "x"}]})"),
                 FormatError);
    EXPECT_THROW(load_instance("{not json"), FormatError);
}

TEST(InstanceIo, InstanceRoundTripIsBitExact) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeneratorSpec spec;
        spec.couplings = parse_distribution("gaussian(0.1,3)");
        spec.fields = parse_distribution(seed % 2 ? "uniform(-1e-7,2e5)" : "zero");
        spec.seed = seed;
        const auto inst = generate(1 + static_cast<int>(seed % 4), spec);
        const auto text = save_instance(inst);
        const auto back = load_instance(text);
        expect_bit_identical(inst, back);
        EXPECT_EQ(save_instance(back), text);
    }
    // Awkward values.
    ChimeraInstance inst{ChimeraTopology(1)};
    inst.set_coupling(0, 0.1);
    inst.set_coupling(1, -0.0);
    inst.set_coupling(2, 5e-324);
    inst.set_coupling(3, 1.7976931348623157e308);
    inst.set_field(VertexId(7), 1.0 / 3.0);
    expect_bit_identical(inst, load_instance(save_instance(inst)));
}

TEST(InstanceIo, AssignmentRoundTrip) {
    std::mt19937_64 rng(4);
    std::vector<Spin> s(32);
    for (auto& x : s) x = (rng() & 1u) ? Spin{1} : Spin{-1};
    AssignmentFile file;
    file.r = 2;
    file.spins = SpinAssignment(s);
    file.energy = -1.0 / 7.0;
    file.algo = "ptas";
    file.epsilon = 0.5;
    const auto text = save_assignment(file);
    const auto back = load_assignment(text);
    EXPECT_EQ(back.r, 2);
    EXPECT_TRUE(std::ranges::equal(back.spins.spins(), file.spins.spins()));
    ASSERT_TRUE(back.energy.has_value());
    EXPECT_TRUE(same_bits(*back.energy, *file.energy));
    EXPECT_EQ(back.algo, "ptas");
    EXPECT_EQ(back.epsilon, 0.5);
    EXPECT_EQ(save_assignment(back), text);

    const auto bare = load_assignment(R"({"format": "spin-assignment/v1", "r": 1, "spins": [1,1,1,1,-1,-1,-1,-1]})");
    EXPECT_FALSE(bare.energy.has_value());
    EXPECT_THROW(load_assignment(R"({"format": "spin-assignment/v1", "r": 1, "spins": [1,1,1,1,-1,-1,-1]})"),
                 FormatError);
    EXPECT_THROW(load_assignment(R"({"format": "spin-assignment/v1", "r": 1, "spins": [1,1,1,1,-1,-1,-1,0]})"),
                 FormatError);
    EXPECT_THROW(load_assignment(R"({"format": "chimera-ising/v1", "r": 1, "spins": []})"), FormatError);
}

TEST(InstanceIo, UniformPm1Support) {
    GeneratorSpec spec;
    spec.seed = 99;
    const auto inst = generate(3, spec);
    for (double c : inst.couplings()) EXPECT_TRUE(c == 1.0 || c == -1.0);
    for (double d : inst.fields()) EXPECT_EQ(d, 0.0);
}

TEST(InstanceIo, GeneratorIsDeterministic) {
    GeneratorSpec spec;
    spec.couplings = parse_distribution("gaussian(0,1)");
    spec.fields = parse_distribution("uniform(-2,2)");
    spec.seed = 1234;
    EXPECT_EQ(save_instance(generate(4, spec)), save_instance(generate(4, spec)));
    spec.seed = 1235;
    EXPECT_NE(save_instance(generate(4, spec)), save_instance(generate(4, {spec.couplings, spec.fields, 1234})));
}

TEST(InstanceIo, GaussianMean) {
    GeneratorSpec spec;
    spec.couplings = parse_distribution("gaussian(0,1)");
    spec.seed = 2024;
    const auto inst = generate(4, spec);
    // 16 r^2 + 8 r (r - 1) = 352 couplings at r = 4; the 4/sqrt(384) band is
    // slightly tighter than 4/sqrt(352).
    ASSERT_EQ(inst.couplings().size(), 352u);
    double sum = 0.0;
    for (double c : inst.couplings()) sum += c;
    EXPECT_LT(std::fabs(sum / 352.0), 4.0 / std::sqrt(384.0));
}

TEST(InstanceIo, GeneratorStreamMatchesDefinition) {
    // Reference values from a separate implementation of the documented
    // recurrences.
    XorShift64Star zero(0);
    EXPECT_EQ(zero.next(), 0x7bbcb40d550682d0u);
    EXPECT_EQ(zero.next(), 0xde7fe413d00cc9fdu);
    EXPECT_EQ(zero.next(), 0xb3c638353c668c91u);
    XorShift64Star answer(42);
    EXPECT_EQ(answer.next(), 0x31b0ece7c4f697a2u);
    EXPECT_EQ(answer.next(), 0x9008a3b1cb686f03u);
    EXPECT_EQ(answer.next(), 0x7c7173abd97be16fu);

    XorShift64Star u(7);
    for (int n = 0; n < 10000; ++n) {
        const double x = u.uniform();
        ASSERT_GE(x, 0.0);
        ASSERT_LT(x, 1.0);
    }
}

TEST(InstanceIo, PortableLogAgreesWithLibm) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> exponent(-300.0, 300.0);
    for (int n = 0; n < 20000; ++n) {
        const double x = std::pow(10.0, exponent(rng));
        ASSERT_NEAR(portable_log(x), std::log(x), 4e-16 * std::max(1.0, std::fabs(std::log(x))));
    }
    EXPECT_EQ(portable_log(1.0), 0.0);
}

TEST(InstanceIo, DistributionParsing) {
    EXPECT_EQ(parse_distribution("zero").kind, Distribution::Kind::Zero);
    const auto g = parse_distribution("gaussian(0.5, 2)");
    EXPECT_EQ(g.kind, Distribution::Kind::Gaussian);
    EXPECT_EQ(g.a, 0.5);
    EXPECT_EQ(g.b, 2.0);
    EXPECT_EQ(to_string(parse_distribution("uniform(-1,1)")), "uniform(-1,1)");
    EXPECT_EQ(to_string(g), "gaussian(0.5,2)");
    for (const char* bad : {"", "gauss(0,1)", "gaussian(0)", "gaussian(0,-1)", "uniform(2,1)", "uniform(a,b)",
                            "gaussian(0,1", "uniform(0,inf)"}) {
        EXPECT_THROW(parse_distribution(bad), std::invalid_argument) << bad;
    }
}
