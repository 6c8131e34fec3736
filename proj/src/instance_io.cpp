#include "chimera/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "chimera/rng.hpp"
#include "json.hpp"

namespace chimera {

using nlohmann::json;

namespace {

constexpr int kMaxR = 4096;

json coord_json(const ChimeraCoord& c) { return json::array({c.i, c.j, c.k, c.l}); }

ChimeraCoord parse_coord(const json& j, int r) {
    if (!j.is_array() || j.size() != 4) throw FormatError("vertex must be an array [i,j,k,l]");
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw FormatError("vertex coordinates must be integers");
    }
    ChimeraCoord c{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
    if (!coord_in_range(c, r)) throw FormatError("vertex " + to_string(c) + " is not in G_" + std::to_string(r));
    return c;
}

double parse_value(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw FormatError(std::string("entry is missing numeric \"") + key + "\"");
    }
    const double x = obj.at(key).get<double>();
    if (!std::isfinite(x)) throw FormatError(std::string("non-finite \"") + key + "\"");
    return x;
}

json parse_document(std::string_view text, std::string_view expected_format) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("document must be a JSON object");
    if (!doc.contains("format") || !doc["format"].is_string()) throw FormatError("missing format tag");
    if (doc["format"].get<std::string>() != expected_format) {
        throw FormatError("unknown format tag \"" + doc["format"].get<std::string>() + "\", expected \"" +
                          std::string(expected_format) + "\"");
    }
    if (!doc.contains("r") || !doc["r"].is_number_integer()) throw FormatError("missing integer r");
    const auto r = doc["r"].get<long long>();
    if (r < 1 || r > kMaxR) throw FormatError("r out of range: " + std::to_string(r));
    return doc;
}

bool worth_writing(double x) { return x != 0.0 || std::signbit(x); }

}  // namespace

std::string save_instance(const ChimeraInstance& inst) {
    const auto& topo = inst.topology();
    json couplings = json::array();
    for (std::size_t e = 0; e < topo.edge_count(); ++e) {
        const double c = inst.couplings()[e];
        if (!worth_writing(c)) continue;
        couplings.push_back({{"u", coord_json(topo.coord(topo.edge(e).u))},
                             {"v", coord_json(topo.coord(topo.edge(e).v))},
                             {"c", c}});
    }
    json fields = json::array();
    for (std::uint32_t v = 0; v < topo.vertex_count(); ++v) {
        const double d = inst.fields()[v];
        if (!worth_writing(d)) continue;
        fields.push_back({{"u", coord_json(topo.coord(VertexId(v)))}, {"d", d}});
    }
    json doc = {{"format", kInstanceFormat}, {"r", inst.r()}, {"couplings", couplings}, {"fields", fields}};
    return doc.dump(1) + "\n";
}

ChimeraInstance load_instance(std::string_view text) {
    const json doc = parse_document(text, kInstanceFormat);
    const int r = doc["r"].get<int>();
    ChimeraInstance inst{ChimeraTopology(r)};
    const auto& topo = inst.topology();

    std::vector<bool> seen_edge(topo.edge_count(), false);
    if (doc.contains("couplings")) {
        if (!doc["couplings"].is_array()) throw FormatError("couplings must be an array");
        for (const auto& entry : doc["couplings"]) {
            if (!entry.is_object() || !entry.contains("u") || !entry.contains("v")) {
                throw FormatError("coupling entry needs u, v and c");
            }
            const auto u = parse_coord(entry["u"], r);
            const auto v = parse_coord(entry["v"], r);
            const auto e = topo.find_edge(topo.id(u), topo.id(v));
            if (!e) throw FormatError(to_string(u) + "-" + to_string(v) + " is not an edge of G_" + std::to_string(r));
            if (seen_edge[*e]) throw FormatError("duplicate coupling " + to_string(u) + "-" + to_string(v));
            seen_edge[*e] = true;
            inst.set_coupling(*e, parse_value(entry, "c"));
        }
    }
    std::vector<bool> seen_vertex(topo.vertex_count(), false);
    if (doc.contains("fields")) {
        if (!doc["fields"].is_array()) throw FormatError("fields must be an array");
        for (const auto& entry : doc["fields"]) {
            if (!entry.is_object() || !entry.contains("u")) throw FormatError("field entry needs u and d");
            const auto u = parse_coord(entry["u"], r);
            const auto id = topo.id(u);
            if (seen_vertex[id.value]) throw FormatError("duplicate field " + to_string(u));
            seen_vertex[id.value] = true;
            inst.set_field(id, parse_value(entry, "d"));
        }
    }
    return inst;
}

std::string save_assignment(const AssignmentFile& file) {
    if (file.spins.size() != static_cast<std::size_t>(8 * file.r * file.r)) {
        throw std::invalid_argument("assignment length does not match r");
    }
    json spins = json::array();
    for (auto s : file.spins.spins()) spins.push_back(int{s});
    json doc = {{"format", kAssignmentFormat}, {"r", file.r}};
    if (!file.algo.empty()) doc["algo"] = file.algo;
    if (file.epsilon) doc["epsilon"] = *file.epsilon;
    if (file.energy) doc["energy"] = *file.energy;
    doc["spins"] = spins;
    // One line for the spin array keeps files small and diffable.
    return doc.dump() + "\n";
}

AssignmentFile load_assignment(std::string_view text) {
    const json doc = parse_document(text, kAssignmentFormat);
    AssignmentFile file;
    file.r = doc["r"].get<int>();
    if (!doc.contains("spins") || !doc["spins"].is_array()) throw FormatError("missing spins array");
    const auto& arr = doc["spins"];
    const std::size_t n = static_cast<std::size_t>(8 * file.r * file.r);
    if (arr.size() != n) {
        throw FormatError("spins has " + std::to_string(arr.size()) + " entries, expected " + std::to_string(n));
    }
    std::vector<Spin> spins;
    spins.reserve(n);
    for (const auto& x : arr) {
        if (!x.is_number_integer() || (x.get<int>() != 1 && x.get<int>() != -1)) {
            throw FormatError("spin entries must be -1 or 1");
        }
        spins.push_back(static_cast<Spin>(x.get<int>()));
    }
    file.spins = SpinAssignment(std::move(spins));
    if (doc.contains("energy")) file.energy = parse_value(doc, "energy");
    if (doc.contains("epsilon")) file.epsilon = parse_value(doc, "epsilon");
    if (doc.contains("algo")) {
        if (!doc["algo"].is_string()) throw FormatError("algo must be a string");
        file.algo = doc["algo"].get<std::string>();
    }
    return file;
}

namespace {

double parse_number(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) {
        throw std::invalid_argument("bad number \"" + std::string(s) + "\" in distribution");
    }
    return x;
}

std::string shortest(double x) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

}  // namespace

Distribution parse_distribution(std::string_view text) {
    if (text == "zero") return {Distribution::Kind::Zero};
    if (text == "uniform-pm1") return {Distribution::Kind::UniformPm1};
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.empty() || text.back() != ')') {
        throw std::invalid_argument("unknown distribution \"" + std::string(text) + "\"");
    }
    const auto name = text.substr(0, open);
    const auto args = text.substr(open + 1, text.size() - open - 2);
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
        throw std::invalid_argument("distribution \"" + std::string(text) + "\" needs two parameters");
    }
    Distribution d;
    d.a = parse_number(args.substr(0, comma));
    d.b = parse_number(args.substr(comma + 1));
    if (name == "gaussian") {
        d.kind = Distribution::Kind::Gaussian;
        if (d.b < 0.0) throw std::invalid_argument("gaussian standard deviation must be >= 0");
    } else if (name == "uniform") {
        d.kind = Distribution::Kind::Uniform;
        if (d.a > d.b) throw std::invalid_argument("uniform needs lo <= hi");
    } else {
        throw std::invalid_argument("unknown distribution \"" + std::string(name) + "\"");
    }
    return d;
}

std::string to_string(const Distribution& d) {
    switch (d.kind) {
        case Distribution::Kind::Zero: return "zero";
        case Distribution::Kind::UniformPm1: return "uniform-pm1";
        case Distribution::Kind::Gaussian: return "gaussian(" + shortest(d.a) + "," + shortest(d.b) + ")";
        case Distribution::Kind::Uniform: return "uniform(" + shortest(d.a) + "," + shortest(d.b) + ")";
    }
    return "?";
}

ChimeraInstance generate(int r, const GeneratorSpec& spec) {
    for (const auto* d : {&spec.couplings, &spec.fields}) {
        if (!std::isfinite(d->a) || !std::isfinite(d->b)) throw std::invalid_argument("non-finite distribution");
        if (d->kind == Distribution::Kind::Gaussian && d->b < 0.0) {
            throw std::invalid_argument("gaussian standard deviation must be >= 0");
        }
        if (d->kind == Distribution::Kind::Uniform && d->a > d->b) {
            throw std::invalid_argument("uniform needs lo <= hi");
        }
    }
    XorShift64Star rng(spec.seed);
    auto draw = [&rng](const Distribution& d) {
        switch (d.kind) {
            case Distribution::Kind::Zero: return 0.0;
            case Distribution::Kind::UniformPm1: return rng.sign();
            case Distribution::Kind::Gaussian: return d.a + d.b * rng.gaussian();
            case Distribution::Kind::Uniform: return d.a + (d.b - d.a) * rng.uniform();
        }
        return 0.0;
    };
    ChimeraTopology topo(r);
    std::vector<double> couplings(topo.edge_count());
    std::vector<double> fields(topo.vertex_count());
    for (auto& c : couplings) c = draw(spec.couplings);
    for (auto& d : fields) d = draw(spec.fields);
    return ChimeraInstance(std::move(topo), std::move(couplings), std::move(fields));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace chimera
