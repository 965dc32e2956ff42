// ergolab command-line driver.

#include <ergolab/ergolab.hpp>
#include <ergolab/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace ergolab;
using io::json;

namespace {

constexpr const char* version = "0.1.0";

struct Common {
    std::string out;
    std::optional<unsigned> threads;
    std::optional<std::uint64_t> seed;
};

unsigned resolve_threads(const Common& c) {
    if (c.threads) {
        if (*c.threads == 0) throw PreconditionError("--threads must be at least 1");
        return *c.threads;
    }
    if (const char* env = std::getenv("ERGOLAB_THREADS"); env && *env) {
        try {
            std::size_t used = 0;
            long v = std::stol(env, &used);
            if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
            return static_cast<unsigned>(v);
        } catch (const std::exception&) {
            throw PreconditionError(std::string("ERGOLAB_THREADS must be a positive integer, got '") + env + "'");
        }
    }
    return 1;
}

std::uint64_t require_seed(const Common& c, const std::string& why) {
    if (!c.seed) throw PreconditionError("--seed is required for " + why);
    return *c.seed;
}

void emit(const Common& c, const json& doc) {
    std::string text = io::dump(doc) + "\n";
    if (c.out.empty())
        std::cout << text;
    else
        io::write_text_file(c.out, text);
}

json base_config(const std::string& command, const Common& c, unsigned threads) {
    json cfg{{"command", command}, {"version", version}, {"threads", threads}};
    cfg["seed"] = c.seed ? json(*c.seed) : json(nullptr);
    cfg["out"] = c.out.empty() ? json(nullptr) : json(c.out);
    return cfg;
}

UnipotentAffineMap load_system(const std::string& path) { return io::system_from_json(io::read_json_file(path)); }

/// "generic" -> fresh sqrt-prime generators, "random" -> seeded generators,
/// anything else is a point file.
TorusPoint load_point(const std::string& spec, std::size_t d, const Common& c) {
    if (spec == "generic") return sample_generic_point(d);
    if (spec == "random") {
        std::mt19937_64 rng(require_seed(c, "--point random"));
        return sample_generic_point(d, rng);
    }
    auto p = io::point_from_json(io::read_json_file(spec));
    if (p.dim() != d)
        throw DimensionError("point: dimension " + std::to_string(p.dim()) + " does not match the system (" +
                             std::to_string(d) + ")");
    return p;
}

PolynomialFamily parse_family(const std::string& text) {
    try {
        return PolynomialFamily::parse(text);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("polys: ") + e.what());
    }
}

std::vector<Frequency> parse_frequencies(const std::string& text) {
    std::vector<Frequency> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) out.push_back(io::parse_frequency(item, "freq"));
    if (out.empty()) throw ParseError("freq: empty list");
    return out;
}

json phase_to_json(const PhasePolynomial& r) {
    json binom = json::array(), standard = json::array();
    for (const auto& c : r.binomial_coeffs()) binom.push_back(io::angle_to_json(c));
    for (const auto& c : r.standard_coeffs()) standard.push_back(io::angle_to_json(c));
    json out{{"binomial_coeffs", binom}, {"standard_coeffs", standard}, {"degree", r.degree()}};
    if (r.decomposition && r.decomposition->witness) {
        const auto& w = *r.decomposition->witness;
        out["witness"] = {{"r0", w.first + 1},
                          {"j0", w.second},
                          {"polynomial", r.decomposition->witness_polynomial.to_string()}};
    }
    return out;
}

json weyl_to_json(const WeylSumResult& w) {
    return json{{"N", w.N}, {"re", w.value.real()}, {"im", w.value.imag()}, {"magnitude", w.magnitude}};
}

// ---------------------------------------------------------------- commands

int cmd_independence(const Common& c, const std::string& polys) {
    unsigned threads = resolve_threads(c);
    auto family = parse_family(polys);
    auto result = is_independent(family);
    json cfg = base_config("independence-check", c, threads);
    cfg["polys"] = family.to_string();
    json doc{{"config", cfg}, {"independent", result.independent}};
    if (result.witness) {
        doc["witness"] = io::frequency_to_json(*result.witness);
        IntegerPolynomial combo;
        for (std::size_t j = 0; j < family.size(); ++j) combo += (*result.witness)[j] * family[j];
        doc["witness_combination"] = combo.to_string();
    }
    emit(c, doc);
    return 0;
}

int cmd_reduce(const Common& c, const std::string& matrix_path, const std::string& system_path) {
    unsigned threads = resolve_threads(c);
    if (matrix_path.empty() == system_path.empty()) throw PreconditionError("give exactly one of --matrix or --system");
    json cfg = base_config("reduce", c, threads);
    json doc;
    RationalMatrix a;
    std::optional<UnipotentAffineMap> system;
    if (!system_path.empty()) {
        cfg["system"] = system_path;
        system = load_system(system_path);
        a = system->linear();
    } else {
        cfg["matrix"] = matrix_path;
        json j = io::read_json_file(matrix_path);
        if (j.is_object() && j.contains("A"))
            a = io::matrix_from_json(j.at("A"), "A");
        else if (j.is_object() && j.contains("matrix"))
            a = io::matrix_from_json(j.at("matrix"), "matrix");
        else
            a = io::matrix_from_json(j, "matrix");
        if (!a.square()) throw DimensionError("matrix: must be square");
        if (!a.is_integer()) throw DomainError("matrix: entries must be integers");
        if (!is_unipotent(a).unipotent) throw DomainError("matrix: not unipotent");
    }
    auto red = unipotent_canonical_form(a);
    if (!verify_reduction(a, red)) throw Error("reduction failed its self-check");
    json blocks = json::array();
    for (auto b : red.block_sizes) blocks.push_back(b);
    doc = {{"config", cfg},
           {"A", io::matrix_to_json(a)},
           {"J", io::matrix_to_json(red.j)},
           {"P", io::matrix_to_json(red.p)},
           {"block_sizes", blocks},
           {"nilpotency_index", is_unipotent(a).index},
           {"verified", true}};
    if (system) {
        auto sr = reduce_to_shear(*system);
        json offset = json::array(), tops = json::array();
        for (const auto& v : sr.shear.offset) offset.push_back(io::angle_to_json(v));
        for (const auto& v : sr.shear.tops) tops.push_back(io::angle_to_json(v));
        doc["offset"] = offset;
        doc["tops"] = tops;
        doc["ergodic"] = is_ergodic(*system);
        doc["totally_ergodic"] = is_totally_ergodic(*system);
    }
    emit(c, doc);
    return 0;
}

struct OrbitArgs {
    std::string system, point = "generic", polys = "n";
    std::uint64_t n = 10;
    std::int64_t first = 1;
};

int cmd_orbit(const Common& c, const OrbitArgs& a) {
    unsigned threads = resolve_threads(c);
    if (a.n == 0) throw PreconditionError("--N must be at least 1");
    auto t = load_system(a.system);
    auto family = parse_family(a.polys);
    auto x = load_point(a.point, t.dim(), c);
    json cfg = base_config("orbit", c, threads);
    cfg.update({{"system", a.system}, {"point", io::point_to_json(x)}, {"polys", family.to_string()}, {"N", a.n},
                {"first", a.first}});
    OrbitStream stream(t, x, family, Integer(static_cast<long>(a.first)));
    std::string csv = "n";
    for (std::size_t l = 0; l < family.size(); ++l)
        for (std::size_t i = 0; i < t.dim(); ++i)
            csv += family.size() == 1 ? ",x" + std::to_string(i + 1)
                                      : ",x" + std::to_string(l + 1) + "_" + std::to_string(i + 1);
    csv += "\n";
    std::vector<double> p;
    for (std::uint64_t i = 0; i < a.n; ++i) {
        stream.next(p);
        csv += std::to_string(a.first + static_cast<std::int64_t>(i));
        for (double v : p) csv += "," + io::format_double(v);
        csv += "\n";
    }
    json doc{{"config", cfg}, {"rows", a.n}, {"columns", 1 + t.dim() * family.size()}};
    if (c.out.empty()) {
        std::cout << csv;
        std::cerr << io::dump(doc, -1) << "\n";
    } else {
        io::write_text_file(c.out, csv);
        std::cout << io::dump(doc) << "\n";
    }
    return 0;
}

struct WeylArgs {
    std::string system, point = "generic", polys = "n", freq;
    std::uint64_t n = 1000;
};

int cmd_weyl(const Common& c, const WeylArgs& a) {
    unsigned threads = resolve_threads(c);
    if (a.n == 0) throw PreconditionError("--N must be at least 1");
    auto t = load_system(a.system);
    auto family = parse_family(a.polys);
    auto freqs = parse_frequencies(a.freq);
    auto x = load_point(a.point, t.dim(), c);
    json cfg = base_config("weyl-sum", c, threads);
    cfg.update({{"system", a.system}, {"point", io::point_to_json(x)}, {"polys", family.to_string()}, {"N", a.n}});
    json results = json::array();
    bool normal = is_shear_normal_form(t);
    for (const auto& m : freqs) {
        if (m.size() != t.dim() * family.size())
            throw DimensionError("freq: length " + std::to_string(m.size()) + ", expected d*k = " +
                                 std::to_string(t.dim() * family.size()));
        auto r = normal ? build_phase_polynomial(t, x, family, m) : orbit_phase_polynomial(t, x, family, m);
        auto w = weyl_sum_phase(r, a.n, {threads, 1});
        json item = weyl_to_json(w);
        item["freq"] = io::frequency_to_json(m);
        item["phase"] = phase_to_json(r);
        item["constant_phase"] = r.is_constant_mod1();
        item["nonconstant_irrational"] = has_nonconstant_irrational_coeff(r);
        results.push_back(item);
    }
    cfg["freq"] = a.freq;
    json doc{{"config", cfg}};
    if (results.size() == 1) {
        for (auto it = results[0].begin(); it != results[0].end(); ++it) doc[it.key()] = it.value();
    } else {
        doc["results"] = results;
    }
    emit(c, doc);
    return 0;
}

struct DiscrepancyArgs {
    std::string system, point = "generic", polys = "n", mode = "grid", points;
    std::uint64_t n = 1000, trials = 64;
};

std::vector<std::vector<double>> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("points: cannot open '" + path + "'");
    std::vector<std::vector<double>> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> p;
        std::stringstream ss(line);
        std::string cell;
        bool ok = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                p.push_back(std::stod(cell, &used));
                if (used != cell.size()) ok = false;
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok) {
            if (pts.empty()) continue;  // header
            throw ParseError("points: line " + std::to_string(lineno) + " is not numeric");
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

int cmd_discrepancy(const Common& c, const DiscrepancyArgs& a) {
    unsigned threads = resolve_threads(c);
    auto mode = parse_discrepancy_mode(a.mode);
    std::optional<std::uint64_t> seed;
    if (mode == DiscrepancyMode::random) seed = require_seed(c, "random discrepancy mode");
    json cfg = base_config("discrepancy", c, threads);
    std::vector<std::vector<double>> pts;
    if (!a.points.empty()) {
        if (!a.system.empty()) throw PreconditionError("give either --points or --system, not both");
        cfg["points"] = a.points;
        pts = read_points_csv(a.points);
    } else {
        if (a.system.empty()) throw PreconditionError("--system or --points is required");
        if (a.n == 0) throw PreconditionError("--N must be at least 1");
        auto t = load_system(a.system);
        auto family = parse_family(a.polys);
        if (t.dim() * family.size() > max_discrepancy_dim)
            throw DimensionError("discrepancy: orbit dimension " + std::to_string(t.dim() * family.size()) +
                                 " exceeds " + std::to_string(max_discrepancy_dim));
        auto x = load_point(a.point, t.dim(), c);
        cfg.update({{"system", a.system}, {"point", io::point_to_json(x)}, {"polys", family.to_string()}, {"N", a.n}});
        OrbitStream stream(t, x, family, 1);
        for (std::uint64_t i = 0; i < a.n; ++i) pts.push_back(stream.next());
    }
    cfg.update({{"mode", a.mode}, {"trials", a.trials}});
    auto r = discrepancy_estimate(pts, mode, a.trials, seed, threads);
    json doc{{"config", cfg},
             {"estimate", r.estimate},
             {"mode", to_string(r.mode)},
             {"trials", r.trials},
             {"seed", r.seed ? json(*r.seed) : json(nullptr)},
             {"points", r.points},
             {"dim", r.dim},
             {"lower_bound", true}};
    if (r.dim == 1) {
        std::vector<double> xs;
        for (const auto& p : pts) xs.push_back(p[0]);
        doc["exact_1d"] = star_discrepancy_1d(xs);
    }
    emit(c, doc);
    return 0;
}

struct AverageArgs {
    std::string system, polys, functions, trace;
    std::uint64_t n = 1000;
    std::size_t samples = 20;
};

json report_to_json(const AverageReport& r) {
    json values = json::array(), points = json::array();
    for (const auto& v : r.values)
        values.push_back({{"value", io::complex_to_json(v.value)},
                          {"magnitude", v.magnitude},
                          {"distance", std::abs(v.value - r.product)},
                          {"constant_in_N", v.constant_in_n}});
    for (const auto& p : r.samples) points.push_back(io::point_to_json(p));
    return json{{"N", r.N},
                {"product_of_integrals", io::complex_to_json(r.product)},
                {"l2_estimate", r.l2_estimate},
                {"values", values},
                {"samples", {{"count", r.samples.size()}, {"seed", r.seed}, {"points", points}}}};
}

int cmd_average(const Common& c, const AverageArgs& a) {
    unsigned threads = resolve_threads(c);
    std::uint64_t seed = require_seed(c, "average (sample points are random)");
    if (a.n == 0) throw PreconditionError("--N must be at least 1");
    if (a.samples == 0) throw PreconditionError("--samples must be at least 1");
    auto t = load_system(a.system);
    auto family = parse_family(a.polys);
    auto fs = io::functions_from_json(io::read_json_file(a.functions), t.dim());
    if (fs.size() != family.size())
        throw PreconditionError("functions: got " + std::to_string(fs.size()) + " functions for " +
                                std::to_string(family.size()) + " polynomials");
    json cfg = base_config("average", c, threads);
    cfg.update({{"system", a.system},
                {"polys", family.to_string()},
                {"functions", a.functions},
                {"N", a.n},
                {"samples", a.samples}});
    auto report = l2_distance_to_product(t, family, fs, a.n, a.samples, seed, threads);
    json doc = report_to_json(report);
    doc["config"] = cfg;
    if (!a.trace.empty()) {
        cfg["trace"] = a.trace;
        doc["config"] = cfg;
        std::string csv = "N,l2_estimate,mean_magnitude\n";
        std::vector<std::uint64_t> grid;
        for (std::uint64_t n = 1; n < a.n; n *= 10) grid.push_back(n);
        grid.push_back(a.n);
        for (auto n : grid) {
            auto r = n == a.n ? report : l2_distance_to_product(t, family, fs, n, a.samples, seed, threads);
            double mean = 0.0;
            for (const auto& v : r.values) mean += v.magnitude;
            mean /= static_cast<double>(r.values.size());
            csv += std::to_string(n) + "," + io::format_double(r.l2_estimate) + "," + io::format_double(mean) + "\n";
        }
        io::write_text_file(a.trace, csv);
    }
    emit(c, doc);
    return 0;
}

struct NilArgs {
    int example = 1;
    std::string a, g, csv;
    std::uint64_t n = 10;
};

template <class G>
json nil_demo(const NilArgs& args, const std::vector<AngleValue>& coords, const Integer& m,
              const std::vector<AngleValue>& start, const std::string& csv_path) {
    G a;
    a.m = m;
    for (std::size_t i = 0; i < G::real_dim; ++i) a.x[i] = coords[i];
    G g;
    for (std::size_t i = 0; i < G::real_dim; ++i) g.x[i] = start[i];
    auto map = conjugated_affine(a);
    TorusPoint affine = psi(phi(g).g0);
    G current = g;
    bool agree = true;
    std::string csv = "n";
    for (std::size_t i = 0; i < G::real_dim; ++i) csv += ",x" + std::to_string(i + 1);
    csv += "\n";
    for (std::uint64_t n = 0; n <= args.n; ++n) {
        TorusPoint from_group = psi(phi(current).g0);
        agree = agree && from_group == affine;
        csv += std::to_string(n);
        for (double v : affine.shadow()) csv += "," + io::format_double(v);
        csv += "\n";
        current = mul(a, current);
        affine = apply(map, affine);
    }
    if (!csv_path.empty()) io::write_text_file(csv_path, csv);
    json doc{{"map", io::system_to_json(map)},
             {"ergodic", is_ergodic(map)},
             {"conjugacy_verified", agree},
             {"orbit_length", args.n + 1}};
    return doc;
}

int cmd_demo_nil(const Common& c, const NilArgs& args) {
    unsigned threads = resolve_threads(c);
    if (args.example != 1 && args.example != 2) throw PreconditionError("--example must be 1 or 2");
    std::size_t d = args.example == 1 ? 2 : 3;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ';')) parts.push_back(item);
        return parts;
    };
    std::string a_text = args.a.empty() ? (d == 2 ? "1;sqrt2;sqrt3" : "1;sqrt2;sqrt3;sqrt5") : args.a;
    auto parts = split(a_text);
    if (parts.size() != d + 1)
        throw ParseError("a: expected " + std::to_string(d + 1) + " ';'-separated entries (m;x1;...)");
    Rational m = parse_rational(parts[0]);
    if (!is_integral(m)) throw ParseError("a: discrete coordinate must be an integer");
    std::vector<AngleValue> coords;
    for (std::size_t i = 1; i <= d; ++i) coords.push_back(AngleValue::parse(parts[i]));
    std::vector<AngleValue> start(d);
    if (!args.g.empty()) {
        auto gp = split(args.g);
        if (gp.size() != d) throw ParseError("g: expected " + std::to_string(d) + " ';'-separated real coordinates");
        for (std::size_t i = 0; i < d; ++i) start[i] = AngleValue::parse(gp[i]);
    }
    json cfg = base_config("demo-nil", c, threads);
    cfg.update({{"example", args.example}, {"a", a_text}, {"g", args.g}, {"N", args.n}});
    if (!args.csv.empty()) cfg["csv"] = args.csv;
    json doc = args.example == 1 ? nil_demo<NilElement1>(args, coords, m.get_num(), start, args.csv)
                                 : nil_demo<NilElement2>(args, coords, m.get_num(), start, args.csv);
    doc["config"] = cfg;
    emit(c, doc);
    return doc["conjugacy_verified"].get<bool>() ? 0 : 1;
}

int cmd_demo_counterexample(const Common& c, std::uint64_t n, double threshold) {
    unsigned threads = resolve_threads(c);
    if (n == 0) throw PreconditionError("--N must be at least 1");
    auto& reg = GeneratorRegistry::global();
    AngleValue alpha = AngleValue::generator(reg.resolve("sqrt2"));
    UnipotentAffineMap t(RationalMatrix{{1, 0}, {2, 1}}, {alpha, alpha});
    auto family = PolynomialFamily::parse("n,n^2");
    TorusPoint origin = TorusPoint::zero(2);
    TorusPoint generic{AngleValue::generator(reg.resolve("sqrt3")), AngleValue::generator(reg.resolve("sqrt5"))};

    Frequency bad{0, 1, -1, 0};
    auto r0 = orbit_phase_polynomial(t, origin, family, bad);
    auto w0 = weyl_sum_phase(r0, n, {threads, 1});

    json rows = json::array();
    double worst = 0.0;
    Frequency worst_m;
    Frequency m(4, -2);
    while (true) {
        bool nonzero = std::any_of(m.begin(), m.end(), [](const Integer& v) { return v != 0; });
        if (nonzero) {
            auto w = weyl_sum_phase(orbit_phase_polynomial(t, generic, family, m), n, {threads, 1});
            rows.push_back({{"freq", io::frequency_to_json(m)}, {"magnitude", w.magnitude}});
            if (w.magnitude > worst) {
                worst = w.magnitude;
                worst_m = m;
            }
        }
        std::size_t i = 0;
        while (i < 4 && ++m[i] > 2) m[i++] = -2;
        if (i == 4) break;
    }
    json cfg = base_config("demo-counterexample", c, threads);
    cfg.update({{"N", n}, {"threshold", threshold}, {"polys", family.to_string()}});
    json doc{{"config", cfg},
             {"system", io::system_to_json(t)},
             {"special_point",
              {{"point", io::point_to_json(origin)},
               {"freq", io::frequency_to_json(bad)},
               {"phase", phase_to_json(r0)},
               {"phase_identically_zero", r0.is_zero_mod1()},
               {"magnitude", w0.magnitude}}},
             {"generic_point",
              {{"point", io::point_to_json(generic)},
               {"frequencies", rows.size()},
               {"max_magnitude", worst},
               {"argmax", io::frequency_to_json(worst_m)},
               {"below_threshold", worst < threshold},
               {"results", rows}}}};
    emit(c, doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ergolab: polynomial orbits of unipotent torus maps, Weyl sums and multiple ergodic averages"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out, "Output file (stdout if omitted)");
        sub->add_option("--threads", common.threads, "Worker threads (fallback: ERGOLAB_THREADS, then 1)");
        sub->add_option("--seed", common.seed, "Seed for stochastic modes");
    };
    std::function<int()> run;

    std::string polys;
    auto* ind = app.add_subcommand("independence-check", "Decide independence of a polynomial family");
    ind->add_option("--polys", polys, "Comma-separated polynomials, e.g. \"n,n^2\"")->required();
    add_common(ind);
    ind->callback([&] { run = [&] { return cmd_independence(common, polys); }; });

    std::string matrix_path, system_path;
    auto* red = app.add_subcommand("reduce", "Shear normal form of a unipotent integer matrix");
    red->add_option("--matrix", matrix_path, "JSON matrix file");
    red->add_option("--system", system_path, "JSON system file (also reports the normalized translation)");
    add_common(red);
    red->callback([&] { run = [&] { return cmd_reduce(common, matrix_path, system_path); }; });

    OrbitArgs orbit;
    auto* orb = app.add_subcommand("orbit", "CSV of (T^{p_1(n)}x, ..., T^{p_k(n)}x)");
    orb->add_option("--system", orbit.system)->required();
    orb->add_option("--point", orbit.point, "generic | random | FILE");
    orb->add_option("--polys", orbit.polys);
    orb->add_option("--N", orbit.n);
    orb->add_option("--first", orbit.first, "First n (default 1)");
    add_common(orb);
    orb->callback([&] { run = [&] { return cmd_orbit(common, orbit); }; });

    WeylArgs weyl;
    auto* wey = app.add_subcommand("weyl-sum", "Weyl sums of the orbit phase for one or more frequencies");
    wey->add_option("--system", weyl.system)->required();
    wey->add_option("--point", weyl.point, "generic | random | FILE");
    wey->add_option("--polys", weyl.polys);
    wey->add_option("--freq", weyl.freq, "Frequency, e.g. \"0,1,-1,0\"; several separated by ';'")->required();
    wey->add_option("--N", weyl.n);
    add_common(wey);
    wey->callback([&] { run = [&] { return cmd_weyl(common, weyl); }; });

    DiscrepancyArgs disc;
    auto* dis = app.add_subcommand("discrepancy", "Star-discrepancy lower bound of an orbit or point set");
    dis->add_option("--system", disc.system);
    dis->add_option("--points", disc.points, "CSV of points instead of an orbit");
    dis->add_option("--point", disc.point, "generic | random | FILE");
    dis->add_option("--polys", disc.polys);
    dis->add_option("--N", disc.n);
    dis->add_option("--mode", disc.mode, "grid | random");
    dis->add_option("--trials", disc.trials, "Grid points per axis, or random anchors");
    add_common(dis);
    dis->callback([&] { run = [&] { return cmd_discrepancy(common, disc); }; });

    AverageArgs avg;
    auto* ave = app.add_subcommand("average", "Multiple ergodic averages and their L2 distance to the product");
    ave->add_option("--system", avg.system)->required();
    ave->add_option("--polys", avg.polys)->required();
    ave->add_option("--functions", avg.functions, "JSON trigonometric polynomials, one per polynomial")->required();
    ave->add_option("--N", avg.n);
    ave->add_option("--samples", avg.samples);
    ave->add_option("--trace", avg.trace, "CSV of the estimate over N = 1, 10, 100, ...");
    add_common(ave);
    ave->callback([&] { run = [&] { return cmd_average(common, avg); }; });

    NilArgs nil;
    auto* dn = app.add_subcommand("demo-nil", "Nilrotation on one of the two model nilmanifolds and its torus map");
    dn->add_option("--example", nil.example, "1 or 2");
    dn->add_option("--a", nil.a, "Rotation element \"m;x1;x2[;x3]\"");
    dn->add_option("--g", nil.g, "Starting point \"x1;x2[;x3]\" in the identity component");
    dn->add_option("--N", nil.n, "Orbit length");
    dn->add_option("--csv", nil.csv, "Orbit CSV output");
    add_common(dn);
    dn->callback([&] { run = [&] { return cmd_demo_nil(common, nil); }; });

    std::uint64_t ce_n = 100000;
    double ce_threshold = 0.02;
    auto* ce = app.add_subcommand("demo-counterexample", "Orbit (na, n^2 a, n^2 a, n^4 a) versus a generic point");
    ce->add_option("--N", ce_n);
    ce->add_option("--threshold", ce_threshold, "Bound reported for the generic point");
    add_common(ce);
    ce->callback([&] { run = [&] { return cmd_demo_counterexample(common, ce_n, ce_threshold); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return run();
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
