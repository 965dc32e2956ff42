#pragma once

// JSON/CSV plumbing: exact values as strings, floats with 17 significant digits.
//
//   system file:    {"generators": {"g": 0.41421356237309503 | "p/q"},
//                    "A": [[1,0],[2,1]],
//                    "b": [{"rational": "0", "gens": {"sqrt2": "1"}}, "1/3+g"]}
//   point file:     {"point": [angle, ...]} or a bare array
//   functions file: {"functions": [{"terms": [{"freq": [0,1], "coeff": 1 | [re, im]}]}]}

#include "averages.hpp"
#include "torus.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ergolab::io {

using json = nlohmann::json;

inline std::string format_double(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline void dump(const json& j, std::ostringstream& os, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                os << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
                dump(it.value(), os, indent, depth + 1);
            }
            newline(depth);
            os << '}';
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                dump(v, os, indent, depth + 1);
            }
            newline(depth);
            os << ']';
            return;
        }
        case json::value_t::number_float: {
            double x = j.get<double>();
            // JSON has no NaN/Infinity literals
            if (!std::isfinite(x))
                os << "null";
            else
                os << format_double(x);
            return;
        }
        default:
            os << j.dump();
    }
}

inline std::string path_join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

inline Rational rational_field(const json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
        if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<unsigned long long>())));
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
    throw ParseError(path + ": expected an integer or a rational string such as \"3/4\"");
}

inline Integer integer_field(const json& j, const std::string& path) {
    Rational q = rational_field(j, path);
    if (!is_integral(q)) throw ParseError(path + ": expected an integer");
    return q.get_num();
}

}  // namespace detail

/// Serializes with 17 significant digits for every float; indent < 0 is compact.
inline std::string dump(const json& j, int indent = 2) {
    std::ostringstream os;
    detail::dump(j, os, indent, 0);
    return os.str();
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("write to '" + path + "' failed");
}

inline json rational_to_json(const Rational& q) { return q.get_str(); }

inline json angle_to_json(const AngleValue& v, const GeneratorRegistry& reg = GeneratorRegistry::global()) {
    json gens = json::object();
    for (const auto& [id, c] : v.generator_terms()) gens[reg.get(id).name] = c.get_str();
    return json{{"rational", v.rational_part().get_str()}, {"gens", gens}, {"float", v.shadow(reg)}};
}

/// Accepts {"rational": ..., "gens": {...}}, an angle string ("1/2+sqrt2"), or an integer.
inline AngleValue angle_from_json(const json& j, const std::string& path,
                                  GeneratorRegistry& reg = GeneratorRegistry::global()) {
    if (j.is_string()) {
        try {
            return AngleValue::parse(j.get<std::string>(), reg);
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    if (j.is_number_integer() || j.is_number_unsigned()) return AngleValue(detail::rational_field(j, path));
    if (!j.is_object()) throw ParseError(path + ": expected an angle object, string or integer");
    AngleValue out;
    if (j.contains("rational")) out += AngleValue(detail::rational_field(j.at("rational"), path + ".rational"));
    if (j.contains("gens")) {
        const auto& gens = j.at("gens");
        if (!gens.is_object()) throw ParseError(path + ".gens: expected an object");
        for (auto it = gens.begin(); it != gens.end(); ++it) {
            std::string field = path + ".gens." + it.key();
            GeneratorId id;
            try {
                id = reg.resolve(it.key());
            } catch (const ParseError& e) {
                throw ParseError(field + ": " + e.what());
            }
            out += AngleValue::generator(id, detail::rational_field(it.value(), field));
        }
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "rational" && it.key() != "gens" && it.key() != "float")
            throw ParseError(path + "." + it.key() + ": unknown field");
    return out;
}

inline json point_to_json(const TorusPoint& p) {
    json arr = json::array();
    for (const auto& c : p.coords()) arr.push_back(angle_to_json(c));
    return arr;
}

inline TorusPoint point_from_json(const json& j, const std::string& path = "point",
                                  GeneratorRegistry& reg = GeneratorRegistry::global()) {
    const json& arr = j.is_object() && j.contains("point") ? j.at("point") : j;
    if (!arr.is_array() || arr.empty()) throw ParseError(path + ": expected a nonempty array of angles");
    std::vector<AngleValue> coords;
    for (std::size_t i = 0; i < arr.size(); ++i)
        coords.push_back(angle_from_json(arr[i], path + "[" + std::to_string(i) + "]", reg).reduced());
    return TorusPoint(std::move(coords));
}

inline json matrix_to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& q = m(i, j);
            if (is_integral(q) && q.get_num().fits_slong_p())
                row.push_back(q.get_num().get_si());
            else
                row.push_back(q.get_str());
        }
        rows.push_back(row);
    }
    return rows;
}

inline RationalMatrix matrix_from_json(const json& j, const std::string& path = "A") {
    if (!j.is_array() || j.empty()) throw ParseError(path + ": expected a nonempty array of rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string rp = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].empty()) throw ParseError(rp + ": expected a nonempty row");
        if (!rows.empty() && j[i].size() != rows.front().size()) throw ParseError(rp + ": ragged row");
        std::vector<Rational> row;
        for (std::size_t k = 0; k < j[i].size(); ++k)
            row.push_back(detail::rational_field(j[i][k], rp + "[" + std::to_string(k) + "]"));
        rows.push_back(std::move(row));
    }
    return RationalMatrix::from_rows(rows);
}

/// Registers {"name": value} with value a double in (0, 1) or an exact
/// rational string in (0, 1) (rounded to 256 bits).
inline void register_generators(const json& j, GeneratorRegistry& reg = GeneratorRegistry::global(),
                                const std::string& path = "generators") {
    if (!j.is_object()) throw ParseError(path + ": expected an object of name: value");
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string field = path + "." + it.key();
        try {
            if (it.value().is_number()) {
                reg.mint_double(it.key(), it.value().get<double>());
            } else if (it.value().is_string()) {
                Rational q = parse_rational(it.value().get<std::string>());
                if (q <= 0 || q >= 1) throw DomainError("value must lie in (0,1)");
                reg.mint(it.key(), scaled_round(q.get_num(), q.get_den(), 256));
            } else {
                throw ParseError("expected a number or a rational string");
            }
        } catch (const PreconditionError& e) {
            throw ParseError(field + ": " + e.what());
        }
    }
}

inline json generators_to_json(const AngleValue& v, json& out, const GeneratorRegistry& reg = GeneratorRegistry::global()) {
    for (const auto& [id, c] : v.generator_terms()) out[reg.get(id).name] = reg.get(id).shadow;
    return out;
}

/// All generators referenced by the given angles, name -> float value.
inline json referenced_generators(const std::vector<AngleValue>& values,
                                  const GeneratorRegistry& reg = GeneratorRegistry::global()) {
    json out = json::object();
    for (const auto& v : values) generators_to_json(v, out, reg);
    return out;
}

inline json system_to_json(const UnipotentAffineMap& t) {
    json b = json::array();
    for (const auto& v : t.translation()) b.push_back(angle_to_json(v));
    return json{{"generators", referenced_generators(t.translation())}, {"A", matrix_to_json(t.linear())}, {"b", b}};
}

inline UnipotentAffineMap system_from_json(const json& j, GeneratorRegistry& reg = GeneratorRegistry::global()) {
    if (!j.is_object()) throw ParseError("system: expected an object with fields A and b");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "generators" && it.key() != "A" && it.key() != "b")
            throw ParseError("system." + it.key() + ": unknown field");
    if (j.contains("generators")) register_generators(j.at("generators"), reg);
    if (!j.contains("A")) throw ParseError("system.A: missing");
    if (!j.contains("b")) throw ParseError("system.b: missing");
    RationalMatrix a = matrix_from_json(j.at("A"), "system.A");
    const json& bj = j.at("b");
    if (!bj.is_array()) throw ParseError("system.b: expected an array of angles");
    std::vector<AngleValue> b;
    for (std::size_t i = 0; i < bj.size(); ++i)
        b.push_back(angle_from_json(bj[i], "system.b[" + std::to_string(i) + "]", reg));
    try {
        return UnipotentAffineMap(a, b);
    } catch (const DimensionError& e) {
        throw DimensionError(std::string("system: ") + e.what());
    } catch (const DomainError& e) {
        throw DomainError(std::string("system.A: ") + e.what());
    }
}

inline json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

inline std::complex<double> complex_from_json(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError(path + ": expected a number or [re, im]");
}

inline Frequency frequency_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ParseError(path + ": expected a nonempty integer array");
    Frequency m;
    for (std::size_t i = 0; i < j.size(); ++i)
        m.push_back(detail::integer_field(j[i], path + "[" + std::to_string(i) + "]"));
    return m;
}

inline json frequency_to_json(const Frequency& m) {
    json arr = json::array();
    for (const auto& v : m) {
        if (v.fits_slong_p())
            arr.push_back(v.get_si());
        else
            arr.push_back(v.get_str());
    }
    return arr;
}

inline json trig_to_json(const TrigPolynomial& f) {
    json terms = json::array();
    for (const auto& [m, c] : f.terms()) terms.push_back({{"freq", frequency_to_json(m)}, {"coeff", complex_to_json(c)}});
    return json{{"terms", terms}};
}

inline std::vector<TrigPolynomial> functions_from_json(const json& j, std::size_t dim) {
    const json& arr = j.is_object() && j.contains("functions") ? j.at("functions") : j;
    if (!arr.is_array() || arr.empty()) throw ParseError("functions: expected a nonempty array");
    std::vector<TrigPolynomial> fs;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string path = "functions[" + std::to_string(i) + "]";
        const json& fj = arr[i];
        if (!fj.is_object() || !fj.contains("terms") || !fj.at("terms").is_array())
            throw ParseError(path + ".terms: expected an array of {freq, coeff}");
        TrigPolynomial f(dim);
        const json& terms = fj.at("terms");
        for (std::size_t t = 0; t < terms.size(); ++t) {
            std::string tp = path + ".terms[" + std::to_string(t) + "]";
            if (!terms[t].is_object() || !terms[t].contains("freq"))
                throw ParseError(tp + ".freq: missing");
            Frequency m = frequency_from_json(terms[t].at("freq"), tp + ".freq");
            if (m.size() != dim)
                throw DimensionError(tp + ".freq: length " + std::to_string(m.size()) + ", system dimension " +
                                     std::to_string(dim));
            std::complex<double> c = terms[t].contains("coeff") ? complex_from_json(terms[t].at("coeff"), tp + ".coeff")
                                                                : std::complex<double>(1.0, 0.0);
            f.add_term(m, c);
        }
        fs.push_back(std::move(f));
    }
    return fs;
}

/// "0,1,-1,0" -> one frequency.
inline Frequency parse_frequency(const std::string& text, const std::string& field = "freq") {
    Frequency m;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            Rational q = parse_rational(item);
            if (!is_integral(q)) throw ParseError("'" + item + "' is not an integer");
            m.push_back(q.get_num());
        } catch (const ParseError& e) {
            throw ParseError(field + ": " + e.what());
        }
    }
    if (m.empty()) throw ParseError(field + ": empty frequency");
    return m;
}

/// One CSV line with every float at 17 significant digits.
inline std::string csv_row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) line += (i ? "," : "") + format_double(values[i]);
    return line + "\n";
}

}  // namespace ergolab::io
