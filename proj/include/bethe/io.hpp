#ifndef BETHE_IO_HPP
#define BETHE_IO_HPP

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bethe.hpp"
#include "fundamental.hpp"
#include "matrix.hpp"
#include "repcount.hpp"
#include "reproduction.hpp"

namespace bethe::io {

// Field order follows insertion so output is stable byte for byte.
using Json = nlohmann::ordered_json;

inline Rational rational_from_json(const Json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw Error("invalid_input", "rationals must be strings or integers, got " + j.dump());
}

inline Json rational_to_json(const Rational& q) { return to_string(q); }

inline Poly poly_from_json(const Json& j)
{
    if (!j.is_array()) throw Error("invalid_input", "polynomial must be an array of coefficients");
    std::vector<Rational> c;
    for (const auto& e : j) c.push_back(rational_from_json(e));
    return Poly(std::move(c));
}

inline Json poly_to_json(const Poly& p)
{
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_string(c));
    return a;
}

inline std::vector<Poly> polys_from_json(const Json& j)
{
    if (!j.is_array()) throw Error("invalid_input", "expected an array of polynomials");
    std::vector<Poly> out;
    for (const auto& e : j) out.push_back(poly_from_json(e));
    return out;
}

inline Json polys_to_json(const std::vector<Poly>& ps)
{
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(poly_to_json(p));
    return a;
}

/// {"kind","N"?,"h","z","lambda","b"?,"slShift"?}. N defaults to the
/// length of the lambda rows; missing b is zero unless slShift is true.
inline InitialData data_from_json(const Json& j)
{
    if (!j.is_object()) throw Error("invalid_input", "initial data must be an object");
    InitialData d;
    d.kind = parse_kind(j.value("kind", std::string("A")));
    d.h = j.contains("h") ? rational_from_json(j.at("h")) : Rational(1);
    if (j.contains("z"))
        for (const auto& e : j.at("z")) d.z.push_back(rational_from_json(e));
    if (j.contains("lambda"))
        for (const auto& row : j.at("lambda")) {
            std::vector<long> r;
            for (const auto& e : row) {
                if (!e.is_number_integer()) throw Error("invalid_input", "labels must be integers");
                r.push_back(e.get<long>());
            }
            d.lambda.push_back(std::move(r));
        }
    if (j.contains("N"))
        d.N = j.at("N").get<int>();
    else if (!d.lambda.empty())
        d.N = static_cast<int>(d.lambda.front().size());
    else
        throw Error("invalid_input", "N is required when there are no points");
    if (j.contains("b")) {
        for (const auto& row : j.at("b")) {
            std::vector<Rational> r;
            for (const auto& e : row) r.push_back(rational_from_json(e));
            d.b.push_back(std::move(r));
        }
    } else {
        d.b.assign(d.z.size(), std::vector<Rational>(static_cast<std::size_t>(d.N), Rational(0)));
    }
    if (j.value("slShift", false)) {
        if (d.b.size() != d.z.size()) throw Error("invalid_input", "b needs one row per point");
        d.fill_sl_shift();
    }
    d.validate();
    return d;
}

inline Json data_to_json(const InitialData& d)
{
    Json j;
    j["kind"] = kind_name(d.kind);
    j["N"] = d.N;
    j["h"] = to_string(d.h);
    Json z = Json::array();
    for (const auto& q : d.z) z.push_back(to_string(q));
    j["z"] = z;
    j["lambda"] = d.lambda;
    Json b = Json::array();
    for (const auto& row : d.b) {
        Json r = Json::array();
        for (const auto& q : row) r.push_back(to_string(q));
        b.push_back(r);
    }
    j["b"] = b;
    return j;
}

/// Accepts {"tuple": [...]} or a bare array.
inline PolyTuple tuple_from_json(const Json& j)
{
    if (j.is_object()) {
        if (!j.contains("tuple")) throw Error("invalid_input", "missing \"tuple\" field");
        return polys_from_json(j.at("tuple"));
    }
    return polys_from_json(j);
}

inline Json tuple_to_json(const PolyTuple& y) { return Json{{"tuple", polys_to_json(y)}}; }

inline std::string degree_key(const std::vector<int>& degs)
{
    std::string s = "[";
    for (std::size_t i = 0; i < degs.size(); ++i) s += (i ? "," : "") + std::to_string(degs[i]);
    return s + "]";
}

inline Json atlas_to_json(const PopulationAtlas& atlas)
{
    Json m = Json::object();
    for (const auto& [degs, y] : atlas.representatives) m[degree_key(degs)] = polys_to_json(y);
    Json out{{"size", atlas.representatives.size()}, {"atlas", m}};
    if (!atlas.weyl_labels.empty() || !atlas.unreached.empty()) {
        Json labels = Json::object();
        for (const auto& [degs, w] : atlas.weyl_labels) labels[degree_key(degs)] = w;
        Json missing = Json::array();
        for (const auto& degs : atlas.unreached) missing.push_back(degs);
        out["weylLabels"] = labels;
        out["unreached"] = missing;
    }
    return out;
}

inline Json matrix_to_json(const Matrix& g)
{
    Json a = Json::array();
    for (std::size_t r = 0; r < g.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < g.cols(); ++c) row.push_back(to_string(g(r, c)));
        a.push_back(row);
    }
    return a;
}

inline Json ratfunc_to_json(const RationalFunction& f)
{
    return Json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

inline Json operator_to_json(const DifferenceOperator& op)
{
    Json a = Json::array();
    for (const auto& f : op.factors) a.push_back(ratfunc_to_json(f));
    return a;
}

inline Json count_report_to_json(const CountReport& r)
{
    return Json{{"solverCount", r.solver_count}, {"multiplicity", r.multiplicity}, {"agrees", r.agrees}, {"zGeneric", r.z_generic}};
}

inline Json schubert_to_json(const SchubertPosition& sp)
{
    return Json{{"point", sp.point ? Json(to_string(*sp.point)) : Json("inf")}, {"a", sp.a}, {"size", sp.size()}};
}

inline Json error_to_json(const Error& e)
{
    return Json{{"error", true}, {"code", e.code()}, {"detail", e.what()}};
}

inline Json load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("io_error", "cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        throw Error("invalid_json", path + ": " + ex.what());
    }
}

} // namespace bethe::io

#endif // BETHE_IO_HPP
