#ifndef BETHE_REPRODUCTION_HPP
#define BETHE_REPRODUCTION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bethe.hpp"
#include "matrix.hpp"

namespace bethe {

/// Projective parameter: nullopt stands for infinity.
using Param = std::optional<Rational>;

/// Canonical v with W(y, v) = rhs, or nullopt when infertile. The canonical
/// representative has zero coefficient at x^{deg y}.
inline std::optional<Poly> fertility_solve(const Poly& y, const Poly& rhs, const Rational& h)
{
    if (y.is_zero()) throw Error("invalid_input", "fertility needs nonzero y");
    if (h == 0) throw Error("zero_step", "fertility needs h != 0");
    const int dy = y.degree();
    const int d = rhs.degree() + 1 - dy;
    if (d < 0) return std::nullopt;
    const int D = std::max(d, dy);
    const int rows = std::max(dy + D, rhs.degree()) + 1;
    Matrix M(static_cast<std::size_t>(rows), static_cast<std::size_t>(D + 1));
    for (int k = 0; k <= D; ++k) {
        Poly w = pairwise_w(y, Poly::monomial(k), h);
        for (int r = 0; r <= w.degree(); ++r) M(static_cast<std::size_t>(r), static_cast<std::size_t>(k)) = w.coeff(r);
    }
    Vec b(static_cast<std::size_t>(rows), Rational(0));
    for (int r = 0; r <= rhs.degree(); ++r) b[static_cast<std::size_t>(r)] = rhs.coeff(r);
    auto sol = solve_linear(M, b);
    if (!sol) return std::nullopt;
    Poly v(sol->particular);
    // the kernel is span{y}; use it to clear the x^{deg y} coefficient
    if (!sol->null_basis.empty()) {
        const Rational c = v.coeff(dy);
        if (c != 0) v -= y * (c / y.lead());
    }
    return v;
}

/// c = 0, 1, -1, 2, -2, ... (16 values)
inline std::vector<Rational> retry_schedule()
{
    std::vector<Rational> cs{Rational(0)};
    for (long k = 1; cs.size() < 16; ++k) {
        cs.emplace_back(k);
        if (cs.size() < 16) cs.emplace_back(-k);
    }
    return cs;
}

/// C_1 Witt triple (u1 = y, u2, u3).
struct C1Triple {
    Poly u1, u2, u3;
};

/// Solves W(u1,u2) = u1(x+h/2)T, W(u1,u3) = u2(x+h/2)T, W(u2,u3) = u3(x+h/2)T
/// with u1 = y.
inline C1Triple c1_population(const Poly& T, const Poly& y, const Rational& h)
{
    if (y.is_zero() || T.is_zero()) throw Error("invalid_input", "C_1 data must be nonzero");
    const Rational half = h / 2;
    FrameSeq frame{{T.monic(), T.monic().shift(half)}, h};
    PolyTuple pair{y.monic(), y.monic().shift(half)};
    if (!is_generic(frame, pair)) throw Error("precondition", "C_1 seed is not generic");
    const Poly u1 = y.monic();
    auto u2 = fertility_solve(u1, u1.shift(half) * T, h);
    if (!u2) throw Error("precondition", "C_1 seed is not fertile");
    auto u3 = fertility_solve(u1, u2->shift(half) * T, h);
    if (!u3) throw Error("not_c1_consistent", "not C1-consistent");
    // W(u2, u3 + beta u1) = (u3 + beta u1)(x+h/2) T pins beta
    Poly lhs = pairwise_w(*u2, *u3, h) - u3->shift(half) * T;
    Poly base = u1.shift(half) * T * Rational(2);
    auto q = exact_div(lhs, base);
    if (!q || q->degree() > 0) throw Error("not_c1_consistent", "not C1-consistent");
    Poly fixed = *u3 + u1 * q->coeff(0);
    if (pairwise_w(*u2, fixed, h) != fixed.shift(half) * T) throw Error("not_c1_consistent", "not C1-consistent");
    return {u1, *u2, fixed};
}

/// u1 + c u2 + c^2 u3 / 2, or u3 at infinity.
inline Poly c1_member(const C1Triple& t, const Param& c)
{
    if (!c) return t.u3;
    return t.u1 + t.u2 * *c + t.u3 * (*c * *c / 2);
}

/// Whether p is a nonzero multiple of some member of the C_1 family.
inline bool c1_contains(const C1Triple& t, const Poly& p)
{
    if (p.is_zero()) return false;
    const int deg = std::max({t.u1.degree(), t.u2.degree(), t.u3.degree(), p.degree()});
    Matrix M(static_cast<std::size_t>(deg + 1), 3);
    const Poly* us[3] = {&t.u1, &t.u2, &t.u3};
    for (int k = 0; k < 3; ++k)
        for (int r = 0; r <= deg; ++r) M(static_cast<std::size_t>(r), static_cast<std::size_t>(k)) = us[k]->coeff(r);
    Vec b(static_cast<std::size_t>(deg + 1));
    for (int r = 0; r <= deg; ++r) b[static_cast<std::size_t>(r)] = p.coeff(r);
    auto s = solve_linear(M, b);
    if (!s) return false;
    const Vec& a = s->particular;
    return a[1] * a[1] == 2 * a[0] * a[2];
}

/// Right-hand side of the fertility equation in direction i.
inline Poly fertility_rhs(const InitialData& data, const PolyTuple& y, int i)
{
    const Rational& h = data.h;
    const Poly Ti = t_polynomials(data)[static_cast<std::size_t>(i - 1)];
    if (data.kind == Kind::B && i == data.N) {
        Poly p = tuple_at(y, i - 1).shift(h);
        return p * p * Ti;
    }
    if (data.kind == Kind::C && i == data.N) return tuple_at(y, i - 1).shift(h) * tuple_at(y, i).shift(h / 2) * Ti;
    return Ti * tuple_at(y, i - 1).shift(h) * tuple_at(y, i + 1);
}

/// Canonical partner of y_i, or nullopt when infertile in direction i.
inline std::optional<Poly> descendant_partner(const InitialData& data, const PolyTuple& y, int i)
{
    return fertility_solve(y[static_cast<std::size_t>(i - 1)], fertility_rhs(data, y, i), data.h);
}

/// C_1 family containing y_N, with weight y_{N-1}(x+h) T_N.
inline C1Triple c_middle_family(const InitialData& data, const PolyTuple& y)
{
    const int N = data.N;
    Poly T = tuple_at(y, N - 1).shift(data.h) * t_polynomials(data)[static_cast<std::size_t>(N - 1)];
    return c1_population(T, y[static_cast<std::size_t>(N - 1)], data.h);
}

/// y_i replaced by monic(partner + c y_i); c = infinity keeps y_i. For kind C
/// direction N the C_1 family is used instead: c = 0 keeps y_N and infinity
/// gives u3.
inline PolyTuple immediate_descendant(const InitialData& data, const PolyTuple& y, int i, const Param& c)
{
    if (i < 1 || i > data.N) throw Error("invalid_input", "direction out of range");
    PolyTuple out = y;
    Poly& yi = out[static_cast<std::size_t>(i - 1)];
    if (data.kind == Kind::C && i == data.N) {
        C1Triple t = c_middle_family(data, y);
        yi = c1_member(t, c).monic();
        return out;
    }
    auto p = descendant_partner(data, y, i);
    if (!p) throw Error("infertile", "tuple is infertile in direction " + std::to_string(i));
    if (!c) return out;
    Poly v = *p + yi * *c;
    if (v.is_zero()) throw Error("invalid_input", "degenerate descendant");
    yi = v.monic();
    return out;
}

inline std::string serialize_poly(const Poly& p)
{
    std::string s = "[";
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (k) s += ",";
        s += "\"" + to_string(p.coeffs()[k]) + "\"";
    }
    return s + "]";
}

inline std::string serialize_tuple(const PolyTuple& y)
{
    std::string s = "[";
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i) s += ",";
        s += serialize_poly(y[i]);
    }
    return s + "]";
}

/// A generic descendant of different degree in direction i, if any.
inline std::optional<PolyTuple> degree_changing_descendant(const InitialData& data, const PolyTuple& y, int i)
{
    const Poly& yi = y[static_cast<std::size_t>(i - 1)];
    std::vector<PolyTuple> cands;
    if (data.kind == Kind::C && i == data.N) {
        C1Triple t = c_middle_family(data, y);
        if (t.u3.degree() != yi.degree()) cands.push_back(immediate_descendant(data, y, i, std::nullopt));
        for (const auto& c : retry_schedule()) {
            Poly m = c1_member(t, c);
            if (m.degree() != yi.degree() && !m.is_zero()) cands.push_back(immediate_descendant(data, y, i, c));
        }
    } else {
        auto p = descendant_partner(data, y, i);
        if (!p) throw Error("infertile", "tuple is infertile in direction " + std::to_string(i));
        if (p->degree() < yi.degree()) {
            cands.push_back(immediate_descendant(data, y, i, Rational(0)));
        } else if (p->degree() > yi.degree()) {
            for (const auto& c : retry_schedule()) cands.push_back(immediate_descendant(data, y, i, c));
        }
    }
    if (cands.empty()) return std::nullopt;
    for (const auto& t : cands)
        if (is_generic(data, t)) return t;
    return cands.front();
}

struct PopulationAtlas {
    InitialData data;
    std::map<std::vector<int>, PolyTuple> representatives;
    /// Filled by label_atlas.
    std::map<std::vector<int>, std::vector<int>> weyl_labels;
    std::vector<std::vector<int>> unreached;
};

inline int default_max_degree(const InitialData& data, const PolyTuple& seed)
{
    long total = 0;
    for (const auto& row : data.lambda)
        for (long l : row) total += l;
    int md = 0;
    for (const auto& p : seed) md = std::max(md, p.degree());
    return static_cast<int>(total) + data.N * md + 8;
}

/// Breadth-first closure under degree-changing descendants; one
/// representative per degree vector.
inline PopulationAtlas population_atlas(const InitialData& data, const PolyTuple& seed, std::optional<int> max_degree = std::nullopt)
{
    data.validate();
    const int limit = max_degree ? *max_degree : default_max_degree(data, seed);
    PolyTuple start = monic_tuple(seed);
    PopulationAtlas atlas;
    atlas.data = data;
    atlas.representatives[degrees(start)] = start;
    std::vector<PolyTuple> level{start};
    while (!level.empty()) {
        std::map<std::vector<int>, PolyTuple> found;
        for (const auto& y : level) {
            for (int i = 1; i <= data.N; ++i) {
                auto t = degree_changing_descendant(data, y, i);
                if (!t) continue;
                auto deg = degrees(*t);
                for (int d : deg)
                    if (d > limit) throw Error("max_degree_exceeded", "maxDegree exceeded");
                if (atlas.representatives.count(deg)) continue;
                auto it = found.find(deg);
                if (it == found.end() || serialize_tuple(*t) < serialize_tuple(it->second)) found[deg] = *t;
            }
        }
        level.clear();
        for (auto& [deg, t] : found) {
            atlas.representatives[deg] = t;
            level.push_back(t);
        }
    }
    return atlas;
}

} // namespace bethe

#endif // BETHE_REPRODUCTION_HPP
