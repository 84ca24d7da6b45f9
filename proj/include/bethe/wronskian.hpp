#ifndef BETHE_WRONSKIAN_HPP
#define BETHE_WRONSKIAN_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "poly.hpp"

namespace bethe {

/// Monic sequence T_1..T_N with its step.
struct FrameSeq {
    std::vector<Poly> entries;
    Rational h = 1;

    std::size_t size() const { return entries.size(); }
    const Poly& operator[](std::size_t i) const { return entries[i]; }

    static FrameSeq trivial(std::size_t n, const Rational& h)
    {
        return {std::vector<Poly>(n, Poly::constant(1)), h};
    }
    friend bool operator==(const FrameSeq& a, const FrameSeq& b)
    {
        return a.h == b.h && a.entries == b.entries;
    }
};

/// Determinant of a square polynomial matrix by Bareiss elimination.
inline Poly poly_det(std::vector<std::vector<Poly>> m)
{
    const std::size_t n = m.size();
    if (n == 0) return Poly::constant(1);
    Poly prev = Poly::constant(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return {};
            std::swap(m[p], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = divmod(t, prev).first;
            }
        }
        prev = m[k][k];
    }
    Poly d = m[n - 1][n - 1];
    return negate ? -d : d;
}

/// det(g_i(x + (j-1)h)); the empty Wronskian is 1.
inline Poly wronskian(const std::vector<Poly>& gs, const Rational& h)
{
    if (h == 0) throw Error("zero_step", "Wronskian needs h != 0");
    const std::size_t s = gs.size();
    std::vector<std::vector<Poly>> m(s, std::vector<Poly>(s));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) m[i][j] = gs[i].shift(h * static_cast<long>(j));
    return poly_det(std::move(m));
}

/// u(x) v(x+h) - u(x+h) v(x)
inline Poly pairwise_w(const Poly& u, const Poly& v, const Rational& h)
{
    if (h == 0) throw Error("zero_step", "Wronskian needs h != 0");
    return u * v.shift(h) - u.shift(h) * v;
}

/// U_i = prod_{k=1}^{i-1} prod_{j=1}^{i-k} T_k(x + (j-1)h)
inline Poly frame_product(const FrameSeq& frame, std::size_t i)
{
    if (i > frame.size() + 1) throw Error("dimension_mismatch", "frame too short for Wronskian order");
    Poly u = Poly::constant(1);
    for (std::size_t k = 1; k + 1 <= i; ++k)
        for (std::size_t j = 1; j <= i - k; ++j) u = u * frame[k - 1].shift(frame.h * static_cast<long>(j - 1));
    return u;
}

/// W(gs) / U_{|gs|}, or nullopt when the division is not exact.
inline std::optional<Poly> divided_wronskian(const std::vector<Poly>& gs, const FrameSeq& frame)
{
    return exact_div(wronskian(gs, frame.h), frame_product(frame, gs.size()));
}

/// Like divided_wronskian but throws on a remainder.
inline Poly divided_wronskian_or_throw(const std::vector<Poly>& gs, const FrameSeq& frame)
{
    auto w = divided_wronskian(gs, frame);
    if (!w) throw Error("non_divisible", "Wronskian not divisible by frame product");
    return *w;
}

enum class Identity { B1_one_in_wronskian, B2_delta_expansion, B3_common_factor, B4_wr_id_2, B5_wr_id_1 };

inline std::string identity_name(Identity id)
{
    switch (id) {
    case Identity::B1_one_in_wronskian: return "B1_one_in_wronskian";
    case Identity::B2_delta_expansion: return "B2_delta_expansion";
    case Identity::B3_common_factor: return "B3_common_factor";
    case Identity::B4_wr_id_2: return "B4_wr_id_2";
    case Identity::B5_wr_id_1: return "B5_wr_id_1";
    }
    return "?";
}

namespace detail {

inline int perm_sign(const std::vector<int>& p)
{
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) sign = -sign;
    return sign;
}

// Alternating sum over j and permutations of {0..s} \ {j}.
inline Poly delta_expansion(const std::vector<Poly>& gs, const Rational& h)
{
    const int s = static_cast<int>(gs.size());
    Poly total;
    for (int j = 0; j <= s; ++j) {
        std::vector<int> om;
        for (int t = 0; t <= s; ++t)
            if (t != j) om.push_back(t);
        do {
            Poly term = Poly::constant((j % 2 == 0 ? 1 : -1) * perm_sign(om));
            for (int i = 0; i < s; ++i) term = term * gs[static_cast<std::size_t>(i)].shift(h * om[static_cast<std::size_t>(i)]);
            total += term;
        } while (std::next_permutation(om.begin(), om.end()));
    }
    return total;
}

} // namespace detail

/// Evaluates both sides of the chosen Wronskian identity exactly.
/// B1, B2 use gs = (g_1..g_s); B3 also uses f; B4, B5 use gs = (g_1..g_{s+1})
/// and 0 <= k <= s.
inline bool check_identity(Identity id, const std::vector<Poly>& gs, const Poly& f, int k, const Rational& h)
{
    auto delta = [&](const Poly& g) { return g.shift(h) - g; };
    switch (id) {
    case Identity::B1_one_in_wronskian: {
        std::vector<Poly> lhs{Poly::constant(1)};
        lhs.insert(lhs.end(), gs.begin(), gs.end());
        std::vector<Poly> dg;
        for (const auto& g : gs) dg.push_back(delta(g));
        return wronskian(lhs, h) == wronskian(dg, h);
    }
    case Identity::B2_delta_expansion: {
        std::vector<Poly> dg;
        for (const auto& g : gs) dg.push_back(delta(g));
        return wronskian(dg, h) == detail::delta_expansion(gs, h);
    }
    case Identity::B3_common_factor: {
        std::vector<Poly> fg;
        for (const auto& g : gs) fg.push_back(f * g);
        Poly rhs = wronskian(gs, h);
        for (std::size_t j = 0; j < gs.size(); ++j) rhs = rhs * f.shift(h * static_cast<long>(j));
        return wronskian(fg, h) == rhs;
    }
    case Identity::B4_wr_id_2:
    case Identity::B5_wr_id_1: break;
    }

    if (gs.empty()) throw Error("dimension_mismatch", "identity needs s+1 >= 1 functions");
    const int s = static_cast<int>(gs.size()) - 1;
    if (k < 0 || k > s) throw Error("dimension_mismatch", "need 0 <= k <= s");
    const std::vector<Poly> head(gs.begin(), gs.begin() + (s - k));
    const Poly w_head = wronskian(head, h);
    const Poly w_all = wronskian(gs, h);

    if (id == Identity::B4_wr_id_2) {
        std::vector<Poly> vs;
        for (int i = s - k + 1; i <= s + 1; ++i) {
            std::vector<Poly> v = head;
            v.push_back(gs[static_cast<std::size_t>(i - 1)]);
            vs.push_back(wronskian(v, h));
        }
        Poly rhs = w_all;
        for (int j = 1; j <= k; ++j) rhs = rhs * w_head.shift(h * j);
        return wronskian(vs, h) == rhs;
    }

    std::vector<Poly> ws;
    for (int i = s + 1; i >= s - k + 1; --i) {
        std::vector<Poly> rest;
        for (int t = 0; t <= s; ++t)
            if (t != i - 1) rest.push_back(gs[static_cast<std::size_t>(t)]);
        ws.push_back(wronskian(rest, h));
    }
    Poly rhs = w_head.shift(h * k);
    for (int j = 1; j <= k; ++j) rhs = rhs * w_all.shift(h * (j - 1));
    return wronskian(ws, h) == rhs;
}

} // namespace bethe

#endif // BETHE_WRONSKIAN_HPP
