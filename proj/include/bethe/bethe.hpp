#ifndef BETHE_BETHE_HPP
#define BETHE_BETHE_HPP

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "roots.hpp"
#include "wronskian.hpp"

namespace bethe {

/// Ramification points z_s, Dynkin labels lambda[s][i], shifts b[s][i]
/// (in units of h), step h and rank N.
struct InitialData {
    Kind kind = Kind::A;
    int N = 1;
    Rational h = 1;
    std::vector<Rational> z;
    std::vector<std::vector<long>> lambda;
    std::vector<std::vector<Rational>> b;

    std::size_t n() const { return z.size(); }
    long label(std::size_t s, int i) const { return lambda[s][static_cast<std::size_t>(i - 1)]; }
    const Rational& shift(std::size_t s, int i) const { return b[s][static_cast<std::size_t>(i - 1)]; }

    void validate() const
    {
        if (N < 1) throw Error("invalid_input", "rank N must be >= 1");
        if (h == 0) throw Error("invalid_input", "h must be nonzero");
        if (lambda.size() != z.size() || b.size() != z.size())
            throw Error("invalid_input", "lambda and b need one row per point");
        for (std::size_t s = 0; s < z.size(); ++s) {
            if (lambda[s].size() != static_cast<std::size_t>(N) || b[s].size() != static_cast<std::size_t>(N))
                throw Error("invalid_input", "lambda and b rows need N entries");
            for (long l : lambda[s])
                if (l < 0) throw Error("invalid_input", "labels must be non-negative");
            for (std::size_t r = 0; r < s; ++r)
                if (z[r] == z[s]) throw Error("invalid_input", "ramification points must be distinct");
        }
    }

    /// Overwrites b with b_s^{(j)} = -sum_{i<=j} Lambda_s^{(i)}.
    void fill_sl_shift()
    {
        for (std::size_t s = 0; s < z.size(); ++s) {
            long acc = 0;
            for (int j = 1; j <= N; ++j) {
                acc += label(s, j);
                b[s][static_cast<std::size_t>(j - 1)] = Rational(-acc);
            }
        }
    }
    bool has_sl_shift() const
    {
        for (std::size_t s = 0; s < z.size(); ++s) {
            long acc = 0;
            for (int j = 1; j <= N; ++j) {
                acc += label(s, j);
                if (shift(s, j) != -acc) return false;
            }
        }
        return true;
    }

    static InitialData empty(Kind kind, int N, const Rational& h)
    {
        InitialData d;
        d.kind = kind;
        d.N = N;
        d.h = h;
        return d;
    }
};

/// (y_1..y_N); y_0 = y_{N+1} = 1 implicitly.
using PolyTuple = std::vector<Poly>;

/// y_i with the boundary convention.
inline Poly tuple_at(const PolyTuple& y, int i)
{
    if (i <= 0 || i > static_cast<int>(y.size())) return Poly::constant(1);
    return y[static_cast<std::size_t>(i - 1)];
}

inline PolyTuple ones(int N) { return PolyTuple(static_cast<std::size_t>(N), Poly::constant(1)); }

inline PolyTuple monic_tuple(PolyTuple y)
{
    for (auto& p : y) {
        if (p.is_zero()) throw Error("invalid_input", "tuple entries must be nonzero");
        p = p.monic();
    }
    return y;
}

inline std::vector<int> degrees(const PolyTuple& y)
{
    std::vector<int> d;
    for (const auto& p : y) d.push_back(p.degree());
    return d;
}

// prod_s (x - z_s + (b_s^{(i)} + offset(s)) h)
template <class Offset>
Poly shifted_linear_product(const InitialData& data, int i, Offset offset)
{
    Poly p = Poly::constant(1);
    for (std::size_t s = 0; s < data.n(); ++s)
        p = p * Poly::linear_root(data.z[s] - (data.shift(s, i) + offset(s)) * data.h);
    return p;
}

/// T_i(x) = prod_s prod_{j=1}^{Lambda_s^{(i)}} (x - z_s + b_s^{(i)} h + j h)
inline FrameSeq t_polynomials(const InitialData& data)
{
    FrameSeq f;
    f.h = data.h;
    for (int i = 1; i <= data.N; ++i) {
        Poly t = Poly::constant(1);
        for (std::size_t s = 0; s < data.n(); ++s)
            for (long j = 1; j <= data.label(s, i); ++j)
                t = t * Poly::linear_root(data.z[s] - (data.shift(s, i) + j) * data.h);
        f.entries.push_back(t);
    }
    return f;
}

struct ABC {
    Poly A;
    Poly C;
};

inline ABC abc_coefficients(const InitialData& data, const PolyTuple& y, int i)
{
    if (i < 1 || i > data.N) throw Error("invalid_input", "direction out of range");
    const Rational& h = data.h;
    Poly a = shifted_linear_product(data, i, [](std::size_t) { return Rational(0); });
    Poly c = shifted_linear_product(data, i, [&](std::size_t s) { return Rational(data.label(s, i)); });
    return {a * tuple_at(y, i - 1) * tuple_at(y, i + 1).shift(-h), c * tuple_at(y, i - 1).shift(h) * tuple_at(y, i + 1)};
}

/// Genericity of an sl_{N+1} tuple relative to a frame.
inline bool is_generic(const FrameSeq& frame, const PolyTuple& y)
{
    const Rational& h = frame.h;
    const int N = static_cast<int>(y.size());
    for (int i = 1; i <= N; ++i) {
        const Poly& yi = y[static_cast<std::size_t>(i - 1)];
        if (yi.degree() <= 0) continue;
        if (!coprime(yi, yi.derivative())) return false;
        if (!coprime(yi, yi.shift(h))) return false;
        if (!coprime(yi, tuple_at(y, i - 1).shift(h))) return false;
        if (!coprime(yi, tuple_at(y, i + 1))) return false;
        if (!coprime(yi, frame[static_cast<std::size_t>(i - 1)])) return false;
    }
    return true;
}

// ---- folding

/// y^A = (y_1..y_N, y_{N-1}(x+h), .., y_1(x+(N-1)h))
inline PolyTuple fold_bn(const PolyTuple& y, const Rational& h)
{
    if (h == 0) throw Error("zero_step", "fold needs h != 0");
    const int N = static_cast<int>(y.size());
    PolyTuple a = y;
    for (int i = 1; i <= N - 1; ++i) a.push_back(y[static_cast<std::size_t>(N - i - 1)].shift(h * i));
    return a;
}

/// y^A = (y_1..y_N, y_N(x+h/2), y_{N-1}(x+3h/2), .., y_1(x+(N-1/2)h))
inline PolyTuple fold_cn(const PolyTuple& y, const Rational& h)
{
    if (h == 0) throw Error("zero_step", "fold needs h != 0");
    const int N = static_cast<int>(y.size());
    if (N == 0) return {};
    if (y.back().degree() % 2 != 0) throw Error("odd_degree", "C_N requires even last degree");
    PolyTuple a = y;
    for (int i = 1; i <= N; ++i) a.push_back(y[static_cast<std::size_t>(N - i)].shift(h * (Rational(2 * i - 1, 2))));
    return a;
}

/// Mirrored sl_{2N} (B) or sl_{2N+1} (C) data.
inline InitialData lift_data(const InitialData& data)
{
    if (data.kind == Kind::A) throw Error("invalid_input", "lift_data needs kind B or C");
    const int N = data.N;
    const int NA = data.kind == Kind::B ? 2 * N - 1 : 2 * N;
    InitialData a = InitialData::empty(Kind::A, NA, data.h);
    a.z = data.z;
    for (std::size_t s = 0; s < data.n(); ++s) {
        std::vector<long> lam(static_cast<std::size_t>(NA));
        std::vector<Rational> sh(static_cast<std::size_t>(NA));
        for (int i = 1; i <= N; ++i) {
            lam[static_cast<std::size_t>(i - 1)] = data.label(s, i);
            sh[static_cast<std::size_t>(i - 1)] = data.shift(s, i);
        }
        if (data.kind == Kind::B) {
            for (int i = 1; i <= N - 1; ++i) {
                lam[static_cast<std::size_t>(2 * N - i - 1)] = data.label(s, i);
                sh[static_cast<std::size_t>(2 * N - i - 1)] = data.shift(s, i) - (i - N);
            }
        } else {
            for (int i = 1; i <= N; ++i) {
                lam[static_cast<std::size_t>(2 * N + 1 - i - 1)] = data.label(s, i);
                sh[static_cast<std::size_t>(2 * N + 1 - i - 1)] = data.shift(s, i) - (Rational(i - N) - Rational(1, 2));
            }
        }
        a.lambda.push_back(lam);
        a.b.push_back(sh);
    }
    return a;
}

inline PolyTuple fold(Kind kind, const PolyTuple& y, const Rational& h)
{
    switch (kind) {
    case Kind::A: return y;
    case Kind::B: return fold_bn(y, h);
    case Kind::C: return fold_cn(y, h);
    }
    return y;
}

/// Genericity of a tuple of any kind (B/C through the folded tuple).
inline bool is_generic(const InitialData& data, const PolyTuple& y)
{
    if (data.kind == Kind::A) return is_generic(t_polynomials(data), y);
    if (data.kind == Kind::C && !y.empty() && y.back().degree() % 2 != 0) return false;
    return is_generic(t_polynomials(lift_data(data)), fold(data.kind, y, data.h));
}

struct VerifyResult {
    bool ok = false;
    std::string reason; // "", "non-generic", "not-divisible"
};

inline VerifyResult verify_critical(const InitialData& data, const PolyTuple& tuple)
{
    if (data.kind != Kind::A) {
        if (data.kind == Kind::C && !tuple.empty() && tuple.back().degree() % 2 != 0)
            return {false, "odd-degree"};
        return verify_critical(lift_data(data), fold(data.kind, tuple, data.h));
    }
    if (static_cast<int>(tuple.size()) != data.N) throw Error("dimension_mismatch", "tuple length differs from N");
    for (const auto& p : tuple)
        if (p.is_zero()) throw Error("invalid_input", "tuple entries must be nonzero");
    if (!is_generic(t_polynomials(data), tuple)) return {false, "non-generic"};
    for (int i = 1; i <= data.N; ++i) {
        const Poly& yi = tuple[static_cast<std::size_t>(i - 1)];
        if (yi.degree() <= 0) continue;
        auto [A, C] = abc_coefficients(data, tuple, i);
        if (!yi.divides(A * yi.shift(data.h) + C * yi.shift(-data.h))) return {false, "not-divisible"};
    }
    return {true, ""};
}

/// Dynkin labels of sum_s Lambda_s - sum_i l_i alpha_i.
inline std::vector<long> weight_at_infinity(const InitialData& data, const std::vector<int>& degs)
{
    if (static_cast<int>(degs.size()) != data.N) throw Error("dimension_mismatch", "need N degrees");
    std::vector<long> l(degs.begin(), degs.end());
    for (long d : l)
        if (d < 0) throw Error("invalid_input", "degrees must be non-negative");
    if (data.kind == Kind::C) {
        if (l.back() % 2 != 0) throw Error("odd_degree", "C_N requires even last degree");
        l.back() /= 2;
    }
    auto a = cartan_matrix(data.kind, data.N);
    std::vector<long> w(static_cast<std::size_t>(data.N), 0);
    for (int j = 1; j <= data.N; ++j) {
        long v = 0;
        for (std::size_t s = 0; s < data.n(); ++s) v += data.label(s, j);
        for (int i = 1; i <= data.N; ++i) v -= l[static_cast<std::size_t>(i - 1)] * a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
        w[static_cast<std::size_t>(j - 1)] = v;
    }
    return w;
}

struct Sl2Solution {
    std::vector<Rational> roots;
    int count = 0;
};

/// Single-root sl_2 solutions: the roots of A - C.
inline Sl2Solution solve_sl2_l1(const InitialData& data)
{
    if (data.N != 1) throw Error("invalid_input", "solve_sl2_l1 needs N = 1");
    auto [A, C] = abc_coefficients(data, ones(1), 1);
    Poly diff = A - C;
    if (diff.is_zero()) throw Error("degenerate", "A - C vanishes identically");
    return {rational_roots(diff), diff.degree()};
}

} // namespace bethe

#endif // BETHE_BETHE_HPP
