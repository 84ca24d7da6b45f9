#ifndef BETHE_FUNDAMENTAL_HPP
#define BETHE_FUNDAMENTAL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bethe.hpp"
#include "matrix.hpp"
#include "ratfunc.hpp"
#include "repcount.hpp"
#include "reproduction.hpp"
#include "wronskian.hpp"

namespace bethe {

inline int max_degree(const std::vector<Poly>& ps)
{
    int d = -1;
    for (const auto& p : ps) d = std::max(d, p.degree());
    return d;
}

/// Rows = polynomials, column k = coefficient of x^{top-k} (so rref pivots
/// are leading terms).
inline Matrix coefficient_rows(const std::vector<Poly>& ps, int top)
{
    Matrix m(ps.size(), static_cast<std::size_t>(top + 1));
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (int k = 0; k <= top; ++k) m(i, static_cast<std::size_t>(k)) = ps[i].coeff(top - k);
    return m;
}

inline std::size_t span_rank(const std::vector<Poly>& ps)
{
    if (ps.empty()) return 0;
    return rank(coefficient_rows(ps, std::max(max_degree(ps), 0)));
}

/// Ordered basis of a polynomial space with its step.
struct PolySpace {
    std::vector<Poly> basis;
    Rational h = 1;

    std::size_t dim() const { return basis.size(); }

    void check_independent() const
    {
        if (span_rank(basis) != basis.size()) throw Error("dependent_basis", "basis is linearly dependent");
    }

    /// Reduced echelon basis with monic leading terms, ascending degree.
    std::vector<Poly> echelon() const
    {
        if (basis.empty()) return {};
        const int top = std::max(max_degree(basis), 0);
        Matrix m = coefficient_rows(basis, top);
        auto piv = rref(m);
        std::vector<Poly> out;
        for (std::size_t r = 0; r < piv.size(); ++r) {
            std::vector<Rational> c(static_cast<std::size_t>(top + 1));
            for (int k = 0; k <= top; ++k) c[static_cast<std::size_t>(top - k)] = m(r, static_cast<std::size_t>(k));
            out.emplace_back(std::move(c));
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    bool same_span(const PolySpace& o) const { return echelon() == o.echelon(); }

    bool contains(const Poly& p) const
    {
        auto b = basis;
        b.push_back(p);
        return span_rank(b) == span_rank(basis);
    }

    /// {p(x + a) : p in V}
    PolySpace shifted(const Rational& a) const
    {
        PolySpace s{{}, h};
        for (const auto& p : basis) s.basis.push_back(p.shift(a));
        return s;
    }

    /// Coordinates of p in this basis (throws when p is outside).
    Vec coordinates(const Poly& p) const
    {
        const int top = std::max(max_degree(basis), p.degree());
        Matrix m(static_cast<std::size_t>(std::max(top, 0) + 1), basis.size());
        Vec rhs(m.rows());
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (int k = 0; k <= top; ++k) m(static_cast<std::size_t>(k), j) = basis[j].coeff(k);
        for (int k = 0; k <= top; ++k) rhs[static_cast<std::size_t>(k)] = p.coeff(k);
        auto s = solve_linear(m, rhs);
        if (!s) throw Error("not_in_space", "polynomial is outside the space");
        return s->particular;
    }
};

inline PolySpace polynomials_up_to(int N, const Rational& h)
{
    PolySpace s{{}, h};
    for (int k = 0; k <= N; ++k) s.basis.push_back(Poly::monomial(k));
    return s;
}

/// F_i = span of the first i basis vectors.
struct Flag {
    std::vector<Poly> basis;
    Rational h = 1;

    std::size_t dim() const { return basis.size(); }
    std::vector<Poly> prefix(std::size_t i) const { return {basis.begin(), basis.begin() + static_cast<long>(i)}; }
    PolySpace space() const { return {basis, h}; }
};

/// The degree flag of V: F_i = elements of the i smallest degrees.
inline Flag infinity_flag(const PolySpace& v) { return {v.echelon(), v.h}; }

/// Order-k difference operator (d - f_1)...(d - f_k), d g = g(x + h).
struct DifferenceOperator {
    std::vector<RationalFunction> factors;
    Rational h = 1;
};

/// Factors of D(y) from left (i = 0) to right (i = N).
inline DifferenceOperator fundamental_operator(const InitialData& data, const PolyTuple& tuple)
{
    if (data.kind != Kind::A) return fundamental_operator(lift_data(data), fold(data.kind, tuple, data.h));
    const int N = data.N;
    if (static_cast<int>(tuple.size()) != N) throw Error("dimension_mismatch", "tuple length differs from N");
    const Rational& h = data.h;
    const FrameSeq T = t_polynomials(data);
    DifferenceOperator op{{}, h};
    for (int i = 0; i <= N; ++i) {
        const Poly a = tuple_at(tuple, N + 1 - i);
        const Poly b = tuple_at(tuple, N - i);
        RationalFunction f(a.shift(h) * b, a * b.shift(h));
        for (int s = 1; s <= N - i; ++s) {
            const Poly& Ts = T[static_cast<std::size_t>(s - 1)];
            f = f * RationalFunction(Ts.shift(h * (N - i - s + 1)), Ts.shift(h * (N - i - s)));
        }
        op.factors.push_back(f);
    }
    return op;
}

inline RationalFunction operator_apply(const DifferenceOperator& op, const RationalFunction& g0)
{
    RationalFunction g = g0;
    for (auto it = op.factors.rbegin(); it != op.factors.rend(); ++it) g = g.shift(op.h) - (*it) * g;
    return g;
}

inline RationalFunction operator_apply(const DifferenceOperator& op, const Poly& p)
{
    return operator_apply(op, RationalFunction(p));
}

/// Coefficients of d^k for k = order .. 0 (leading coefficient 1).
inline std::vector<RationalFunction> operator_normal_form(const DifferenceOperator& op)
{
    // ascending: a[k] multiplies d^k
    std::vector<RationalFunction> a{RationalFunction(Rational(1))};
    for (auto it = op.factors.rbegin(); it != op.factors.rend(); ++it) {
        std::vector<RationalFunction> next(a.size() + 1, RationalFunction());
        for (std::size_t k = 0; k < a.size(); ++k) {
            next[k + 1] = next[k + 1] + a[k].shift(op.h);
            next[k] = next[k] - (*it) * a[k];
        }
        a = std::move(next);
    }
    std::reverse(a.begin(), a.end());
    return a;
}

/// Descends from the tuple in directions i, i-1, .., 1 choosing generic
/// members; returns the final first coordinate.
inline Poly chained_descent(const InitialData& data, PolyTuple cur, int i)
{
    const auto schedule = retry_schedule();
    for (int j = i; j >= 1; --j) {
        std::optional<PolyTuple> pick;
        for (const auto& c : schedule) {
            PolyTuple cand = immediate_descendant(data, cur, j, c);
            if (is_generic(data, cand)) {
                pick = std::move(cand);
                break;
            }
        }
        if (!pick) throw Error("genericity_exhausted", "genericity retries exhausted");
        cur = std::move(*pick);
    }
    return cur[0];
}

/// u_1 = y_1 and u_{i+1} from chained descents, scaled so that
/// W(u_1..u_i) / U_i = y_i exactly (y_{N+1} = 1).
inline PolySpace fundamental_basis(const InitialData& data, const PolyTuple& tuple)
{
    if (data.kind != Kind::A) throw Error("invalid_input", "fundamental_basis needs kind A data");
    auto v = verify_critical(data, tuple);
    if (!v.ok) throw Error("not_critical", "tuple is not a critical point (" + v.reason + ")");
    const FrameSeq frame = t_polynomials(data);
    const PolyTuple y = monic_tuple(tuple);
    PolySpace space{{y[0]}, data.h};
    for (int i = 1; i <= data.N; ++i) {
        space.basis.push_back(chained_descent(data, y, i));
        Poly w = divided_wronskian_or_throw(space.basis, frame);
        const Poly target = tuple_at(y, i + 1);
        if (w.is_zero()) throw Error("internal", "dependent fundamental basis");
        Rational scale = target.lead() / w.lead();
        space.basis.back() *= scale;
        if (w * scale != target) throw Error("internal", "Wronskian of fundamental basis is not y_i");
    }
    return space;
}

namespace detail {

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F f)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

/// Frame T_1..T_N of an (N+1)-dimensional space, or nullopt when the
/// recursive division fails (sampling missed the true gcd).
inline std::optional<FrameSeq> frame_of_space(const PolySpace& space, int samples = 5, std::uint64_t seed = 0)
{
    const std::size_t dim = space.dim();
    if (dim < 2) throw Error("invalid_input", "frame needs dim >= 2");
    space.check_independent();
    Poly g;
    for (const auto& p : space.basis) g = g.is_zero() && p.is_zero() ? g : gcd(g, p);
    if (g.degree() > 0) throw Error("base_point", "base point");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-9, 9);
    auto random_vector = [&] {
        Poly p;
        for (const auto& b : space.basis) p += b * Rational(coef(rng));
        return p;
    };

    const Rational& h = space.h;
    FrameSeq frame{{}, h};
    for (std::size_t i = 2; i <= dim; ++i) {
        Poly u;
        auto absorb = [&](const std::vector<Poly>& gs) {
            Poly w = wronskian(gs, h);
            if (!w.is_zero()) u = u.is_zero() ? w.monic() : gcd(u, w);
        };
        detail::for_each_subset(dim, i, [&](const std::vector<std::size_t>& idx) {
            std::vector<Poly> gs;
            for (auto k : idx) gs.push_back(space.basis[k]);
            absorb(gs);
        });
        for (int s = 0; s < samples; ++s) {
            std::vector<Poly> gs;
            for (std::size_t k = 0; k < i; ++k) gs.push_back(random_vector());
            absorb(gs);
        }
        // U_i = S * T_{i-1}, S built from the T_k already found
        Poly S = Poly::constant(1);
        for (std::size_t k = 1; k + 2 <= i; ++k)
            for (std::size_t j = 1; j <= i - k; ++j) S = S * frame.entries[k - 1].shift(h * static_cast<long>(j - 1));
        auto t = exact_div(u, S);
        if (!t) return std::nullopt;
        frame.entries.push_back(t->monic());
    }
    return frame;
}

/// (y_1..y_N) with y_i = monic(W(u_1..u_i) / U_i).
inline PolyTuple generating_morphism(const Flag& flag, const FrameSeq& frame)
{
    const std::size_t N = flag.dim() - 1;
    if (frame.size() < N) throw Error("dimension_mismatch", "frame too short");
    PolyTuple y;
    for (std::size_t i = 1; i <= N; ++i) {
        auto w = divided_wronskian(flag.prefix(i), frame);
        if (!w || w->is_zero()) throw Error("flag_incompatible", "flag incompatible with frame");
        y.push_back(w->monic());
    }
    return y;
}

/// w_{j+1} = min i with F_{j+1} inside F_j + F0_i.
inline std::vector<int> bruhat_position(const Flag& flag, const Flag& reference)
{
    const std::size_t n = flag.dim();
    if (reference.dim() != n) throw Error("dimension_mismatch", "flags of different dimension");
    std::vector<int> w;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 1; i <= n; ++i) {
            auto a = flag.prefix(j);
            auto r = reference.prefix(i);
            a.insert(a.end(), r.begin(), r.end());
            auto b = a;
            b.push_back(flag.basis[j]);
            if (span_rank(a) == span_rank(b)) {
                w.push_back(static_cast<int>(i));
                break;
            }
        }
    }
    return w;
}

struct SchubertPosition {
    std::vector<int> a;
    std::optional<Rational> point; // nullopt = infinity
    int d = 0;
    int size() const
    {
        int s = 0;
        for (int v : a) s += v;
        return s;
    }
};

/// Cell of V with respect to the flag F(z) (or F(infinity)) of C_d[x].
inline SchubertPosition schubert_position(const PolySpace& space, const std::optional<Rational>& point, int d)
{
    const int dimV = static_cast<int>(space.dim());
    const int N = dimV - 1;
    if (max_degree(space.basis) > d || dimV > d + 1) throw Error("invalid_input", "space does not fit in C_d[x]");
    space.check_independent();
    // dims[j] = dim(V meet F_j), j = 0..d+1
    std::vector<int> dims(static_cast<std::size_t>(d + 2), 0);
    if (!point) {
        auto e = space.echelon();
        for (int j = 0; j <= d + 1; ++j)
            for (const auto& p : e)
                if (p.degree() < j) ++dims[static_cast<std::size_t>(j)];
    } else {
        for (int j = 0; j <= d + 1; ++j) {
            const int m = d + 1 - j;
            Matrix ev(static_cast<std::size_t>(dimV), static_cast<std::size_t>(m));
            for (int r = 0; r < dimV; ++r)
                for (int c = 0; c < m; ++c)
                    ev(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = space.basis[static_cast<std::size_t>(r)](*point + space.h * c);
            dims[static_cast<std::size_t>(j)] = dimV - static_cast<int>(m > 0 ? rank(ev) : 0);
        }
    }
    SchubertPosition sp{{}, point, d};
    for (int i = 1; i <= dimV; ++i) {
        int m = 0;
        while (dims[static_cast<std::size_t>(m)] < i) ++m;
        sp.a.push_back(d - N + i - m);
    }
    return sp;
}

struct ExpectedRamification {
    std::vector<SchubertPosition> at_z;
    SchubertPosition at_infinity;
};

/// Ramification predicted from the data and the degrees of a population
/// member (requires b = -partial sums of Lambda and z differences off hZ).
inline ExpectedRamification expected_ramification(const InitialData& data, const std::vector<int>& degs, int d)
{
    if (data.kind != Kind::A) throw Error("invalid_input", "ramification needs kind A data");
    if (!data.has_sl_shift() || !z_generic(data)) throw Error("hypotheses", "shifts or points outside the supported range");
    const int N = data.N;
    RootSystem rs(Kind::A, N);
    Weight w = weight_at_infinity(data, degs);
    auto [plus_rho, sign] = rs.dominant_conjugate(add(w, rs.rho()));
    (void)sign;
    Weight dom = sub(plus_rho, rs.rho());
    if (!RootSystem::is_dominant(dom)) throw Error("hypotheses", "weight at infinity lies on a shifted wall");
    auto l = degrees_for_weight(data, dom);
    if (!l) throw Error("hypotheses", "dominant weight at infinity is not attainable");
    ExpectedRamification er;
    for (std::size_t s = 0; s < data.n(); ++s) {
        SchubertPosition sp{{}, data.z[s], d};
        for (int i = 1; i <= N + 1; ++i) {
            int a = 0;
            for (int j = 1; j <= N + 1 - i; ++j) a += static_cast<int>(data.label(s, j));
            sp.a.push_back(a);
        }
        er.at_z.push_back(sp);
    }
    er.at_infinity = {{}, std::nullopt, d};
    for (int i = 1; i <= N + 1; ++i) {
        long a = d - N - (*l)[0];
        for (int j = 1; j <= i - 1; ++j) a -= dom[static_cast<std::size_t>(j - 1)];
        er.at_infinity.a.push_back(static_cast<int>(a));
    }
    return er;
}

} // namespace bethe

#endif // BETHE_FUNDAMENTAL_HPP
