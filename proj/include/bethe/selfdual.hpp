#ifndef BETHE_SELFDUAL_HPP
#define BETHE_SELFDUAL_HPP

#include <optional>
#include <vector>

#include "fundamental.hpp"
#include "matrix.hpp"
#include "wronskian.hpp"

namespace bethe {

/// T^dagger_i(x) = T_{N+1-i}(x + (i-1)h)
inline FrameSeq dual_frame(const FrameSeq& frame)
{
    const std::size_t N = frame.size();
    FrameSeq d{{}, frame.h};
    for (std::size_t i = 1; i <= N; ++i) d.entries.push_back(frame[N - i].shift(frame.h * static_cast<long>(i - 1)));
    return d;
}

inline std::vector<Poly> drop(const std::vector<Poly>& v, std::size_t k)
{
    std::vector<Poly> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (i != k) out.push_back(v[i]);
    return out;
}

inline Rational selfdual_offset(std::size_t dim, const Rational& h)
{
    return Rational(static_cast<long>(dim) - 2) * h / 2;
}

/// Span of the divided Wronskians of all N-subsets of the basis.
inline PolySpace dual_space(const PolySpace& space, const FrameSeq& frame)
{
    const std::size_t dim = space.dim();
    if (dim < 2) throw Error("invalid_input", "dual space needs dim >= 2");
    PolySpace d{{}, space.h};
    for (std::size_t k = dim; k-- > 0;) d.basis.push_back(divided_wronskian_or_throw(drop(space.basis, k), frame));
    if (span_rank(d.basis) != dim) throw Error("dimension_defect", "dual space has the wrong dimension");
    return d;
}

inline bool frame_is_selfdual(const FrameSeq& frame)
{
    const std::size_t N = frame.size();
    const Rational off = selfdual_offset(N + 1, frame.h);
    for (std::size_t i = 1; i <= N; ++i)
        if (frame[i - 1] != frame[N - i].shift(frame.h * static_cast<long>(i - 1) - off)) return false;
    return true;
}

/// V^dagger = {p(x + (N-1)h/2) : p in V}
inline bool is_selfdual(const PolySpace& space, const FrameSeq& frame)
{
    if (frame.size() + 1 != space.dim()) throw Error("dimension_mismatch", "frame length must be dim - 1");
    if (!frame_is_selfdual(frame)) return false;
    return dual_space(space, frame).same_span(space.shifted(selfdual_offset(space.dim(), space.h)));
}

/// Gram matrix G[j][m] = (u_j, u_m) of the canonical form.
inline Matrix canonical_form(const PolySpace& space, const FrameSeq& frame)
{
    if (!is_selfdual(space, frame)) throw Error("not_selfdual", "space is not h-selfdual");
    const std::size_t n = space.dim();
    const Rational off = selfdual_offset(n, space.h);
    const Poly full = divided_wronskian_or_throw(space.basis, frame);
    if (full.degree() != 0) throw Error("internal", "full divided Wronskian is not a nonzero constant");
    // v_k pairs only with u_k: (u_k, v_k) = (-1)^{k} full (0-based)
    PolySpace vs{{}, space.h};
    for (std::size_t k = 0; k < n; ++k) vs.basis.push_back(divided_wronskian_or_throw(drop(space.basis, k), frame).shift(-off));
    Matrix G(n, n);
    for (std::size_t m = 0; m < n; ++m) {
        Vec c = vs.coordinates(space.basis[m]);
        for (std::size_t j = 0; j < n; ++j) G(j, m) = c[j] * full.coeff(0) * (j % 2 == 0 ? 1 : -1);
    }
    const bool ok = n % 2 == 1 ? G.is_symmetric() : G.is_skew();
    if (!ok) throw Error("internal", "canonical form has the wrong parity");
    return G;
}

/// u_i(x) = W^dagger(basis without u_{N+2-i})(x - (N-1)h/2) for all i.
inline bool check_witt(const std::vector<Poly>& basis, const FrameSeq& frame, const Rational& h)
{
    const std::size_t n = basis.size();
    if (n == 0 || frame.size() + 1 != n) throw Error("dimension_mismatch", "frame length must be dim - 1");
    FrameSeq f{frame.entries, h};
    const Rational off = selfdual_offset(n, h);
    for (std::size_t i = 1; i <= n; ++i) {
        auto w = divided_wronskian(drop(basis, n - i), f);
        if (!w || w->shift(-off) != basis[i - 1]) return false;
    }
    return true;
}

/// Rational n-th root, if one exists (positive root for even n).
inline std::optional<Rational> rational_root(const Rational& q, unsigned long n)
{
    if (n == 1) return q;
    if (q < 0 && n % 2 == 0) return std::nullopt;
    auto iroot = [n](Integer a) -> std::optional<Integer> {
        bool neg = a < 0;
        if (neg) a = -a;
        Integer r;
        if (!mpz_root(r.get_mpz_t(), a.get_mpz_t(), n)) return std::nullopt;
        return neg ? Integer(-r) : r;
    };
    auto num = iroot(q.get_num());
    auto den = iroot(q.get_den());
    if (!num || !den) return std::nullopt;
    Rational r(*num, *den);
    r.canonicalize();
    return r;
}

/// Witt basis: triangular reduction of the degree-echelon basis to a
/// hyperbolic basis, then rescaling.
inline std::vector<Poly> witt_basis(const PolySpace& space, const FrameSeq& frame)
{
    const std::vector<Poly> e = space.echelon();
    const std::size_t n = e.size();
    const PolySpace es{e, space.h};
    const Matrix G = canonical_form(es, frame);
    const Rational c = divided_wronskian_or_throw(e, frame).coeff(0);
    auto fail = [] { return Error("witt_failed", "Witt normalization failed"); };
    auto form = [&](const Vec& a, const Vec& b) {
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (a[j] != 0 && b[k] != 0) s += a[j] * G(j, k) * b[k];
        return s;
    };
    for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t k = 1; j + k <= n; ++k)
            if (G(j - 1, k - 1) != 0) throw fail();

    // coordinates of f_1..f_n in the echelon basis, 0-based; partner of i is n-1-i
    std::vector<Vec> f;
    for (std::size_t i = 0; i < n; ++i) {
        Vec fi(n, Rational(0));
        fi[i] = 1;
        const std::size_t p = n - 1 - i;
        for (std::size_t m = 0; m < i; ++m) {
            const std::size_t j = n - 1 - m;
            if (j >= i) continue;
            Rational g = form(f[j], f[m]);
            if (g == 0) throw fail();
            Rational t = -form(fi, f[m]) / g;
            for (std::size_t k = 0; k < n; ++k) fi[k] += t * f[j][k];
        }
        if (p < i && n % 2 == 1) {
            // symmetric form: make f_i isotropic via its partner
            Rational bp = form(fi, f[p]);
            if (bp == 0) throw fail();
            Rational t = -form(fi, fi) / (2 * bp);
            for (std::size_t k = 0; k < n; ++k) fi[k] += t * f[p][k];
        }
        f.push_back(fi);
    }

    // rescale: lambda_k lambda_{k'} g_k = (-1)^{k-1} (prod lambda) c
    const std::size_t r = n / 2;
    std::vector<Rational> s(r);
    for (std::size_t k = 0; k < r; ++k) {
        Rational g = form(f[k], f[n - 1 - k]);
        if (g == 0) throw fail();
        s[k] = (k % 2 == 0 ? c : Rational(-c)) / g;
    }
    Rational prod_s = 1;
    for (const auto& v : s) prod_s *= v;
    std::vector<Rational> lambda(n, Rational(1));
    Rational Q; // product of the pair products mu_k
    Rational mid = 1;
    if (n % 2 == 0) {
        if (r == 1) {
            if (prod_s != 1) throw fail();
            Q = 1;
        } else {
            auto root = rational_root(1 / prod_s, r - 1);
            if (!root) throw fail();
            Q = *root;
        }
        for (std::size_t k = 0; k < r; ++k) {
            Rational mu = s[k] * Q;
            Rational lk = 1 / e[k].lead();
            lambda[k] = lk;
            lambda[n - 1 - k] = mu / lk;
        }
    } else {
        const std::size_t m = r;
        Rational gm = form(f[m], f[m]);
        if (gm == 0) throw fail();
        Rational sigma = (m % 2 == 0 ? c : Rational(-c)) / gm;
        Rational sr = 1;
        for (std::size_t k = 0; k < r; ++k) sr *= sigma;
        auto root = rational_root(1 / (sr * prod_s), 2 * r - 1);
        if (!root) throw fail();
        Q = *root;
        mid = sigma * Q;
        lambda[m] = mid;
        for (std::size_t k = 0; k < r; ++k) {
            Rational mu = s[k] * mid * Q;
            Rational lk = 1 / e[k].lead();
            lambda[k] = lk;
            lambda[n - 1 - k] = mu / lk;
        }
    }
    std::vector<Poly> out;
    for (std::size_t i = 0; i < n; ++i) {
        Poly p;
        for (std::size_t k = 0; k < n; ++k) p += e[k] * f[i][k];
        out.push_back(p * lambda[i]);
    }
    if (!check_witt(out, frame, space.h)) throw fail();
    return out;
}

/// Orthogonality route: G(u_j, u_k) = 0 whenever j + k <= N + 1.
inline bool is_isotropic_flag_orthogonal(const Flag& flag, const FrameSeq& frame)
{
    const Matrix G = canonical_form(flag.space(), frame);
    const std::size_t n = flag.dim();
    for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t k = 1; j + k <= n; ++k)
            if (G(j - 1, k - 1) != 0) return false;
    return true;
}

/// Wronskian route: W^dagger(u_1..u_i)(x) = c_i W^dagger(u_1..u_{N+1-i})(x + (i-1)h - (N-1)h/2).
inline bool is_isotropic_flag_wronskian(const Flag& flag, const FrameSeq& frame)
{
    const std::size_t n = flag.dim();
    const std::size_t N = n - 1;
    const Rational off = selfdual_offset(n, flag.h);
    FrameSeq f{frame.entries, flag.h};
    for (std::size_t i = 1; i <= N; ++i) {
        Poly a = divided_wronskian_or_throw(flag.prefix(i), f);
        Poly b = divided_wronskian_or_throw(flag.prefix(N + 1 - i), f).shift(flag.h * static_cast<long>(i - 1) - off);
        if (a.is_zero() || b.is_zero() || a.degree() != b.degree()) return false;
        if (a * b.lead() != b * a.lead()) return false;
    }
    return true;
}

inline bool is_isotropic_flag(const Flag& flag, const FrameSeq& frame)
{
    const bool w = is_isotropic_flag_wronskian(flag, frame);
    const bool o = is_isotropic_flag_orthogonal(flag, frame);
    if (w != o) throw Error("internal", "isotropy criteria disagree");
    return w;
}

/// Action of exp(c X_i) (or its limit at infinity) on a Witt basis of length
/// 2N (kind B) or 2N+1 (kind C).
inline std::vector<Poly> one_param_action(const std::vector<Poly>& u, int i, const std::optional<Rational>& c, Kind kind,
                                          const FrameSeq& frame, const Rational& h)
{
    const int len = static_cast<int>(u.size());
    int N = 0;
    if (kind == Kind::B) {
        if (len % 2 != 0) throw Error("dimension_mismatch", "B action needs an even-length basis");
        N = len / 2;
    } else if (kind == Kind::C) {
        if (len % 2 != 1) throw Error("dimension_mismatch", "C action needs an odd-length basis");
        N = (len - 1) / 2;
    } else {
        throw Error("invalid_input", "one-parameter action needs kind B or C");
    }
    if (i < 1 || i > N) throw Error("invalid_input", "direction out of range");
    auto U = [&](int k) -> const Poly& { return u[static_cast<std::size_t>(k - 1)]; };
    std::vector<Poly> w = u;
    auto W = [&](int k) -> Poly& { return w[static_cast<std::size_t>(k - 1)]; };
    // mirror index of the second pair for i < N
    const int m = kind == Kind::B ? 2 * N - i : 2 * N + 1 - i;
    if (c) {
        const Rational& t = *c;
        if (i < N || kind == Kind::B) {
            W(i) = U(i) + U(i + 1) * t;
            if (i < N) W(m) = U(m) + U(m + 1) * t;
        } else {
            W(N) = U(N) + U(N + 1) * t + U(N + 2) * (t * t / 2);
            W(N + 1) = U(N + 1) + U(N + 2) * t;
        }
    } else {
        if (i < N || kind == Kind::B) {
            W(i) = U(i + 1);
            W(i + 1) = -U(i);
            if (i < N) {
                W(m) = U(m + 1);
                W(m + 1) = -U(m);
            }
        } else {
            W(N) = U(N + 2);
            W(N + 1) = -U(N + 1);
            W(N + 2) = U(N);
        }
    }
    if (!check_witt(w, frame, h)) throw Error("witt_failed", "one-parameter action left the Witt basis set");
    return w;
}

/// (y_1..y_N) with y_i = monic(W^dagger(u_1..u_i)).
inline PolyTuple bc_generating_morphism(const std::vector<Poly>& witt, const FrameSeq& frame, Kind kind)
{
    const std::size_t len = witt.size();
    std::size_t N = 0;
    if (kind == Kind::B && len % 2 == 0) N = len / 2;
    else if (kind == Kind::C && len % 2 == 1) N = (len - 1) / 2;
    else throw Error("dimension_mismatch", "basis length does not match the kind");
    Flag fl{witt, frame.h};
    PolyTuple y;
    for (std::size_t i = 1; i <= N; ++i) {
        auto d = divided_wronskian(fl.prefix(i), frame);
        if (!d || d->is_zero()) throw Error("flag_incompatible", "flag incompatible with frame");
        y.push_back(d->monic());
    }
    return y;
}

} // namespace bethe

#endif // BETHE_SELFDUAL_HPP
