#ifndef BETHE_POLY_HPP
#define BETHE_POLY_HPP

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace bethe {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// The zero polynomial has no coefficients and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const Rational& a) { return Poly(std::vector<Rational>{a}); }
    static Poly x() { return Poly({Rational(0), Rational(1)}); }
    static Poly monomial(int k, const Rational& a = 1)
    {
        std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
        c.back() = a;
        return Poly(std::move(c));
    }
    /// x - r
    static Poly linear_root(const Rational& r) { return Poly({Rational(-r), Rational(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int k) const
    {
        if (k < 0 || k > degree()) return Rational(0);
        return c_[static_cast<std::size_t>(k)];
    }
    const Rational& lead() const
    {
        if (c_.empty()) throw Error("invalid_input", "leading coefficient of zero polynomial");
        return c_.back();
    }

    Rational operator()(const Rational& t) const
    {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    Poly monic() const
    {
        if (is_zero()) return *this;
        Poly r = *this;
        Rational l = lead();
        for (auto& a : r.c_) a /= l;
        return r;
    }
    bool is_monic() const { return !is_zero() && lead() == 1; }

    Poly derivative() const
    {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
        return Poly(std::move(d));
    }

    /// q(x) = p(x + a), by binomial expansion.
    Poly shift(const Rational& a) const
    {
        if (a == 0 || c_.size() <= 1) return *this;
        const std::size_t n = c_.size();
        std::vector<Rational> out(n, Rational(0));
        std::vector<Rational> pw(n);
        pw[0] = 1;
        for (std::size_t k = 1; k < n; ++k) pw[k] = pw[k - 1] * a;
        for (std::size_t k = 0; k < n; ++k) {
            if (c_[k] == 0) continue;
            Integer binom = 1;
            for (std::size_t j = k + 1; j-- > 0;) {
                // binom = C(k, j), walking j downward from k
                out[j] += c_[k] * binom * pw[k - j];
                if (j > 0) binom = binom * static_cast<unsigned long>(j) / static_cast<unsigned long>(k - j + 1);
            }
        }
        return Poly(std::move(out));
    }

    Poly& operator+=(const Poly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const Rational& a)
    {
        if (a == 0) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) x *= a;
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a)
    {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Euclidean division over Q: (quotient, remainder).
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
    {
        if (b.is_zero()) throw Error("invalid_input", "polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly{}, a};
        std::vector<Rational> r = a.c_;
        std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
        const Rational& lb = b.lead();
        const int db = b.degree();
        for (int k = a.degree(); k >= db; --k) {
            const Rational& top = r[static_cast<std::size_t>(k)];
            if (top == 0) continue;
            Rational f = top / lb;
            q[static_cast<std::size_t>(k - db)] = f;
            for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
        }
        r.resize(static_cast<std::size_t>(db));
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

    /// Quotient when b divides a exactly, otherwise nullopt.
    friend std::optional<Poly> exact_div(const Poly& a, const Poly& b)
    {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) return std::nullopt;
        return q;
    }

    bool divides(const Poly& a) const { return divmod(a, *this).second.is_zero(); }

    /// Human-readable form, highest degree first, e.g. "x^2 - 1/2*x + 3".
    std::string str(const char* var = "x") const
    {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            Rational a = c_[static_cast<std::size_t>(k)];
            if (a == 0) continue;
            bool neg = a < 0;
            if (neg) a = -a;
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            first = false;
            if (k == 0) {
                os << to_string(a);
                continue;
            }
            if (a != 1) os << to_string(a) << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Monic gcd. Throws when both arguments are zero.
inline Poly gcd(Poly a, Poly b)
{
    if (a.is_zero() && b.is_zero()) throw Error("undefined_gcd", "undefined gcd");
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

inline bool coprime(const Poly& a, const Poly& b) { return gcd(a, b).degree() == 0; }

/// c with c(x+h) - c(x) = f and zero constant term; built from the top
/// coefficient down since the forward difference lowers degree by one.
inline Poly discrete_antiderivative(const Poly& f, const Rational& h)
{
    if (h == 0) throw Error("zero_step", "discrete antiderivative needs h != 0");
    Poly c;
    Poly residual = f;
    while (!residual.is_zero()) {
        const int d = residual.degree();
        Poly term = Poly::monomial(d + 1, residual.lead() / (h * (d + 1)));
        c += term;
        residual -= term.shift(h) - term;
    }
    return c;
}

/// Product of (x - r) over the given roots.
inline Poly from_roots(const std::vector<Rational>& roots)
{
    Poly p = Poly::constant(1);
    for (const auto& r : roots) p = p * Poly::linear_root(r);
    return p;
}

/// Rational roots with multiplicity (rational root theorem on the
/// integer-cleared polynomial). Irrational or complex roots are omitted.
inline std::vector<Rational> rational_roots(const Poly& p)
{
    if (p.is_zero()) throw Error("invalid_input", "roots of the zero polynomial");
    std::vector<Rational> roots;
    Poly rest = p.monic();
    // x = 0 roots
    while (rest.degree() > 0 && rest.coeff(0) == 0) {
        roots.emplace_back(0);
        rest = divmod(rest, Poly::x()).first;
    }
    if (rest.degree() <= 0) return roots;

    auto integer_coeffs = [](const Poly& q) {
        Integer l = 1;
        for (const auto& a : q.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
        std::vector<Integer> out;
        for (const auto& a : q.coeffs()) out.push_back(Integer(a * l));
        return out;
    };
    auto divisors = [](Integer n) {
        if (n < 0) n = -n;
        std::vector<Integer> ds;
        for (Integer d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                ds.push_back(d);
                if (d * d != n) ds.push_back(n / d);
            }
        }
        return ds;
    };

    bool found = true;
    while (found && rest.degree() > 0) {
        found = false;
        auto ic = integer_coeffs(rest);
        for (const auto& num : divisors(ic.front())) {
            for (const auto& den : divisors(ic.back())) {
                for (int sgn : {1, -1}) {
                    Rational cand(num * sgn, den);
                    cand.canonicalize();
                    if (rest(cand) == 0) {
                        roots.push_back(cand);
                        rest = divmod(rest, Poly::linear_root(cand)).first;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace bethe

#endif // BETHE_POLY_HPP
