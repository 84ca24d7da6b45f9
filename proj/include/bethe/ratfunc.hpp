#ifndef BETHE_RATFUNC_HPP
#define BETHE_RATFUNC_HPP

#include <string>
#include <utility>

#include "poly.hpp"

namespace bethe {

/// num/den over Q, kept reduced with a monic denominator.
class RationalFunction {
public:
    RationalFunction() : den_(Poly::constant(1)) {}
    RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(1)) {}
    RationalFunction(const Rational& a) : num_(Poly::constant(a)), den_(Poly::constant(1)) {}
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0; }

    /// f(x + a)
    RationalFunction shift(const Rational& a) const
    {
        RationalFunction r;
        r.num_ = num_.shift(a);
        r.den_ = den_.shift(a);
        return r;
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b)
    {
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a)
    {
        RationalFunction r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b)
    {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b)
    {
        if (b.is_zero()) throw Error("invalid_input", "rational function division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const
    {
        if (is_poly()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize()
    {
        if (den_.is_zero()) throw Error("invalid_input", "zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::constant(1);
            return;
        }
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        Rational l = den_.lead();
        if (l != 1) {
            num_ *= Rational(1 / l);
            den_ *= Rational(1 / l);
        }
    }

    Poly num_;
    Poly den_;
};

} // namespace bethe

#endif // BETHE_RATFUNC_HPP
