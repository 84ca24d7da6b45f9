#ifndef BETHE_RATIONAL_HPP
#define BETHE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "error.hpp"

namespace bethe {

// Canonical form (reduced, positive denominator) is maintained after every
// construction from text; gmpxx arithmetic keeps it afterwards.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q". Rejects zero denominators and anything that
/// is not an exact rational literal.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto valid_int = [](std::string_view t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw Error("invalid_input", "not a rational literal: '" + s + "'");
    Integer n(num, 10), d(den, 10);
    if (d == 0) throw Error("invalid_input", "zero denominator: '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

} // namespace bethe

#endif // BETHE_RATIONAL_HPP
