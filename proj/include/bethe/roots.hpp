#ifndef BETHE_ROOTS_HPP
#define BETHE_ROOTS_HPP

#include <string>
#include <vector>

#include "error.hpp"

namespace bethe {

enum class Kind { A, B, C };

inline std::string kind_name(Kind k)
{
    switch (k) {
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::C: return "C";
    }
    return "?";
}

inline Kind parse_kind(const std::string& s)
{
    if (s == "A") return Kind::A;
    if (s == "B") return Kind::B;
    if (s == "C") return Kind::C;
    throw Error("invalid_input", "unknown root system kind '" + s + "'");
}

/// Scalar products (alpha_i, alpha_j) of the simple roots, 0-indexed.
inline std::vector<std::vector<long>> root_products(Kind kind, int N)
{
    if (N < 1) throw Error("invalid_input", "rank must be positive");
    std::vector<std::vector<long>> s(static_cast<std::size_t>(N), std::vector<long>(static_cast<std::size_t>(N), 0));
    auto at = [&](int i, int j) -> long& { return s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    for (int i = 0; i < N; ++i) {
        switch (kind) {
        case Kind::A: at(i, i) = 2; break;
        case Kind::B: at(i, i) = (i == N - 1) ? 2 : 4; break;
        case Kind::C: at(i, i) = (i == N - 1) ? 4 : 2; break;
        }
    }
    for (int i = 0; i + 1 < N; ++i) {
        long v = -1;
        if (kind == Kind::B) v = -2;
        if (kind == Kind::C && i == N - 2) v = -2;
        at(i, i + 1) = at(i + 1, i) = v;
    }
    return s;
}

/// a_ij = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
/// Row i holds the Dynkin labels of alpha_i.
inline std::vector<std::vector<long>> cartan_matrix(Kind kind, int N)
{
    auto s = root_products(kind, N);
    auto a = s;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                2 * s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / s[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
    return a;
}

} // namespace bethe

#endif // BETHE_ROOTS_HPP
