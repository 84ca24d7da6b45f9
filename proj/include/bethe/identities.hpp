#ifndef BETHE_IDENTITIES_HPP
#define BETHE_IDENTITIES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "wronskian.hpp"

namespace bethe {

inline const std::vector<Rational>& identity_steps()
{
    static const std::vector<Rational> steps{Rational(1), Rational(1, 2), Rational(-2, 3)};
    return steps;
}

/// Random polynomial of degree <= max_deg with small rational coefficients.
inline Poly random_poly(std::mt19937_64& rng, int max_deg)
{
    std::uniform_int_distribution<int> deg(0, max_deg), num(-6, 6), den(1, 3);
    const int d = deg(rng);
    std::vector<Rational> c;
    for (int k = 0; k <= d; ++k) c.push_back(make_rational(num(rng), den(rng)));
    if (c.back() == 0) c.back() = 1;
    return Poly(std::move(c));
}

struct IdentityTally {
    Identity id;
    int trials = 0;
    int failures = 0;
};

struct IdentityBatch {
    int trials = 200;  // B1..B3 instances
    int max_s = 4;     // B1..B3 size bound
    int per_sk = 50;   // B4, B5 instances per (s, k)
    int max_s_wr = 3;  // B4, B5 size bound
    int max_deg = 4;
    std::uint64_t seed = 0;
};

inline std::vector<IdentityTally> run_identity_batch(const IdentityBatch& cfg)
{
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick_s(1, std::max(cfg.max_s, 1));
    std::uniform_int_distribution<std::size_t> pick_h(0, identity_steps().size() - 1);
    std::vector<IdentityTally> out;
    for (Identity id : {Identity::B1_one_in_wronskian, Identity::B2_delta_expansion, Identity::B3_common_factor}) {
        IdentityTally t{id};
        for (int n = 0; n < cfg.trials; ++n) {
            const int s = pick_s(rng);
            const Rational& h = identity_steps()[pick_h(rng)];
            std::vector<Poly> gs;
            for (int i = 0; i < s; ++i) gs.push_back(random_poly(rng, cfg.max_deg));
            Poly f = random_poly(rng, cfg.max_deg);
            ++t.trials;
            if (!check_identity(id, gs, f, 0, h)) ++t.failures;
        }
        out.push_back(t);
    }
    for (Identity id : {Identity::B4_wr_id_2, Identity::B5_wr_id_1}) {
        IdentityTally t{id};
        for (int s = 1; s <= cfg.max_s_wr; ++s)
            for (int k = 0; k <= s; ++k)
                for (int n = 0; n < cfg.per_sk; ++n) {
                    const Rational& h = identity_steps()[pick_h(rng)];
                    std::vector<Poly> gs;
                    for (int i = 0; i <= s; ++i) gs.push_back(random_poly(rng, cfg.max_deg));
                    ++t.trials;
                    if (!check_identity(id, gs, Poly{}, k, h)) ++t.failures;
                }
        out.push_back(t);
    }
    return out;
}

} // namespace bethe

#endif // BETHE_IDENTITIES_HPP
