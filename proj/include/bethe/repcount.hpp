#ifndef BETHE_REPCOUNT_HPP
#define BETHE_REPCOUNT_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "bethe.hpp"
#include "matrix.hpp"
#include "reproduction.hpp"
#include "roots.hpp"

namespace bethe {

/// Dynkin labels.
using Weight = std::vector<long>;
/// Word i_1 ... i_k (1-based) for s_{i_1} ... s_{i_k}.
using WeylWord = std::vector<int>;

class RootSystem {
public:
    RootSystem(Kind kind, int N) : kind_(kind), N_(N), products_(root_products(kind, N)), cartan_(cartan_matrix(kind, N))
    {
        const auto n = static_cast<std::size_t>(N);
        Matrix A(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = cartan_[i][j];
        // (omega_i, omega_k) = (A^{-1} D)_{ik}, D_kk = (alpha_k, alpha_k)/2
        omega_ = Matrix(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            Vec e(n, Rational(0));
            e[k] = Rational(products_[k][k], 2);
            Vec col = solve_unique(A, e);
            for (std::size_t i = 0; i < n; ++i) omega_(i, k) = col[i];
        }
        a_inv_t_ = Matrix(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            Vec e(n, Rational(0));
            e[k] = 1;
            Vec col = solve_unique(A.transpose(), e);
            for (std::size_t i = 0; i < n; ++i) a_inv_t_(i, k) = col[i];
        }
        build_positive_roots();
    }

    Kind kind() const { return kind_; }
    int rank() const { return N_; }
    const std::vector<std::vector<long>>& cartan() const { return cartan_; }
    Weight rho() const { return Weight(static_cast<std::size_t>(N_), 1); }
    Weight simple_root(int i) const { return cartan_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<Weight>& positive_roots() const { return positive_; }

    Weight reflect(int i, Weight w) const
    {
        const long c = w[static_cast<std::size_t>(i - 1)];
        const auto& a = cartan_[static_cast<std::size_t>(i - 1)];
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= c * a[j];
        return w;
    }

    Rational inner(const Weight& a, const Weight& b) const
    {
        Rational s = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (a[i] != 0 && b[j] != 0) s += omega_(i, j) * a[i] * b[j];
        return s;
    }

    /// Coordinates of a label vector in the simple-root basis.
    Vec root_coordinates(const Weight& w) const
    {
        Vec v(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i];
        return a_inv_t_ * v;
    }

    /// lambda - mu is a non-negative integer combination of simple roots.
    bool leq(const Weight& mu, const Weight& lambda) const
    {
        Weight d(mu.size());
        for (std::size_t i = 0; i < mu.size(); ++i) d[i] = lambda[i] - mu[i];
        for (const auto& c : root_coordinates(d))
            if (c < 0 || c.get_den() != 1) return false;
        return true;
    }

    static bool is_dominant(const Weight& w)
    {
        return std::all_of(w.begin(), w.end(), [](long v) { return v >= 0; });
    }

    /// Dominant conjugate and the parity of the reflections used.
    std::pair<Weight, int> dominant_conjugate(Weight w) const
    {
        int sign = 1;
        for (bool moved = true; moved;) {
            moved = false;
            for (int i = 1; i <= N_; ++i) {
                if (w[static_cast<std::size_t>(i - 1)] < 0) {
                    w = reflect(i, w);
                    sign = -sign;
                    moved = true;
                }
            }
        }
        return {w, sign};
    }

private:
    void build_positive_roots()
    {
        const auto n = static_cast<std::size_t>(N_);
        std::set<std::vector<long>> known;
        std::vector<std::vector<long>> frontier;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<long> c(n, 0);
            c[i] = 1;
            known.insert(c);
            frontier.push_back(c);
        }
        auto labels = [&](const std::vector<long>& c) {
            Weight w(n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) w[j] += c[i] * cartan_[i][j];
            return w;
        };
        std::vector<std::vector<long>> all = frontier;
        while (!frontier.empty()) {
            std::vector<std::vector<long>> next;
            for (const auto& beta : frontier) {
                const Weight lb = labels(beta);
                for (std::size_t i = 0; i < n; ++i) {
                    auto up = beta;
                    ++up[i];
                    if (known.count(up)) continue;
                    long q = 0;
                    for (auto down = beta; down[i] > 0;) {
                        --down[i];
                        if (!known.count(down)) break;
                        ++q;
                    }
                    if (q - lb[i] > 0) {
                        known.insert(up);
                        next.push_back(up);
                        all.push_back(up);
                    }
                }
            }
            frontier = std::move(next);
        }
        for (const auto& c : all) positive_.push_back(labels(c));
    }

    Kind kind_;
    int N_;
    std::vector<std::vector<long>> products_;
    std::vector<std::vector<long>> cartan_;
    Matrix omega_;
    Matrix a_inv_t_;
    std::vector<Weight> positive_;
};

inline Weight add(Weight a, const Weight& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
inline Weight sub(Weight a, const Weight& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

/// w(lambda) for w = s_{i_1} ... s_{i_k}.
inline Weight weyl_act(const RootSystem& rs, const WeylWord& w, Weight lambda)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it) lambda = rs.reflect(*it, lambda);
    return lambda;
}

/// w . lambda = w(lambda + rho) - rho
inline Weight shifted_action(const RootSystem& rs, const WeylWord& w, const Weight& lambda)
{
    if (static_cast<int>(lambda.size()) != rs.rank()) throw Error("dimension_mismatch", "weight rank");
    return sub(weyl_act(rs, w, add(lambda, rs.rho())), rs.rho());
}

/// Orbit under the shifted action, BFS over simple reflections.
inline std::vector<std::pair<WeylWord, Weight>> shifted_orbit(const RootSystem& rs, const Weight& lambda)
{
    std::vector<std::pair<WeylWord, Weight>> out{{WeylWord{}, lambda}};
    std::set<Weight> seen{lambda};
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (int i = 1; i <= rs.rank(); ++i) {
            Weight w = shifted_action(rs, {i}, out[k].second);
            if (!seen.insert(w).second) continue;
            WeylWord word{i};
            word.insert(word.end(), out[k].first.begin(), out[k].first.end());
            out.emplace_back(std::move(word), std::move(w));
        }
    }
    return out;
}

/// Freudenthal recursion for dim L_lambda[mu].
class WeightMultiplicity {
public:
    WeightMultiplicity(const RootSystem& rs, Weight lambda) : rs_(rs), lambda_(std::move(lambda))
    {
        if (!RootSystem::is_dominant(lambda_)) throw Error("not_dominant", "highest weight must be dominant");
        lr_ = rs_.inner(add(lambda_, rs_.rho()), add(lambda_, rs_.rho()));
    }

    long operator()(const Weight& mu)
    {
        if (mu == lambda_) return 1;
        if (!rs_.leq(mu, lambda_)) return 0;
        Weight dom = rs_.dominant_conjugate(mu).first;
        if (dom != mu) return (*this)(dom);
        if (auto it = memo_.find(mu); it != memo_.end()) return it->second;
        Rational num = 0;
        for (const auto& alpha : rs_.positive_roots()) {
            Weight nu = add(mu, alpha);
            while (rs_.leq(nu, lambda_)) {
                long m = (*this)(nu);
                if (m) num += rs_.inner(nu, alpha) * m;
                nu = add(nu, alpha);
            }
        }
        Rational den = lr_ - rs_.inner(add(mu, rs_.rho()), add(mu, rs_.rho()));
        Rational val = 2 * num / den;
        if (val.get_den() != 1 || val < 0) throw Error("internal", "non-integral weight multiplicity");
        long r = val.get_num().get_si();
        memo_[mu] = r;
        return r;
    }

    /// All weights with positive multiplicity.
    std::map<Weight, long> character()
    {
        std::map<Weight, long> out;
        std::deque<Weight> q{lambda_};
        out[lambda_] = 1;
        while (!q.empty()) {
            Weight w = q.front();
            q.pop_front();
            for (int i = 1; i <= rs_.rank(); ++i) {
                Weight v = sub(w, rs_.simple_root(i));
                if (out.count(v)) continue;
                long m = (*this)(v);
                if (m > 0) {
                    out[v] = m;
                    q.push_back(v);
                }
            }
        }
        return out;
    }

private:
    const RootSystem& rs_;
    Weight lambda_;
    Rational lr_;
    std::map<Weight, long> memo_;
};

inline long weight_multiplicity(const RootSystem& rs, const Weight& lambda, const Weight& mu)
{
    WeightMultiplicity wm(rs, lambda);
    return wm(mu);
}

/// L_lambda (x) L_mu as dominant weight -> multiplicity (Racah-Klimyk).
inline std::map<Weight, long> tensor_decompose(const RootSystem& rs, const Weight& lambda, const Weight& mu)
{
    if (!RootSystem::is_dominant(lambda) || !RootSystem::is_dominant(mu))
        throw Error("not_dominant", "tensor factors must be dominant");
    WeightMultiplicity wm(rs, mu);
    std::map<Weight, long> out;
    const Weight lr = add(lambda, rs.rho());
    for (const auto& [beta, m] : wm.character()) {
        auto [g, sign] = rs.dominant_conjugate(add(beta, lr));
        if (std::any_of(g.begin(), g.end(), [](long v) { return v == 0; })) continue;
        out[sub(g, rs.rho())] += sign * m;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

inline long tensor_multiplicity(const RootSystem& rs, const Weight& lambda, const Weight& mu, const Weight& nu)
{
    if (!RootSystem::is_dominant(nu)) throw Error("not_dominant", "target weight must be dominant");
    auto d = tensor_decompose(rs, lambda, mu);
    auto it = d.find(nu);
    return it == d.end() ? 0 : it->second;
}

/// Multiplicity of L_nu in the product of all factors (trivial module for none).
inline long tensor_multiplicity(const RootSystem& rs, const std::vector<Weight>& factors, const Weight& nu)
{
    if (!RootSystem::is_dominant(nu)) return 0;
    std::map<Weight, long> cur{{Weight(static_cast<std::size_t>(rs.rank()), 0), 1}};
    for (const auto& f : factors) {
        std::map<Weight, long> next;
        for (const auto& [k, m] : cur)
            for (const auto& [w, c] : tensor_decompose(rs, k, f)) next[w] += m * c;
        cur = std::move(next);
    }
    auto it = cur.find(nu);
    return it == cur.end() ? 0 : it->second;
}

/// gl_{N+1} highest weight (partition) to sl_{N+1} labels.
inline Weight partition_to_labels(const std::vector<long>& a)
{
    Weight w;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) w.push_back(a[i] - a[i + 1]);
    return w;
}

/// Degrees l with sum_s Lambda_s - sum_i l_i alpha_i = w; nullopt if not
/// a non-negative integer vector.
inline std::optional<std::vector<int>> degrees_for_weight(const InitialData& data, const Weight& w)
{
    RootSystem rs(data.kind, data.N);
    Weight total(static_cast<std::size_t>(data.N), 0);
    for (std::size_t s = 0; s < data.n(); ++s)
        for (int j = 1; j <= data.N; ++j) total[static_cast<std::size_t>(j - 1)] += data.label(s, j);
    Vec l = rs.root_coordinates(sub(total, w));
    std::vector<int> out;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] < 0 || l[i].get_den() != 1) return std::nullopt;
        long v = l[i].get_num().get_si();
        if (data.kind == Kind::C && static_cast<int>(i) == data.N - 1) v *= 2;
        out.push_back(static_cast<int>(v));
    }
    return out;
}

inline bool z_generic(const InitialData& data)
{
    for (std::size_t s = 0; s < data.n(); ++s)
        for (std::size_t r = 0; r < s; ++r) {
            Rational q = (data.z[s] - data.z[r]) / data.h;
            if (q.get_den() == 1) return false;
        }
    return true;
}

/// Weyl word of each atlas degree vector through the shifted orbit of the
/// seed's weight at infinity; orbit elements with attainable degrees that
/// the atlas never reached go to unreached.
inline void label_atlas(PopulationAtlas& atlas)
{
    const InitialData& data = atlas.data;
    atlas.weyl_labels.clear();
    atlas.unreached.clear();
    if (atlas.representatives.empty()) return;
    RootSystem rs(data.kind, data.N);
    Weight lam = weight_at_infinity(data, atlas.representatives.begin()->first);
    for (const auto& [w, mu] : shifted_orbit(rs, lam)) {
        auto degs = degrees_for_weight(data, mu);
        if (!degs) continue;
        if (atlas.representatives.count(*degs)) atlas.weyl_labels.emplace(*degs, w);
        else atlas.unreached.push_back(*degs);
    }
}

struct CountReport {
    int solver_count = 0;
    long multiplicity = 0;
    bool agrees = false;
    bool z_generic = true;
};

/// Exact sl_2, l = 1 comparison of the solution count with the tensor
/// multiplicity of L_{sum Lambda - 2}.
inline CountReport count_check(const InitialData& data, int l)
{
    if (data.N != 1 || data.kind != Kind::A) throw Error("invalid_input", "count_check needs sl_2 data");
    if (l != 1) throw Error("unsupported", "only l=1 supported exactly");
    if (!data.has_sl_shift()) throw Error("hypotheses", "shifts must satisfy b = -Lambda");
    CountReport r;
    r.z_generic = z_generic(data);
    r.solver_count = solve_sl2_l1(data).count;
    RootSystem rs(Kind::A, 1);
    std::vector<Weight> factors;
    long total = 0;
    for (std::size_t s = 0; s < data.n(); ++s) {
        factors.push_back({data.label(s, 1)});
        total += data.label(s, 1);
    }
    r.multiplicity = tensor_multiplicity(rs, factors, Weight{total - 2 * l});
    r.agrees = r.multiplicity == r.solver_count;
    return r;
}

} // namespace bethe

#endif // BETHE_REPCOUNT_HPP
