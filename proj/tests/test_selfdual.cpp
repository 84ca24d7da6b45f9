#include <gtest/gtest.h>

#include <random>

#include "bethe/reproduction.hpp"
#include "bethe/selfdual.hpp"
#include "oracles.hpp"

using namespace bethe;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }
const Poly X = Poly::x();
const Poly ONE = Poly::constant(1);
Poly c(const Rational& a) { return Poly::constant(a); }

// G equals H up to one global nonzero scalar.
bool proportional(const Matrix& G, const Matrix& H)
{
    if (G.rows() != H.rows() || G.cols() != H.cols()) return false;
    std::optional<Rational> ratio;
    for (std::size_t i = 0; i < G.rows(); ++i)
        for (std::size_t j = 0; j < G.cols(); ++j) {
            if ((G(i, j) == 0) != (H(i, j) == 0)) return false;
            if (G(i, j) == 0) continue;
            Rational r = G(i, j) / H(i, j);
            if (ratio && *ratio != r) return false;
            ratio = r;
        }
    return ratio.has_value();
}

Matrix from_rows(const std::vector<std::vector<Rational>>& rows)
{
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

std::vector<Rational> steps() { return {q(1), q(1, 2), q(-2, 3)}; }

// Selfdual spaces with nontrivial frames: fundamental spaces of folded
// B/C critical points.
struct Folded {
    InitialData data;
    PolyTuple y;
    PolySpace space;
    FrameSeq frame;
};

std::vector<Folded> folded_spaces()
{
    std::vector<Folded> out;
    auto add = [&](Kind kind, int N, std::vector<long> lam) {
        InitialData d = InitialData::empty(kind, N, 1);
        if (!lam.empty()) {
            d.z = {q(0)};
            d.lambda = {lam};
            d.b = {std::vector<Rational>(static_cast<std::size_t>(N), Rational(0))};
        }
        PopulationAtlas a = population_atlas(d, ones(N));
        InitialData lift = lift_data(d);
        for (const auto& [degs, y] : a.representatives) {
            if (!is_generic(d, y)) continue;
            PolySpace v = fundamental_basis(lift, fold(kind, y, d.h));
            out.push_back({d, y, v, t_polynomials(lift)});
        }
    };
    add(Kind::C, 1, {});
    add(Kind::C, 1, {1});
    add(Kind::B, 2, {});
    add(Kind::B, 2, {0, 1});
    add(Kind::C, 2, {});
    return out;
}

} // namespace

TEST(DualSpace, Examples)
{
    PolySpace c2 = polynomials_up_to(2, 1);
    FrameSeq triv2 = FrameSeq::trivial(2, 1);
    EXPECT_TRUE(dual_space(c2, triv2).same_span(c2));
    PolySpace line{{ONE, X}, 1};
    EXPECT_TRUE(dual_space(line, FrameSeq::trivial(1, 1)).same_span(line));
    try {
        dual_space({{ONE}, 1}, FrameSeq{{}, 1});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "invalid_input");
    }
}

TEST(DualSpace, DoubleDualShiftLaw)
{
    for (const Rational& h : steps())
        for (int N = 1; N <= 4; ++N) {
            PolySpace v = polynomials_up_to(N, h);
            FrameSeq t = FrameSeq::trivial(static_cast<std::size_t>(N), h);
            PolySpace dd = dual_space(dual_space(v, t), dual_frame(t));
            EXPECT_TRUE(dd.same_span(v.shifted(h * (N - 1))));
        }
    // a 3-dim space that is not selfdual and has a nontrivial frame
    std::vector<PolySpace> spaces{{{ONE, X, X * X * X}, 1}, {{X + ONE, X * X * X - c(2), X * X * X * X}, q(1, 2)}};
    for (const auto& v : spaces) {
        auto t = frame_of_space(v);
        ASSERT_TRUE(t);
        PolySpace d = dual_space(v, *t);
        auto td = frame_of_space(d);
        ASSERT_TRUE(td);
        EXPECT_EQ(td->entries, dual_frame(*t).entries);
        EXPECT_TRUE(dual_space(d, *td).same_span(v.shifted(v.h)));
    }
}

TEST(DualSpace, FoldedSpacesFrameLaw)
{
    for (const auto& f : folded_spaces()) {
        auto t = frame_of_space(f.space);
        ASSERT_TRUE(t);
        EXPECT_EQ(t->entries, f.frame.entries);
        auto td = frame_of_space(dual_space(f.space, f.frame));
        ASSERT_TRUE(td);
        EXPECT_EQ(td->entries, dual_frame(f.frame).entries);
    }
}

TEST(Selfdual, PolynomialSpaces)
{
    for (const Rational& h : steps())
        for (int N = 1; N <= 4; ++N)
            EXPECT_TRUE(is_selfdual(polynomials_up_to(N, h), FrameSeq::trivial(static_cast<std::size_t>(N), h))) << N;
    PolySpace gap{{ONE, X, X * X * X}, 1};
    EXPECT_FALSE(is_selfdual(gap, *frame_of_space(gap)));
    PolySpace pair{{ONE, X * X}, 1};
    EXPECT_TRUE(is_selfdual(pair, *frame_of_space(pair)));
}

TEST(Selfdual, FoldedFundamentalSpaces)
{
    auto fs = folded_spaces();
    EXPECT_GT(fs.size(), 8u);
    for (const auto& f : fs) {
        EXPECT_TRUE(frame_is_selfdual(f.frame));
        EXPECT_TRUE(is_selfdual(f.space, f.frame)) << serialize_tuple(f.y);
    }
}

TEST(CanonicalForm, PolynomialsOfDegreeTwo)
{
    PolySpace v{{ONE, X, Poly({q(0), q(-1, 2), q(1, 2)})}, 1};
    Matrix G = canonical_form(v, FrameSeq::trivial(2, 1));
    Matrix expect = from_rows({{q(0), q(0), q(1)}, {q(0), q(-1), q(1, 2)}, {q(1), q(1, 2), q(-1, 8)}});
    EXPECT_TRUE(proportional(G, expect));
}

TEST(CanonicalForm, ParityLaw)
{
    std::mt19937_64 rng(31);
    for (const Rational& h : steps())
        for (int N = 1; N <= 4; ++N) {
            PolySpace v = polynomials_up_to(N, h);
            // a random triangular change of basis keeps the span
            for (std::size_t k = 0; k < v.basis.size(); ++k)
                for (std::size_t j = 0; j < k; ++j) v.basis[k] += v.basis[j] * oracle::random_poly(rng, 0, 3).coeff(0);
            Matrix G = canonical_form(v, FrameSeq::trivial(static_cast<std::size_t>(N), h));
            if (N % 2 == 0) {
                EXPECT_TRUE(G.is_symmetric());
            } else {
                EXPECT_TRUE(G.is_skew());
                for (std::size_t i = 0; i < G.rows(); ++i) EXPECT_EQ(G(i, i), 0);
            }
            EXPECT_EQ(rank(G), v.dim());
        }
    for (const auto& f : folded_spaces()) {
        Matrix G = canonical_form(f.space, f.frame);
        EXPECT_TRUE(f.space.dim() % 2 ? G.is_symmetric() : G.is_skew());
    }
}

TEST(CanonicalForm, RejectsNonSelfdual)
{
    PolySpace gap{{ONE, X, X * X * X}, 1};
    try {
        canonical_form(gap, *frame_of_space(gap));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "not_selfdual");
    }
}

TEST(Witt, CheckExamples)
{
    FrameSeq t = FrameSeq::trivial(2, 1);
    EXPECT_TRUE(check_witt({ONE, X - c(q(1, 2)), Poly({q(1, 16), q(-1, 2), q(1, 2)})}, t, 1));
    EXPECT_FALSE(check_witt({ONE, X, X * X}, t, 1));
    C1Triple tr = c1_population(ONE, Poly({q(1, 8), q(-1), q(1)}), 1);
    EXPECT_TRUE(check_witt({tr.u1, tr.u2, tr.u3}, t, 1));
}

TEST(Witt, MinusEighthVariantIsNotIsotropic)
{
    // third vector with constant -1/16 pairs nontrivially with itself
    PolySpace v{{ONE, X - c(q(1, 2)), Poly({q(-1, 16), q(-1, 2), q(1, 2)})}, 1};
    Matrix G = canonical_form(v, FrameSeq::trivial(2, 1));
    EXPECT_NE(G(2, 2), 0);
    EXPECT_EQ(G(0, 0), 0);
}

TEST(Witt, ConstructionOnPolynomialSpaces)
{
    for (const Rational& h : steps())
        for (int N = 1; N <= 4; ++N) {
            FrameSeq t = FrameSeq::trivial(static_cast<std::size_t>(N), h);
            auto w = witt_basis(polynomials_up_to(N, h), t);
            EXPECT_TRUE(check_witt(w, t, h));
            EXPECT_TRUE(PolySpace({w, h}).same_span(polynomials_up_to(N, h)));
        }
    FrameSeq t = FrameSeq::trivial(2, 1);
    auto w = witt_basis(polynomials_up_to(2, 1), t);
    EXPECT_EQ(w, (std::vector<Poly>{ONE, X, Poly({q(-1, 16), q(0), q(1, 2)})}));
    // the opposite unipotent at -1/2 carries it to the (x - 1/2)-centred basis
    const Rational s = q(-1, 2);
    std::vector<Poly> moved{w[0], w[1] + w[0] * s, w[2] + w[1] * s + w[0] * (s * s / 2)};
    EXPECT_EQ(moved, (std::vector<Poly>{ONE, X - c(q(1, 2)), Poly({q(1, 16), q(-1, 2), q(1, 2)})}));
    EXPECT_TRUE(check_witt(moved, t, 1));
}

TEST(Witt, ConstructionOnFoldedSpaces)
{
    for (const auto& f : folded_spaces()) {
        auto w = witt_basis(f.space, f.frame);
        EXPECT_TRUE(check_witt(w, f.frame, f.space.h)) << serialize_tuple(f.y);
        EXPECT_TRUE(PolySpace({w, f.space.h}).same_span(f.space));
        EXPECT_TRUE(is_isotropic_flag({w, f.space.h}, f.frame));
    }
}

TEST(IsotropicFlag, Examples)
{
    FrameSeq t = FrameSeq::trivial(2, 1);
    auto w = witt_basis(polynomials_up_to(2, 1), t);
    EXPECT_TRUE(is_isotropic_flag({w, 1}, t));
    EXPECT_FALSE(is_isotropic_flag({{X * X, X, ONE}, 1}, t));
    EXPECT_FALSE(is_isotropic_flag({{ONE + X, X, X * X}, 1}, t));
    FrameSeq t1 = FrameSeq::trivial(1, 1);
    for (const auto& b : std::vector<std::vector<Poly>>{{ONE, X}, {X, ONE}, {X + c(3), ONE - X}})
        EXPECT_TRUE(is_isotropic_flag({b, 1}, t1));
}

TEST(IsotropicFlag, CriteriaAgreeOnRandomFlags)
{
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<int> v(-2, 2);
    int isotropic = 0;
    for (int N : {2, 3, 4}) {
        FrameSeq t = FrameSeq::trivial(static_cast<std::size_t>(N), 1);
        auto w = witt_basis(polynomials_up_to(N, 1), t);
        for (int trial = 0; trial < 30; ++trial) {
            // lower-triangular changes keep isotropy, a stray upper entry usually breaks it
            std::vector<Poly> b = w;
            for (std::size_t k = 0; k < b.size(); ++k)
                for (std::size_t j = 0; j < k; ++j) b[k] += w[j] * Rational(v(rng));
            if (trial % 2) b[0] += w.back() * Rational(v(rng));
            if (span_rank(b) != b.size()) continue;
            isotropic += is_isotropic_flag({b, 1}, t);
        }
    }
    EXPECT_GT(isotropic, 40);
}

TEST(OneParamAction, IdentityAndC1Family)
{
    FrameSeq t = FrameSeq::trivial(2, 1);
    C1Triple tr = c1_population(ONE, Poly({q(1, 8), q(-1), q(1)}), 1);
    std::vector<Poly> u{tr.u1, tr.u2, tr.u3};
    EXPECT_EQ(one_param_action(u, 1, Rational(0), Kind::C, t, 1), u);
    for (const Rational& alpha : {q(0), q(1), q(-3), q(7, 2)}) {
        Poly s = X + c(alpha - q(1, 2));
        EXPECT_EQ(one_param_action(u, 1, -2 * alpha, Kind::C, t, 1)[0], s * s - c(q(1, 8)));
    }
    auto inf = one_param_action(u, 1, std::nullopt, Kind::C, t, 1);
    EXPECT_EQ(inf[0].degree(), 0);
    try {
        one_param_action(u, 2, Rational(1), Kind::C, t, 1);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "invalid_input");
    }
}

TEST(OneParamAction, BKindInfinitySwaps)
{
    FrameSeq t = FrameSeq::trivial(3, 1);
    auto w = witt_basis(polynomials_up_to(3, 1), t);
    auto s = one_param_action(w, 1, std::nullopt, Kind::B, t, 1);
    EXPECT_EQ(s, (std::vector<Poly>{w[1], -w[0], w[3], -w[2]}));
    for (int i = 1; i <= 2; ++i)
        for (long k : {-2L, 1L, 3L}) EXPECT_TRUE(check_witt(one_param_action(w, i, Rational(k), Kind::B, t, 1), t, 1));
    try {
        one_param_action(w, 1, Rational(1), Kind::C, t, 1);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "dimension_mismatch");
    }
}

TEST(BcMorphism, Examples)
{
    FrameSeq t = FrameSeq::trivial(2, 1);
    C1Triple tr = c1_population(ONE, Poly({q(1, 8), q(-1), q(1)}), 1);
    EXPECT_EQ(bc_generating_morphism({tr.u1, tr.u2, tr.u3}, t, Kind::C), PolyTuple{tr.u1});
    EXPECT_EQ(bc_generating_morphism(witt_basis(polynomials_up_to(2, 1), t), t, Kind::C), ones(1));
    FrameSeq t3 = FrameSeq::trivial(3, 1);
    EXPECT_EQ(bc_generating_morphism(witt_basis(polynomials_up_to(3, 1), t3), t3, Kind::B), ones(2));
    FrameSeq t4 = FrameSeq::trivial(4, 1);
    EXPECT_EQ(bc_generating_morphism(witt_basis(polynomials_up_to(4, 1), t4), t4, Kind::C), ones(2));
}

// After the action in direction i the morphism moves y_i inside the
// descendant pencil of direction i and fixes the other coordinates.
TEST(BcMorphism, ActionProducesDescendants)
{
    struct K {
        Kind kind;
        int N;
    };
    int checked = 0;
    for (const K& k : {K{Kind::B, 2}, K{Kind::C, 1}, K{Kind::C, 2}, K{Kind::B, 3}}) {
        InitialData d = InitialData::empty(k.kind, k.N, 1);
        const int dim = k.kind == Kind::B ? 2 * k.N : 2 * k.N + 1;
        FrameSeq t = FrameSeq::trivial(static_cast<std::size_t>(dim - 1), 1);
        std::vector<Poly> w = witt_basis(polynomials_up_to(dim - 1, 1), t);
        // walk a few steps so the start is not the trivial tuple
        std::vector<Poly> cur = w;
        for (int step = 0; step < 3; ++step) {
            const int i = 1 + step % k.N;
            cur = one_param_action(cur, i, Rational(step + 1), k.kind, t, 1);
        }
        PolyTuple y = bc_generating_morphism(cur, t, k.kind);
        ASSERT_TRUE(verify_critical(d, y).ok || !is_generic(d, y));
        for (int i = 1; i <= k.N; ++i)
            for (const std::optional<Rational>& s : {std::optional<Rational>(q(2)), std::optional<Rational>(q(-1, 3)), std::optional<Rational>()}) {
                PolyTuple z = bc_generating_morphism(one_param_action(cur, i, s, k.kind, t, 1), t, k.kind);
                for (int j = 1; j <= k.N; ++j)
                    if (j != i) {
                        EXPECT_EQ(z[static_cast<std::size_t>(j - 1)], y[static_cast<std::size_t>(j - 1)]);
                    }
                const Poly& zi = z[static_cast<std::size_t>(i - 1)];
                const Poly& yi = y[static_cast<std::size_t>(i - 1)];
                if (k.kind == Kind::C && i == k.N) {
                    EXPECT_TRUE(c1_contains(c_middle_family(d, y), zi));
                } else if (zi != yi) {
                    Poly wz = pairwise_w(yi, zi, 1);
                    Poly rhs = fertility_rhs(d, y, i);
                    ASSERT_FALSE(wz.is_zero());
                    EXPECT_EQ(wz * rhs.lead(), rhs * wz.lead());
                }
                ++checked;
            }
    }
    EXPECT_GT(checked, 20);
}
