#include <gtest/gtest.h>

#include <random>

#include "weilres/core/abelian_group.hpp"
#include "weilres/core/cyclotomic.hpp"
#include "weilres/core/laurent.hpp"

using namespace weilres;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int r, int c, int bound) {
    std::uniform_int_distribution<Int> d(-bound, bound);
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

Cyclotomic random_cyclotomic(std::mt19937_64& rng, int N) {
    std::uniform_int_distribution<long> d(-5, 5);
    std::vector<Rational> c(N);
    for (auto& x : c) {
        x = Rational(d(rng), 1 + std::abs(d(rng)));
        x.canonicalize();
    }
    return Cyclotomic::from_coefficients(N, c);
}

} // namespace

TEST(IntMatrix, SmithNormalFormProperty) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
        IntMatrix m = random_matrix(rng, r, c, 6);
        auto s = smith_normal_form(m);
        EXPECT_EQ(s.U * m * s.V, s.D);
        EXPECT_EQ(s.U * s.Uinv, IntMatrix::identity(r));
        EXPECT_TRUE(is_unimodular(s.V));
        for (int i = 0; i + 1 < s.rank; ++i) EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
        for (int i = 0; i < s.rank; ++i) EXPECT_GT(s.diagonal[i], 0);
    }
}

TEST(IntMatrix, KernelAndSolve) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        IntMatrix m = random_matrix(rng, 2, 4, 5);
        IntMatrix k = kernel_basis(m);
        EXPECT_TRUE((m * k).is_zero());
        IntVec x{static_cast<Int>(rng() % 7) - 3, 1, -2, 0};
        IntVec b = m.apply(x);
        auto sol = solve_integer(m, b);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(m.apply(*sol), b);
    }
    EXPECT_FALSE(solve_integer(IntMatrix::from_rows({{2, 0}}), IntVec{1}).has_value());
}

TEST(IntMatrix, OverflowIsDetected) {
    EXPECT_THROW(checked::mul(Int(1) << 40, Int(1) << 40), ComputeError);
}

TEST(AbelianGroup, CoinvariantsOfSwap) {
    auto q = coinvariants(2, {IntMatrix::from_rows({{0, 1}, {1, 0}})});
    EXPECT_EQ(q.group.free_rank, 1);
    EXPECT_TRUE(q.group.torsion.empty());
    auto neg = coinvariants(1, {IntMatrix::from_rows({{-1}})});
    EXPECT_EQ(neg.group.torsion, (std::vector<Int>{2}));
    EXPECT_EQ(neg.group.free_rank, 0);
}

TEST(AbelianGroup, TrivialActionKeepsCoordinates) {
    auto q = coinvariants(3, {IntMatrix::identity(3)});
    EXPECT_EQ(q.proj, IntMatrix::identity(3));
    auto inv = invariants(q.group, {IntMatrix::identity(3)});
    EXPECT_EQ(inv.embed, IntMatrix::identity(3));
}

TEST(AbelianGroup, InvariantsOfSwap) {
    AbelianGroup z2{{}, 2};
    auto inv = invariants(z2, {IntMatrix::from_rows({{0, 1}, {1, 0}})});
    EXPECT_EQ(inv.group.free_rank, 1);
    auto c = inv.coords_of(IntVec{3, 3});
    ASSERT_TRUE(c.has_value());
    EXPECT_FALSE(inv.coords_of(IntVec{1, 2}).has_value());
}

TEST(Cyclotomic, FieldAxiomsRandom) {
    std::mt19937_64 rng(3);
    for (int N : {1, 3, 4, 5, 6, 12}) {
        for (int t = 0; t < 20; ++t) {
            auto a = random_cyclotomic(rng, N), b = random_cyclotomic(rng, N), c = random_cyclotomic(rng, 2);
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ((a * b) * c, a * (b * c));
            if (!a.is_zero()) {
                EXPECT_EQ(a * a.inverse(), Cyclotomic(1));
            }
            EXPECT_EQ(Cyclotomic::parse(a.to_string()), a);
        }
    }
}

TEST(Cyclotomic, RootsOfUnity) {
    auto z = Cyclotomic::root_of_unity(6, 1);
    Cyclotomic p(1);
    for (int k = 0; k < 6; ++k) p *= z;
    EXPECT_EQ(p, Cyclotomic(1));
    Cyclotomic s;
    for (int k = 0; k < 5; ++k) s += Cyclotomic::root_of_unity(5, k);
    EXPECT_TRUE(s.is_zero());
    EXPECT_EQ(Cyclotomic::root_of_unity(4, 1) * Cyclotomic::root_of_unity(4, 1), Cyclotomic(-1));
    EXPECT_EQ(Cyclotomic::root_of_unity(2, 1) + Cyclotomic::root_of_unity(3, 0), Cyclotomic(0));
    EXPECT_EQ(Cyclotomic::root_of_unity(6, 2), Cyclotomic::root_of_unity(3, 1));
}

TEST(Laurent, RingLaws) {
    using P = Laurent<ZZ>;
    P a = P::v_power(2) - P::v_power(-1) + P(3);
    P b = P::quadratic_gap(1);
    P c = P::monomial(-3, ZZ(5));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a - a), P());
    EXPECT_EQ(b * b, P::v_power(2) - P(2) + P::v_power(-2));
    EXPECT_EQ(b.substitute_power(3), P::quadratic_gap(3));
    EXPECT_EQ(a.shifted(1).low(), 0);
}
