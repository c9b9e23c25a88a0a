#include <gtest/gtest.h>

#include <random>

#include "weilres/hecke.hpp"

using namespace weilres;
using H = HeckeElement<ZZ>;
using P = Laurent<ZZ>;

namespace {

IWGroupPtr split_group(const BasedRootDatum& d) { return IwahoriWeylGroup::build(GroupDatum::split(d.name(), d)); }

WElement random_element(const IwahoriWeylGroup& W, std::mt19937_64& rng, int len) {
    WElement x = W.identity();
    for (int i = 0; i < len; ++i) x = W.mul_simple(x, static_cast<int>(rng() % W.num_nodes()));
    auto om = W.omega_generators();
    if (!om.empty() && rng() % 2) x = W.mul(x, om[0]);
    return x;
}

IntVec random_coweight(std::mt19937_64& rng, int dim, int bound) {
    IntVec v(dim);
    for (auto& x : v) x = static_cast<Int>(rng() % (2 * bound + 1)) - bound;
    return v;
}

} // namespace

TEST(Hecke, QuadraticRelation) {
    auto W = split_group(gl_datum(3));
    for (int s = 0; s < W->num_nodes(); ++s) {
        H t = H::basis(W, W->simple(s));
        H lhs = t * t;
        H rhs = t.scaled(P::quadratic_gap(1)) + H::one(W);
        EXPECT_EQ(lhs, rhs);
        EXPECT_EQ(t * basis_inverse<ZZ>(W, W->simple(s)), H::one(W));
    }
}

TEST(Hecke, UnequalParametersQuadratic) {
    auto W = IwahoriWeylGroup::build(GroupDatum::split("GL2", gl_datum(2)), std::vector<int>{3, 3});
    H t = H::basis(W, W->simple(1));
    EXPECT_EQ(t * t, t.scaled(P::quadratic_gap(3)) + H::one(W));
}

TEST(Hecke, AssociativityRandom) {
    std::mt19937_64 rng(5);
    for (auto d : {gl_datum(2), sl_datum(3), gl_datum(3)}) {
        auto W = split_group(d);
        for (int t = 0; t < 15; ++t) {
            H a = H::basis(W, random_element(*W, rng, 3)), b = H::basis(W, random_element(*W, rng, 3)),
              c = H::basis(W, random_element(*W, rng, 2));
            a += H::basis(W, random_element(*W, rng, 2), P::v_power(1));
            EXPECT_EQ((a * b) * c, a * (b * c));
        }
    }
}

TEST(Hecke, ThetaIsMultiplicative) {
    std::mt19937_64 rng(9);
    for (auto d : {gl_datum(2), sl_datum(3), gl_datum(3)}) {
        auto W = split_group(d);
        for (int t = 0; t < 10; ++t) {
            IntVec a = W->lattice().reduce(random_coweight(rng, W->lattice_dim(), 2));
            IntVec b = W->lattice().reduce(random_coweight(rng, W->lattice_dim(), 2));
            EXPECT_EQ(theta<ZZ>(W, a) * theta<ZZ>(W, b), theta<ZZ>(W, add(a, b)));
        }
    }
}

TEST(Hecke, AlcoveWalkMatchesBernstein) {
    std::mt19937_64 rng(13);
    for (auto d : {gl_datum(2), gl_datum(3), pgl_datum(3)}) {
        auto W = split_group(d);
        for (int t = 0; t < 10; ++t) {
            IntVec a = W->lattice().reduce(random_coweight(rng, W->lattice_dim(), 2));
            EXPECT_EQ(theta_alcove_walk<ZZ>(W, a), theta<ZZ>(W, a));
        }
    }
}

TEST(Hecke, OrbitSumsAreCentral) {
    auto W = split_group(gl_datum(3));
    for (IntVec lam : {IntVec{1, 0, 0}, IntVec{1, 1, 0}, IntVec{2, 0, -1}}) {
        auto z = bernstein_z<ZZ>(W, lam);
        EXPECT_TRUE(is_central(z));
        auto e = peel_central(z);
        ASSERT_EQ(e.size(), 1u);
        EXPECT_EQ(e.begin()->first, lam);
        EXPECT_EQ(e.begin()->second, P(1));
    }
    EXPECT_FALSE(is_central(H::basis(W, W->simple(1))));
}

TEST(Hecke, GL2MinusculeCoefficients) {
    // z_(1,0) = T_{t^(1,0)} + T_{t^(0,1)} + (v^{-1} - v) T_{t^(1,0) s}
    auto W = split_group(gl_datum(2));
    auto z = bernstein_z<ZZ>(W, {1, 0});
    EXPECT_EQ(z.size(), 3u);
    EXPECT_EQ(z.coeff(W->translation({1, 0})), P(1));
    EXPECT_EQ(z.coeff(W->translation({0, 1})), P(1));
    EXPECT_EQ(z.coeff(W->mul(W->translation({1, 0}), W->simple(1))) , P::v_power(-1) - P::v_power(1));
}

TEST(Hecke, ParahoricUnitIsQuasiIdempotent) {
    auto W = split_group(gl_datum(3));
    for (auto f : {W->special_facet(), W->make_facet({1}), W->make_facet({0, 2})}) {
        auto u = parahoric_unit<ZZ>(W, f);
        EXPECT_EQ(u * u, u.scaled(parahoric_poincare<ZZ>(W, f)));
    }
}
