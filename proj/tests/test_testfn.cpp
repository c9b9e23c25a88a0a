#include <gtest/gtest.h>

#include <random>

#include "weilres/testfn.hpp"

using namespace weilres;

namespace {

GroupDatum split(const BasedRootDatum& d, Int q = 4) { return GroupDatum::split(d.name(), d, q); }

TestFunction ss(const GroupDatum& g, const IntVec& mu, std::optional<Facet> f = std::nullopt) {
    auto W = IwahoriWeylGroup::build(g);
    return z_ss(W, LGroupRep::irreducible(g, mu), f ? *f : Facet{});
}

IntVec e0(int n) {
    IntVec v(n, 0);
    v[0] = 1;
    return v;
}

} // namespace

TEST(TestFn, TrivialRepresentation) {
    auto t = ss(split(gl_datum(2)), {0, 0});
    EXPECT_EQ(t.element, CycHecke::one(t.W));
    EXPECT_TRUE(check_integrality(t).integral);
}

TEST(TestFn, SplitTorusCharacter) {
    auto g = split(torus_datum(2));
    auto t = ss(g, {2, -1});
    EXPECT_EQ(t.element, CycHecke::basis(t.W, t.W->translation({2, -1})));
}

TEST(TestFn, GL2Minuscule) {
    auto t = ss(split(gl_datum(2)), {1, 0});
    ASSERT_EQ(t.bernstein.size(), 1u);
    EXPECT_EQ(t.bernstein.begin()->first, (IntVec{1, 0}));
    EXPECT_EQ(t.d, 1);
    EXPECT_EQ(t.parity, 1);
    auto rep = check_integrality(t);
    EXPECT_TRUE(rep.integral);
    auto sup = support_in_admissible(t, t.mu_lambda);
    EXPECT_TRUE(sup.contained);
    EXPECT_EQ(sup.admissible_size, 3u);
    std::mt19937_64 rng(1);
    for (int k = 0; k < 10; ++k) {
        auto chi = UnramifiedCharacter::random(t.W->relative(), rng);
        EXPECT_EQ(evaluate(t, chi), CycLaurent(direct_trace(t, chi)));
    }
}

TEST(TestFn, IntegralityGL2GL3Facets) {
    for (int n : {2, 3}) {
        auto g = split(gl_datum(n));
        auto W = IwahoriWeylGroup::build(g);
        for (auto f : {Facet{}, W->special_facet(), W->make_facet({1})}) {
            auto t = z_ss(W, LGroupRep::irreducible(g, e0(n)), f);
            auto rep = check_integrality(t);
            EXPECT_TRUE(rep.integral) << "GL" << n << " " << (rep.offending.empty() ? "" : rep.offending[0]);
            EXPECT_TRUE(support_in_admissible(t, t.mu_lambda).contained);
        }
    }
}

TEST(TestFn, HyperspecialGL2IsSphericalFunction) {
    // q^{1/2} z 1_K for GL2 is the characteristic function of K t^(1,0) K
    auto g = split(gl_datum(2));
    auto W = IwahoriWeylGroup::build(g);
    auto t = z_ss(W, LGroupRep::irreducible(g, {1, 0}), W->special_facet());
    auto rep = check_integrality(t);
    ASSERT_TRUE(rep.integral);
    for (const auto& [x, poly] : rep.q_coefficients) {
        ASSERT_EQ(poly.size(), 1u);
        EXPECT_EQ(poly[0].first, 0);
        EXPECT_EQ(poly[0].second, Cyclotomic(1));
    }
    EXPECT_EQ(rep.q_coefficients.size(), 4u); // W_0 t W_0
}

TEST(TestFn, RamifiedTorusAveraging) {
    for (int e : {2, 3}) {
        auto g = weil_restrict(split(torus_datum(1)), e, 1);
        auto W = IwahoriWeylGroup::build(g);
        auto V = LGroupRep::irreducible(g, e0(e));
        std::vector<CycHecke> fam;
        for (int k = 0; k < num_lifts(V); ++k) fam.push_back(z_phi(W, V, Facet{}, k).element);
        auto avg = average_over_inertia(fam, fam.size());
        auto t = z_ss(W, V, Facet{});
        EXPECT_EQ(avg, t.element);
        EXPECT_EQ(t.element.size(), 1u);
        EXPECT_EQ(fam[0], t.element.scaled(CycLaurent(Cyclotomic(e))));
    }
}

TEST(TestFn, RamifiedRestrictionMatchesBase) {
    // class of (mu0 | 0) is mu0; class of (mu0 | mu0) carries Sym^2 of the standard representation
    auto base = split(gl_datum(2), 4);
    auto res = weil_restrict(base, 2, 1);
    auto Wr = IwahoriWeylGroup::build(res);
    auto Wb = IwahoriWeylGroup::build(base);
    auto fwd = restriction_identification(Wr, Wb);
    auto back = restriction_identification_inverse(Wr, Wb);
    EXPECT_TRUE(fwd.is_isomorphism());
    for (auto [mu, mu0] : std::vector<std::pair<IntVec, IntVec>>{{{1, 0, 0, 0}, {1, 0}}, {{1, 0, 1, 0}, {2, 0}}}) {
        auto zr = z_ss(Wr, LGroupRep::irreducible(res, mu), Facet{});
        auto zb = z_ss(Wb, LGroupRep::irreducible(base, mu0), Facet{});
        EXPECT_EQ(pushforward(zr.element, fwd), zb.element);
        EXPECT_EQ(pushforward(zb.element, back), zr.element);
    }
}

TEST(TestFn, UnramifiedRestrictionMatchesBase) {
    auto base = split(gl_datum(2), 9);
    auto res = weil_restrict(base, 1, 2);
    auto Wr = IwahoriWeylGroup::build(res);
    auto Wb = IwahoriWeylGroup::build(base);
    auto fwd = restriction_identification(Wr, Wb);
    for (int s = 0; s < Wr->num_nodes(); ++s) EXPECT_EQ(Wr->node(s).param, 2 * Wb->node(fwd.node_images()[s]).param);
    auto zr = z_ss(Wr, LGroupRep::irreducible(res, {1, 0, 1, 0}), Facet{});
    auto zb = z_ss(Wb, LGroupRep::irreducible(base, {1, 0}), Facet{});
    EXPECT_EQ(pushforward(zb.element, restriction_identification_inverse(Wr, Wb), 2), zr.element);
    EXPECT_THROW(z_ss(Wr, LGroupRep::irreducible(res, {1, 0, 0, 0}), Facet{}), UnsupportedCase);
}

TEST(TestFn, AdjointTransport) {
    for (int n : {2, 3}) {
        auto r = adjoint_transport(split(gl_datum(n)), e0(n));
        EXPECT_TRUE(r.equal);
        EXPECT_TRUE(r.slice_bijective);
    }
}

TEST(TestFn, BaseChangeFactorCounts) {
    auto base = split(gl_datum(2), 16);
    auto quad = weil_restrict(base, 1, 2);
    auto d = reduce_unramified_base(quad, 2);
    EXPECT_EQ(d.factors.size(), 2u);
    auto mixed = weil_restrict(base, 2, 2);
    EXPECT_EQ(reduce_unramified_base(mixed, 2).factors.size(), 2u);
    EXPECT_EQ(reduce_unramified_base(mixed, 1).factors.size(), 1u);
    auto trivial = reduce_unramified_base(quad, 1);
    EXPECT_EQ(trivial.factors.size(), 1u);
    EXPECT_EQ(trivial.factors[0].degree, 2);
}

TEST(TestFn, ReassembledPowerTrace) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        int d = 1 + static_cast<int>(rng() % 2), n = 1 + static_cast<int>(rng() % 3), a = 1 + static_cast<int>(rng() % 3);
        CycMatrix A(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) A(i, j) = Cyclotomic(static_cast<Int>(rng() % 5) - 2);
        CycMatrix phi = boxtimes_frobenius(A, n), p = CycMatrix::identity(phi.rows());
        for (int k = 0; k < a; ++k) p = p * phi;
        EXPECT_EQ(p.trace(), reassembled_power_trace(A, n, a));
    }
}
