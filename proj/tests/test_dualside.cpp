#include <gtest/gtest.h>

#include <random>

#include "weilres/dualside.hpp"

using namespace weilres;

namespace {

GroupDatum ramified_torus(int e) { return weil_restrict(GroupDatum::split("Gm", torus_datum(1), 4), e, 1); }

CycMatrix random_matrix(std::mt19937_64& rng, int d) {
    CycMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            long a = static_cast<long>(rng() % 7) - 3;
            m(i, j) = rng() % 3 == 0 ? Cyclotomic::root_of_unity(3, static_cast<Int>(rng() % 3)).scaled(Rational(a))
                                     : Cyclotomic(Rational(a));
        }
    return m;
}

} // namespace

TEST(Dualside, TrivialAndAdjointA1) {
    auto d = sl_datum(2);
    auto triv = weight_multiplicities(d, {0});
    EXPECT_EQ(triv, (Character{{{0}, 1}}));
    // coroot basis: weight 1 is the simple coroot, giving the adjoint of the dual group
    auto adj = weight_multiplicities(d, {1});
    EXPECT_EQ(adj, (Character{{{1}, 1}, {{0}, 1}, {{-1}, 1}}));
    auto pgl = pgl_datum(2);
    auto adj2 = weight_multiplicities(pgl, {2});
    EXPECT_EQ(adj2, (Character{{{2}, 1}, {{0}, 1}, {{-2}, 1}}));
}

TEST(Dualside, A2AdjointZeroWeight) {
    auto d = sl_datum(3);
    // sl_datum has X_* = coroot lattice; the highest coroot is (1,1)
    auto c = weight_multiplicities(d, {1, 1});
    EXPECT_EQ(character_dimension(c), 8);
    EXPECT_EQ(c.at(IntVec{0, 0}), 2);
}

TEST(Dualside, FreudenthalMatchesWeylCharacter) {
    std::vector<BasedRootDatum> data{sl_datum(2), sl_datum(3), gl_datum(3), pgl_datum(3),
                                     simply_connected_datum("B2", cartan_matrix('B', 2)),
                                     simply_connected_datum("G2", cartan_matrix('G', 2))};
    for (const auto& d : data) {
        const int r = d.rank();
        std::vector<IntVec> cands;
        IntVec v(r, -2);
        while (true) {
            cands.push_back(v);
            int i = 0;
            while (i < r && v[i] == 3) v[i++] = -2;
            if (i == r) break;
            ++v[i];
        }
        for (const auto& mu : cands) {
            if (!d.is_dominant(mu) || dot(d.two_rho(), mu) > 8) continue;
            auto f = weight_multiplicities(d, mu);
            EXPECT_EQ(f, weyl_character(d, mu)) << d.name();
            EXPECT_EQ(Rational(static_cast<long>(character_dimension(f))), weyl_dimension(d, mu)) << d.name();
        }
    }
}

TEST(Dualside, NonDominantRejected) { EXPECT_THROW(weight_multiplicities(gl_datum(2), {0, 1}), ValidationError); }

TEST(Dualside, ParityGL2) {
    auto r = LGroupRep::irreducible(GroupDatum::split("GL2", gl_datum(2)), {1, 0});
    EXPECT_EQ(parity(r), 1);
    EXPECT_EQ(trace_frobenius(r), Cyclotomic(2));
    auto t = LGroupRep::irreducible(GroupDatum::split("GL2", gl_datum(2)), {0, 0});
    EXPECT_EQ(parity(t), 0);
    EXPECT_EQ(trace_frobenius(t), Cyclotomic(1));
}

TEST(Dualside, SwapInvariants) {
    auto g = ramified_torus(2);
    auto rs = relative_root_data(g);
    auto r = LGroupRep::irreducible(g, {1, 0});
    EXPECT_EQ(r.dim(), 2);
    auto inv = inertia_invariants(r, rs);
    ASSERT_EQ(inv.size(), 1u);
    EXPECT_EQ(inv[0].dim, 1);
    EXPECT_EQ(invariant_dimension_by_characters(r), Cyclotomic(1));
}

TEST(Dualside, TorusScalarAveraging) {
    for (int e : {2, 3}) {
        auto g = ramified_torus(e);
        auto rs = relative_root_data(g);
        IntVec mu(e, 0);
        mu[0] = 1;
        auto r = LGroupRep::irreducible(g, mu);
        std::vector<Cyclotomic> fam;
        IntVec omega;
        for (int k = 0; k < num_lifts(r); ++k) {
            auto [w, s] = torus_test_scalar(r, rs, k);
            if (k == 0) omega = w;
            EXPECT_EQ(w, omega);
            fam.push_back(s);
        }
        EXPECT_EQ(fam[0], Cyclotomic(e));
        auto avg = average_over_inertia(fam, static_cast<size_t>(num_lifts(r)));
        auto inv = invariant_trace_function(r, rs);
        ASSERT_EQ(inv.size(), 1u);
        EXPECT_EQ(avg, inv.begin()->second);
        EXPECT_THROW(average_over_inertia(std::vector<Cyclotomic>{fam[0]}, fam.size()), ValidationError);
    }
}

TEST(Dualside, NormOneTorusTorsionClass) {
    GaloisDescentDatum gd = GaloisDescentDatum::trivial(1);
    gd.inertia = {IntMatrix::from_rows({{-1}})};
    gd.group_order = 2;
    auto g = GroupDatum::make("U1", torus_datum(1), gd);
    auto rs = relative_root_data(g);
    auto r = LGroupRep::irreducible(g, {1});
    auto avg = average_over_inertia({trace_function(r, rs, 0), trace_function(r, rs, 1)}, 2);
    EXPECT_EQ(avg, invariant_trace_function(r, rs));
    ASSERT_EQ(avg.size(), 1u);
    EXPECT_EQ(avg.begin()->first, IntVec{1});
}

TEST(Dualside, BoxtimesTraceIdentity) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
        int d = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 3);
        CycMatrix B = random_matrix(rng, d);
        CycMatrix A = CycMatrix::identity(d);
        for (int i = 0; i < n; ++i) A = A * B;
        EXPECT_EQ(boxtimes_frobenius(A, n).trace(), A.trace());
        EXPECT_EQ(gamma_induced_frobenius(A, n).trace(), n == 1 ? A.trace() : Cyclotomic(0));
    }
    // swap on V0 (x) V0 has trace dim V0
    EXPECT_EQ(boxtimes_frobenius(CycMatrix::identity(3), 2).trace(), Cyclotomic(3));
}

TEST(Dualside, FieldMatrixLeftInverse) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        CycMatrix m = random_matrix(rng, 3);
        if (m.rank() < 3) continue;
        EXPECT_EQ(m.left_inverse() * m, CycMatrix::identity(3));
        EXPECT_EQ(m * m.inverse(), CycMatrix::identity(3));
    }
}
