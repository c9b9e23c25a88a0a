#include <gtest/gtest.h>

#include "weilres/rootdata.hpp"

using namespace weilres;

TEST(RootData, SplitTypes) {
    EXPECT_EQ(gl_datum(3).num_roots(), 6);
    EXPECT_EQ(sl_datum(4).num_roots(), 12);
    EXPECT_EQ(pgl_datum(2).num_roots(), 2);
    auto rs = relative_root_data(GroupDatum::split("GL3", gl_datum(3)));
    EXPECT_EQ(rs.rank(), 2);
    EXPECT_EQ(rs.lattice().free_rank, 3);
    EXPECT_EQ(rs.pi1.group.describe(), "Z");
    for (int p : rs.params) EXPECT_EQ(p, 1);
    auto sl = relative_root_data(GroupDatum::split("SL2", sl_datum(2)));
    EXPECT_EQ(sl.pi1.group.dim(), 0);
    auto pgl = relative_root_data(GroupDatum::split("PGL2", pgl_datum(2)));
    EXPECT_EQ(pgl.pi1.group.describe(), "Z/2");
}

TEST(RootData, InvalidCartanRejected) {
    EXPECT_THROW(BasedRootDatum::make("bad", 2, {{1, 0}}, {{3, 0}}), ValidationError);
}

TEST(RootData, RamifiedQuadraticRestriction) {
    auto res = weil_restrict(GroupDatum::split("GL2", gl_datum(2), 4), 2, 1);
    auto rs = relative_root_data(res);
    EXPECT_EQ(rs.rank(), 1);
    EXPECT_EQ(rs.lattice().free_rank, 2);
    for (int p : rs.params) EXPECT_EQ(p, 1);
    EXPECT_EQ(res.galois.q, 4);
    EXPECT_EQ(res.galois.e, 2);
}

TEST(RootData, UnramifiedRestrictionParameters) {
    auto res = weil_restrict(GroupDatum::split("GL2", gl_datum(2), 9), 1, 2);
    EXPECT_EQ(res.galois.q, 3);
    auto rs = relative_root_data(res);
    EXPECT_EQ(rs.rank(), 1);
    for (int p : rs.params) EXPECT_EQ(p, 2);
    EXPECT_THROW(weil_restrict(GroupDatum::split("GL2", gl_datum(2), 8), 1, 2), ValidationError);
    EXPECT_THROW(weil_restrict(GroupDatum::split("GL2", gl_datum(2), 9), 1, 2, Int(2)), ValidationError);
}

TEST(RootData, NormOneTorusHasTorsion) {
    GaloisDescentDatum g = GaloisDescentDatum::trivial(1);
    g.inertia = {IntMatrix::from_rows({{-1}})};
    g.group_order = 2;
    auto t = GroupDatum::make("U1", torus_datum(1), g);
    auto rs = relative_root_data(t);
    EXPECT_EQ(rs.coinv.group.describe(), "Z/2");
    EXPECT_EQ(rs.pi1.group.describe(), "Z/2");
}

TEST(RootData, GaloisOrderMismatch) {
    GaloisDescentDatum g = GaloisDescentDatum::trivial(1);
    g.inertia = {IntMatrix::from_rows({{-1}})};
    g.group_order = 3;
    EXPECT_THROW(GroupDatum::make("U1", torus_datum(1), g), ValidationError);
}

TEST(RootData, NonOrthogonalOrbitsUnsupported) {
    // outer automorphism of A2 acting through inertia gives a non-reduced relative system
    GaloisDescentDatum g = GaloisDescentDatum::trivial(3);
    g.inertia = {IntMatrix::from_rows({{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}})};
    g.group_order = 2;
    auto u3 = GroupDatum::make("U3", gl_datum(3), g);
    EXPECT_THROW(relative_root_data(u3), UnsupportedCase);
}

TEST(RootData, AdjointProjection) {
    auto [ad, p] = adjoint_group(GroupDatum::split("GL3", gl_datum(3)));
    EXPECT_EQ(p, IntMatrix::from_rows({{1, -1, 0}, {0, 1, -1}}));
    EXPECT_EQ(ad.rank(), 2);
}
