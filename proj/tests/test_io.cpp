#include <gtest/gtest.h>

#include <random>

#include "weilres/io/descriptor.hpp"
#include "weilres/io/json.hpp"

using namespace weilres;

namespace {

const std::filesystem::path kDir = WEILRES_DESCRIPTOR_DIR;

std::string error_of(const std::string& text) {
    try {
        parse_descriptor(text, kDir);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

const char* kGL2 = R"(
name = "GL2"
[root_datum]
rank = 2
simple_roots = [[1, -1]]
simple_coroots = [[1, -1]]
)";

CycHecke random_element(const IWGroupPtr& W, std::mt19937_64& rng) {
    CycHecke h(W);
    for (int k = 0; k < 6; ++k) {
        IntVec lam(W->lattice_dim());
        for (auto& x : lam) x = static_cast<Int>(rng() % 5) - 2;
        WElement x = W->mul(W->translation(lam), W->finite(static_cast<int>(rng() % static_cast<unsigned>(W->w0_size()))));
        Cyclotomic c = rng() % 2 ? Cyclotomic(Rational(static_cast<long>(rng() % 9) - 4, 3))
                                 : Cyclotomic::root_of_unity(5, static_cast<Int>(rng() % 5));
        h.add_term(x, CycLaurent::monomial(static_cast<int>(rng() % 7) - 3, c));
    }
    return h;
}

} // namespace

TEST(Descriptor, ShippedLibraryLoads) {
    size_t n = 0;
    for (const auto& e : std::filesystem::directory_iterator(kDir)) {
        if (e.path().extension() != ".toml") continue;
        auto gd = load_descriptor(e.path());
        EXPECT_FALSE(gd.name.empty());
        EXPECT_NO_THROW(gd.iwahori_weyl()) << e.path();
        ++n;
    }
    EXPECT_GE(n, 20u);
}

TEST(Descriptor, SplitMatchesBuiltin) {
    auto gd = parse_descriptor(kGL2);
    EXPECT_EQ(gd.group.root_datum, gl_datum(2));
    EXPECT_TRUE(gd.group.galois.is_trivial());
    EXPECT_EQ(gd.group.galois.group_order, 1);
}

TEST(Descriptor, RestrictionMatchesBuiltin) {
    auto gd = load_descriptor(kDir / "res2_gl2.toml");
    auto base = load_descriptor(kDir / "gl2.toml");
    auto direct = weil_restrict(base.group, 2, 1);
    EXPECT_EQ(gd.group.root_datum.simple_roots(), direct.root_datum.simple_roots());
    EXPECT_EQ(gd.group.galois.inertia, direct.galois.inertia);
    EXPECT_EQ(gd.group.galois.frobenius, direct.galois.frobenius);
    ASSERT_TRUE(gd.group.base);
    EXPECT_EQ(gd.group.restriction_e, 2);
}

TEST(Descriptor, ErrorsNameTheField) {
    EXPECT_NE(error_of(std::string(kGL2) + "pairing = [[2, 0], [0, 1]]\n").find("pairing"), std::string::npos);
    EXPECT_NE(error_of("[root_datum]\nrank = 2\nsimple_roots = [[1, -1, 0]]\nsimple_coroots = [[1, -1]]\n").find("root_datum.simple_roots[0]"),
              std::string::npos);
    EXPECT_NE(error_of("[root_datum]\nsimple_roots = []\n").find("root_datum.rank"), std::string::npos);
    EXPECT_NE(error_of(std::string(kGL2) + "[galois]\ninertia = [[[1, 1], [0, 1]]]\n").find("galois"), std::string::npos);
    EXPECT_NE(error_of(std::string(kGL2) + "[galois]\norder = 3\ninertia = [[[0, 1], [1, 0]]]\n").find("galois.order"), std::string::npos);
    EXPECT_NE(error_of(std::string(kGL2) + "[field]\nq = 1\n").find("field.q"), std::string::npos);
    EXPECT_NE(error_of(std::string(kGL2) + "[[representation]]\nhighest_weight = [1]\n").find("representation[0].highest_weight"),
              std::string::npos);
    EXPECT_NE(error_of(std::string(kGL2) + "[restriction]\nbase = \"gl2.toml\"\n").find("exactly one"), std::string::npos);
    EXPECT_NE(error_of("[restriction]\nbase = \"gl2.toml\"\ne = 1\nf = 4\n").find("restriction"), std::string::npos);
    EXPECT_NE(error_of("name = [").find("TOML syntax error"), std::string::npos);
    EXPECT_THROW(load_descriptor(kDir / "no_such_file.toml"), ValidationError);
}

TEST(Descriptor, ExplicitRepresentationMatchesIrreducible) {
    auto gd = load_descriptor(kDir / "gl3_special.toml");
    auto W = gd.iwahori_weyl();
    ASSERT_EQ(gd.representations.size(), 1u);
    auto f = gd.facet(*W);
    EXPECT_EQ(f, W->special_facet());
    auto a = z_ss(W, gd.representations[0].build(gd.group), f);
    auto b = z_ss(W, LGroupRep::irreducible(gd.group, {1, 0, 0}), f);
    EXPECT_EQ(a.element, b.element);
}

TEST(Descriptor, ProductTraceFunctionsFactor) {
    auto prod = load_descriptor(kDir / "gl2xgl2.toml");
    auto fac = load_descriptor(kDir / "gl2.toml");
    auto rs = relative_root_data(prod.group);
    auto rs1 = relative_root_data(fac.group);
    auto t = trace_function(LGroupRep::irreducible(prod.group, {1, 0, 1, 0}), rs, 0);
    auto t1 = trace_function(LGroupRep::irreducible(fac.group, {1, 0}), rs1, 0);
    TraceFunction expect;
    for (const auto& [a, x] : t1)
        for (const auto& [b, y] : t1) expect[{a[0], a[1], b[0], b[1]}] = x * y;
    EXPECT_EQ(t, expect);
}

TEST(Json, ScalarEncoding) {
    EXPECT_EQ(scalar_to_json(Cyclotomic(3)), Json(3));
    EXPECT_EQ(scalar_to_json(Cyclotomic(Rational(1, 2))), Json("1/2"));
    auto z = Cyclotomic::root_of_unity(3, 1);
    EXPECT_EQ(scalar_from_json(scalar_to_json(z)), z);
    EXPECT_THROW(scalar_from_json(Json(1.5)), ValidationError);
}

TEST(Json, HeckeRoundTripIsBitExact) {
    std::mt19937_64 rng(11);
    for (const char* file : {"gl2.toml", "gl3.toml", "res2_gl2.toml", "torus_norm1.toml", "pgl3.toml"}) {
        auto W = load_descriptor(kDir / file).iwahori_weyl();
        for (int k = 0; k < 10; ++k) {
            CycHecke h = random_element(W, rng);
            std::string text = hecke_to_json(h).dump();
            CycHecke back = hecke_from_json(W, Json::parse(text));
            EXPECT_EQ(back, h) << file;
            EXPECT_EQ(hecke_to_json(back).dump(), text);
        }
    }
}

TEST(Json, MalformedHeckeRejected) {
    auto W = load_descriptor(kDir / "gl2.toml").iwahori_weyl();
    EXPECT_THROW(hecke_from_json(W, Json::parse(R"([{"reduced_word":[7],"omega_label":[0],"coeffs":[]}])")), ValidationError);
    EXPECT_THROW(hecke_from_json(W, Json::parse(R"([{"reduced_word":[1,1],"omega_label":[0],"coeffs":[[0,1]]}])")), ValidationError);
    EXPECT_THROW(hecke_from_json(W, Json::parse(R"([{"reduced_word":[],"omega_label":[0,0],"coeffs":[[0,1]]}])")), ValidationError);
}

TEST(Json, TestFunctionReingests) {
    for (const char* file : {"gl2.toml", "gl3_special.toml", "res2_gl2.toml", "torus_res3.toml"}) {
        auto gd = load_descriptor(kDir / file);
        auto W = gd.iwahori_weyl();
        auto t = z_ss(W, gd.representations[0].build(gd.group), gd.facet(*W));
        for (auto basis : {BasisChoice::bernstein, BasisChoice::iwahori_matsumoto}) {
            Json j = testfn_to_json(t, basis);
            Json again = Json::parse(j.dump());
            EXPECT_EQ(testfn_element_from_json(W, again), t.element) << file;
            EXPECT_EQ(testfn_to_json(t, basis).dump(), j.dump());
            EXPECT_EQ(j["integrality_report"]["status"], "pass");
            EXPECT_EQ(j["admissible_check"]["status"], "pass");
        }
        EXPECT_EQ(bernstein_from_json(*W, bernstein_to_json(*W, t.bernstein)), t.bernstein);
    }
}
