#include <gtest/gtest.h>

#include <random>

#include "weilres/iwahori.hpp"

using namespace weilres;

namespace {

IWGroupPtr split_group(const BasedRootDatum& d) { return IwahoriWeylGroup::build(GroupDatum::split(d.name(), d)); }

// all subwords of a reduced expression, times omega
std::set<WElement> subword_interval(const IwahoriWeylGroup& W, const WElement& y) {
    auto d = W.reduced_decomposition(y);
    std::set<WElement> out;
    const size_t n = d.word.size();
    for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
        WElement x = d.omega;
        for (size_t i = n; i-- > 0;)
            if (mask & (size_t(1) << i)) x = W.simple_mul(d.word[i], x);
        out.insert(x);
    }
    return out;
}

std::vector<WElement> ball(const IwahoriWeylGroup& W, int radius) {
    std::set<WElement> seen{W.identity()};
    std::vector<WElement> frontier{W.identity()};
    for (int r = 0; r < radius; ++r) {
        std::vector<WElement> next;
        for (const auto& x : frontier)
            for (int s = 0; s < W.num_nodes(); ++s) {
                WElement y = W.mul_simple(x, s);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = next;
    }
    return {seen.begin(), seen.end()};
}

} // namespace

TEST(Iwahori, FiniteWeylGroupSizes) {
    EXPECT_EQ(split_group(gl_datum(2))->w0_size(), 2);
    EXPECT_EQ(split_group(gl_datum(3))->w0_size(), 6);
    EXPECT_EQ(split_group(gl_datum(4))->w0_size(), 24);
    EXPECT_EQ(split_group(torus_datum(2))->w0_size(), 1);
    EXPECT_EQ(split_group(torus_datum(2))->num_nodes(), 0);
}

TEST(Iwahori, DominantTranslationLength) {
    auto W = split_group(gl_datum(3));
    for (IntVec lam : {IntVec{1, 0, 0}, IntVec{2, 1, 0}, IntVec{3, 3, -1}, IntVec{0, 0, 0}}) {
        auto t = W->translation(lam);
        EXPECT_EQ(W->length(t), W->height(lam));
        EXPECT_EQ(static_cast<Int>(W->reduced_decomposition(t).word.size()), W->length(t));
    }
}

TEST(Iwahori, LengthMatchesReducedWords) {
    for (auto d : {gl_datum(2), sl_datum(3), pgl_datum(3), gl_datum(3)}) {
        auto W = split_group(d);
        for (const auto& x : ball(*W, 5)) {
            auto dec = W->reduced_decomposition(x);
            EXPECT_EQ(static_cast<Int>(dec.word.size()), W->length(x));
            EXPECT_EQ(W->length(dec.omega), 0);
            EXPECT_EQ(W->from_word(dec.word, dec.omega), x);
            for (int s = 0; s < W->num_nodes(); ++s) {
                Int ls = W->length(W->mul_simple(x, s));
                EXPECT_EQ(ls > W->length(x), W->is_right_ascent(x, s));
                EXPECT_EQ(std::abs(ls - W->length(x)), 1);
            }
        }
    }
}

TEST(Iwahori, BruhatMatchesSubwords) {
    for (auto d : {gl_datum(2), sl_datum(3), gl_datum(3)}) {
        auto W = split_group(d);
        auto elems = ball(*W, 4);
        for (const auto& y : elems) {
            auto sub = subword_interval(*W, y);
            EXPECT_EQ(sub, W->lower_interval(y));
            for (const auto& x : elems) EXPECT_EQ(W->bruhat_leq(x, y), sub.count(x) > 0);
        }
    }
}

TEST(Iwahori, BruhatIsPartialOrderOnBalls) {
    for (auto d : {gl_datum(2), sl_datum(3), pgl_datum(3)}) {
        auto W = split_group(d);
        auto elems = ball(*W, 6);
        if (elems.size() > 180) elems.resize(180);
        for (const auto& x : elems) {
            EXPECT_TRUE(W->bruhat_leq(x, x));
            for (const auto& y : elems) {
                if (!(x == y) && W->bruhat_leq(x, y)) {
                    EXPECT_FALSE(W->bruhat_leq(y, x));
                }
                if (!W->bruhat_leq(x, y)) continue;
                for (const auto& z : elems)
                    if (W->bruhat_leq(y, z)) {
                        EXPECT_TRUE(W->bruhat_leq(x, z));
                    }
            }
        }
    }
}

TEST(Iwahori, MinusculeAdmissibleCount) {
    for (int n = 2; n <= 4; ++n) {
        auto W = split_group(gl_datum(n));
        IntVec mu(n, 0);
        mu[0] = 1;
        EXPECT_EQ(W->admissible_iwahori(mu).size(), (size_t(1) << n) - 1) << "GL" << n;
    }
}

TEST(Iwahori, KottwitzIsConstantOnAdmissibleSet) {
    auto W = split_group(gl_datum(3));
    IntVec mu{1, 1, 0};
    auto k = W->kottwitz(W->translation(mu));
    for (const auto& x : W->admissible_iwahori(mu)) EXPECT_EQ(W->kottwitz(x), k);
}

TEST(Iwahori, FacetValidation) {
    auto W = split_group(gl_datum(2));
    EXPECT_THROW(W->make_facet({0, 1}), ValidationError);
    EXPECT_NO_THROW(W->make_facet({1}));
    auto adm = W->admissible_set({1, 0}, W->special_facet());
    EXPECT_EQ(adm.size(), 1u);
}

TEST(Iwahori, OmegaNormalizesNodes) {
    auto W = split_group(gl_datum(3));
    auto gens = W->omega_generators();
    ASSERT_EQ(gens.size(), 1u);
    EXPECT_EQ(W->length(gens[0]), 0);
}

TEST(Iwahori, ParameterOverrideValidation) {
    auto g = GroupDatum::split("GL3", gl_datum(3));
    EXPECT_THROW(IwahoriWeylGroup::build(g, std::vector<int>{1, 2, 1}), ValidationError);
    EXPECT_NO_THROW(IwahoriWeylGroup::build(g, std::vector<int>{2, 2, 2}));
}

TEST(Iwahori, AdjointMorphismIsEquivariant) {
    auto G = split_group(gl_datum(3));
    auto [ad, p] = adjoint_group(GroupDatum::split("GL3", gl_datum(3)));
    auto A = IwahoriWeylGroup::build(ad);
    auto m = IWMorphism::from_cocharacter_map(G, A, p);
    for (const auto& x : ball(*G, 3))
        for (const auto& y : ball(*G, 2)) EXPECT_EQ(m.apply(G->mul(x, y)), A->mul(m.apply(x), m.apply(y)));
    for (int img : m.node_images()) EXPECT_GE(img, 0);
}
