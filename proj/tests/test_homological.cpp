#include <gtest/gtest.h>

#include <random>
#include <set>

#include "extrikit/knit.hpp"
#include "fixtures.hpp"

using namespace extrikit;
using namespace extrikit::testing;

namespace {

Representation by_label(const ModuleCatalog& c, const std::string& l)
{
    for (std::size_t i = 0; i < c.labels.size(); ++i)
        if (c.labels[i] == l) return c.modules[i];
    throw std::runtime_error("no module " + l);
}

// dim Ext^1(C, A) from hom dimensions of the presentation sequence.
std::size_t ext_dim_oracle(const Representation& c, const Representation& a)
{
    auto pr = projective_presentation(c);
    return hom_basis(pr.omega, a).size() + hom_basis(c, a).size() - hom_basis(pr.p0, a).size();
}

const ModuleCatalog& blossom_catalog()
{
    static ModuleCatalog c = indecomposables(blossom());
    return c;
}

// Thin representations of a linear quiver with 3 vertices; indecomposable iff the support is an
// interval on which every arrow acts nonzero.
std::size_t thin_indecomposables(bool rad2)
{
    std::size_t count = 0;
    for (int mask = 1; mask < 8; ++mask) {
        int lo = 0;
        while (!(mask >> lo & 1)) ++lo;
        int hi = 2;
        while (!(mask >> hi & 1)) --hi;
        bool interval = true;
        for (int i = lo; i <= hi; ++i)
            if (!(mask >> i & 1)) interval = false;
        if (!interval) continue;
        if (rad2 && hi - lo == 2) continue;
        ++count;
    }
    return count;
}

}

TEST(Presentation, ProjectiveHasNoSyzygy)
{
    auto alg = ka3();
    for (int v = 0; v < 3; ++v) {
        auto pr = projective_presentation(projective(alg, v));
        EXPECT_TRUE(pr.p1.is_zero());
        EXPECT_EQ(pr.p0.dims, projective(alg, v).dims);
    }
}

TEST(Presentation, SimplesOverKA3)
{
    auto alg = ka3();
    auto s1 = projective_presentation(simple(alg, 0));
    EXPECT_EQ(s1.p0_vertices, (std::vector<int>{0}));
    EXPECT_TRUE(s1.p1_vertices.empty());
    auto s2 = projective_presentation(simple(alg, 1));
    EXPECT_EQ(s2.p0_vertices, (std::vector<int>{1}));
    EXPECT_EQ(s2.p1_vertices, (std::vector<int>{0}));
    EXPECT_TRUE(is_morphism(s2.p1, s2.p0, s2.d));
    EXPECT_TRUE(is_surjective_map(s2.cover));
    EXPECT_TRUE(compose(s2.cover, s2.d).is_zero());
}

TEST(Ext1, ProjectiveSourceVanishes)
{
    auto alg = blossom();
    for (std::size_t v = 0; v < alg->num_vertices(); ++v)
        for (std::size_t w = 0; w < alg->num_vertices(); ++w)
            EXPECT_EQ(ext1(projective(alg, int(v)), simple(alg, int(w))).dim(), 0u);
}

TEST(Ext1, TwoToOneOverKA3)
{
    auto alg = ka3();
    EXPECT_EQ(ext1(simple(alg, 1), simple(alg, 0)).dim(), 1u);
}

TEST(Ext1, S1ToS2OverRadSquare)
{
    auto alg = ka3_rad2();
    EXPECT_EQ(ext1(simple(alg, 0), simple(alg, 1)).dim(), 1u);
    EXPECT_EQ(ext_dim_oracle(simple(alg, 0), simple(alg, 1)), 1u);
}

TEST(Ext1, DimensionMatchesHomOracleOnBlossom)
{
    const auto& c = blossom_catalog();
    for (std::size_t i = 0; i < c.modules.size(); i += 3)
        for (std::size_t j = 0; j < c.modules.size(); j += 2)
            ASSERT_EQ(ext1(c.modules[i], c.modules[j]).dim(), ext_dim_oracle(c.modules[i], c.modules[j]));
}

TEST(Realize, ZeroClassSplits)
{
    auto alg = ka3();
    auto e = ext1(simple(alg, 1), simple(alg, 0));
    auto ses = realize(e, Vec(1));
    auto d = decompose(ses.b);
    EXPECT_EQ(d.size(), 2u);
}

TEST(Realize, GeneratorTwoToOne)
{
    auto alg = ka3();
    auto e = ext1(simple(alg, 1), simple(alg, 0));
    auto ses = realize(e, Vec{Fp(1)});
    EXPECT_TRUE(is_indecomposable(ses.b));
    EXPECT_EQ(module_label(ses.b), "2/1");
}

TEST(Realize, GeneratorS1S2OverRadSquare)
{
    auto alg = ka3_rad2();
    auto e = ext1(simple(alg, 0), simple(alg, 1));
    auto ses = realize(e, Vec{Fp(1)});
    ASSERT_TRUE(is_indecomposable(ses.b));
    EXPECT_TRUE(find_iso(ses.b, projective(alg, 0)).has_value());
}

TEST(Realize, ExactAndClassRoundTrip)
{
    const auto& c = blossom_catalog();
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(0, 100);
    int checked = 0;
    for (std::size_t i = 0; i < c.modules.size(); ++i)
        for (std::size_t j = 0; j < c.modules.size(); ++j) {
            auto e = ext1(c.modules[i], c.modules[j]);
            if (e.dim() == 0) continue;
            Vec x(e.dim());
            for (auto& v : x) v = Fp(d(rng));
            auto ses = realize(e, x);
            ASSERT_TRUE(is_morphism(ses.a, ses.b, ses.mono));
            ASSERT_TRUE(is_morphism(ses.b, ses.c, ses.epi));
            ASSERT_TRUE(is_injective_map(ses.mono));
            ASSERT_TRUE(is_surjective_map(ses.epi));
            ASSERT_TRUE(compose(ses.epi, ses.mono).is_zero());
            ASSERT_EQ(ses.b.total_dim(), ses.a.total_dim() + ses.c.total_dim());
            ASSERT_EQ(class_of(e, ses), x);
            ++checked;
        }
    EXPECT_GT(checked, 20);
}

TEST(Transport, IdentityAndZero)
{
    auto alg = ka3();
    auto c = simple(alg, 1), a = simple(alg, 0);
    auto e = ext1(c, a);
    Vec x{Fp(5)};
    EXPECT_EQ(transport(e, e, x, identity_morphism(a), identity_morphism(c)), x);
    EXPECT_EQ(transport(e, e, x, zero_morphism(a, a), identity_morphism(c)), Vec{Fp(0)});
}

TEST(Transport, PushforwardAndPullbackCommute)
{
    const auto& cat = blossom_catalog();
    std::mt19937 rng(12);
    int checked = 0;
    for (std::size_t ci = 0; ci < cat.modules.size(); ++ci)
        for (std::size_t ai = 0; ai < cat.modules.size(); ++ai) {
            auto e = ext1(cat.modules[ci], cat.modules[ai]);
            if (e.dim() == 0) continue;
            for (std::size_t c2 = 0; c2 < cat.modules.size(); c2 += 4)
                for (std::size_t a2 = 0; a2 < cat.modules.size(); a2 += 5) {
                    auto cs = hom_basis(cat.modules[c2], cat.modules[ci]);
                    auto as = hom_basis(cat.modules[ai], cat.modules[a2]);
                    if (cs.empty() || as.empty()) continue;
                    auto e_ca2 = ext1(e.pres, cat.modules[a2]);
                    auto e_c2a = ext1(cat.modules[c2], cat.modules[ai]);
                    auto e_c2a2 = ext1(e_c2a.pres, cat.modules[a2]);
                    for (auto& a : as)
                        for (auto& c : cs) {
                            Mat lhs = pushforward_matrix(e_c2a, e_c2a2, a) * pullback_matrix(e, e_c2a, c);
                            Mat rhs = pullback_matrix(e_ca2, e_c2a2, c) * pushforward_matrix(e, e_ca2, a);
                            ASSERT_EQ(lhs, rhs);
                            ++checked;
                        }
                }
        }
    EXPECT_GT(checked, 0);
}

TEST(Translate, KA3Oracles)
{
    auto alg = ka3();
    auto cat = indecomposables(alg);
    EXPECT_EQ(module_label(ar_translate(by_label(cat, "2"))), "1");
    EXPECT_EQ(module_label(ar_translate(by_label(cat, "3"))), "2");
    EXPECT_EQ(module_label(ar_translate(by_label(cat, "3/2"))), "2/1");
    EXPECT_THROW(ar_translate(projective(alg, 2)), std::invalid_argument);
    EXPECT_THROW(ar_translate_inv(injective(alg, 0)), std::invalid_argument);
}

TEST(Translate, RoundTripOnBlossom)
{
    const auto& cat = blossom_catalog();
    for (auto& m : cat.modules) {
        if (is_projective_module(m)) continue;
        auto t = ar_translate(m);
        ASSERT_TRUE(is_indecomposable(t));
        ASSERT_TRUE(find_iso(ar_translate_inv(t), m).has_value());
    }
}

TEST(Translate, BijectionNonProjectiveToNonInjective)
{
    for (auto alg : {ka3(), ka3_rad2(), blossom()}) {
        auto cat = indecomposables(alg);
        std::set<std::size_t> image;
        std::size_t nonproj = 0, noninj = 0;
        for (auto& m : cat.modules) {
            if (!is_injective_module(m)) ++noninj;
            if (is_projective_module(m)) continue;
            ++nonproj;
            auto idx = cat.find(ar_translate(m));
            ASSERT_TRUE(idx.has_value());
            EXPECT_FALSE(is_injective_module(cat.modules[*idx]));
            image.insert(*idx);
        }
        EXPECT_EQ(image.size(), nonproj);
        EXPECT_EQ(nonproj, noninj);
    }
}

TEST(Nakayama, VertexProjectives)
{
    auto alg = ka3();
    EXPECT_TRUE(find_iso(nakayama(projective(alg, 0)), injective(alg, 0)).has_value());
    auto sum = direct_sum(projective(alg, 0), projective(alg, 2));
    auto nu = nakayama(sum);
    auto d = decompose(nu);
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(nu.dims, direct_sum(injective(alg, 0), injective(alg, 2)).dims);
    EXPECT_THROW(nakayama(simple(alg, 1)), std::invalid_argument);
}

TEST(Nakayama, BlossomProjectiveInjectives)
{
    auto alg = blossom();
    for (auto v : {"a", "b", "d", "e"}) {
        int i = alg->quiver().vertex(v);
        auto p = projective(alg, i);
        EXPECT_TRUE(is_injective_module(p));
        EXPECT_TRUE(find_iso(nakayama(p), injective(alg, i)).has_value());
    }
}

TEST(Knitting, KA3CountMatchesThinOracle)
{
    auto cat = indecomposables(ka3());
    EXPECT_EQ(cat.modules.size(), thin_indecomposables(false));
    EXPECT_EQ(cat.modules.size(), 6u);
    for (auto& m : cat.modules)
        for (int d : m.dims) EXPECT_LE(d, 1);
}

TEST(Knitting, RadSquareCountMatchesThinOracle)
{
    auto cat = indecomposables(ka3_rad2());
    EXPECT_EQ(cat.modules.size(), thin_indecomposables(true));
    std::set<std::string> labels(cat.labels.begin(), cat.labels.end());
    EXPECT_EQ(labels, (std::set<std::string>{"1", "2", "3", "1/2", "2/3"}));
}

TEST(Knitting, BlossomHasFortyOneIndecomposables)
{
    const auto& cat = blossom_catalog();
    EXPECT_EQ(cat.modules.size(), 41u);
    std::set<std::string> labels(cat.labels.begin(), cat.labels.end());
    EXPECT_EQ(labels.size(), cat.labels.size());
    for (auto& m : cat.modules) EXPECT_TRUE(is_indecomposable(m));
}

TEST(Knitting, CapExceeded)
{
    EXPECT_THROW(indecomposables(blossom(), 10), std::runtime_error);
}

TEST(Knitting, ExtDimensionIndependentOfPresentationChoice)
{
    // Presentations built from a module and from an isomorphic copy with permuted basis agree.
    const auto& cat = blossom_catalog();
    for (std::size_t i = 0; i < cat.modules.size(); i += 5) {
        Representation m = cat.modules[i];
        Representation n = m;
        ModuleMorphism iso;
        for (std::size_t v = 0; v < m.nverts(); ++v) {
            Mat p(m.dims[v], m.dims[v]);
            for (int k = 0; k < m.dims[v]; ++k) p(k, (k + 1) % m.dims[v]) = Fp(1);
            iso.comps.push_back(p);
        }
        for (std::size_t a = 0; a < m.maps.size(); ++a) {
            auto [s, t] = m.shape->arrows[a];
            n.maps[a] = iso.comps[t] * m.maps[a] * *inverse(iso.comps[s]);
        }
        for (std::size_t j = 0; j < cat.modules.size(); j += 3)
            EXPECT_EQ(ext1(m, cat.modules[j]).dim(), ext1(n, cat.modules[j]).dim());
    }
}
