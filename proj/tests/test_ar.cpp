#include <gtest/gtest.h>

#include "categories.hpp"
#include "figures.hpp"

using namespace extrikit;
using namespace extrikit::testing;

namespace {

// Category translate against the module-theoretic DTr on every non-projective.
void expect_tau_matches_modules(const ExtCategory& c)
{
    for (std::size_t x = 0; x < c.size(); ++x) {
        if (is_projective_module(c.underlying[x])) {
            EXPECT_TRUE(is_e_projective(c, x)) << c.labels[x];
            continue;
        }
        ObjList t = tau_object(c, x);
        ASSERT_EQ(t.size(), 1u) << c.labels[x];
        auto want = find_module(c, ar_translate(c.underlying[x]));
        ASSERT_TRUE(want) << c.labels[x];
        EXPECT_EQ(t[0], *want) << c.labels[x];
    }
}

}

TEST(AlmostSplit, TranslateMatchesModuleTheoryOnLinearA3)
{
    expect_tau_matches_modules(*ka3_modules());
}

TEST(AlmostSplit, TranslateMatchesModuleTheoryOnBlossom)
{
    expect_tau_matches_modules(*blossom_modules());
}

TEST(AlmostSplit, RefusesProjectiveEnd)
{
    const ExtCategory& c = *ka3_modules();
    EXPECT_THROW(almost_split_ending_at(c, c.at("1")), std::invalid_argument);
    EXPECT_THROW(almost_split_starting_at(c, c.at("3")), std::invalid_argument);
}

TEST(AlmostSplit, SplitClassIsRefused)
{
    const ExtCategory& c = *ka3_modules();
    std::size_t two = c.at("2"), one = c.at("1");
    ASSERT_EQ(c.e_dim(two, one), 1u);
    ExtClass zero{{two}, {one}, Vec(1)};
    AlmostSplitWitness w = is_almost_split(c, zero);
    EXPECT_FALSE(w.refusal.empty());
    ExtClass gen{{two}, {one}, Vec{Fp(1)}};
    EXPECT_TRUE(is_almost_split(c, gen).refusal.empty());
}

TEST(AlmostSplit, WitnessesAreIsomorphic)
{
    const ExtCategory& c = *ka3_slice();
    for (std::size_t x = 0; x < c.size(); ++x) {
        if (is_e_projective(c, x)) continue;
        auto w = almost_split_ending_at(c, x);
        ASSERT_TRUE(w) << c.labels[x];
        AlmostSplitWitness w2 = *w;
        for (auto& v : w2.cls.v) v = v * Fp(3);
        w2.conflation = c.realize(w2.cls);
        Morphism iso = compare_almost_split(c, *w, w2);
        EXPECT_EQ(iso.src, ObjList{x});
        EXPECT_TRUE(is_iso(c, iso)) << c.labels[x];
    }
}

TEST(ARS, DualityOnSliceAndRelative)
{
    for (auto cat : {ka3_slice(), ka3_relative(), ka3_relative_quotient(), blossom_eb()}) {
        ARSDuality d = ars_duality(*cat);
        Report r = verify_ars(*cat, d);
        for (auto& ch : r.checks) EXPECT_TRUE(ch.pass) << ch.name << " " << ch.witness;
    }
}

TEST(ARS, TranslateCountsNonProjectives)
{
    const ExtCategory& c = *ka3_slice();
    ARSDuality d = ars_duality(c);
    std::size_t nonproj = 0;
    for (std::size_t x = 0; x < c.size(); ++x) nonproj += !is_e_projective(c, x);
    EXPECT_EQ(d.tau.size(), nonproj);
    EXPECT_EQ(c.labels[d.tau.at(c.at("3/2/1[1]"))], "3");
}

TEST(ARS, BrokenStructureReportsMissingExtension)
{
    try {
        ars_duality(*broken_modules());
        FAIL() << "expected a failure";
    } catch (const std::runtime_error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("missing almost split extension at", 0), 0u) << e.what();
    }
}

TEST(ARQuiver, SliceMatchesDrawing)
{
    const ExtCategory& c = *ka3_slice();
    ARQuiver q = ar_quiver(c);
    EXPECT_TRUE(q.missing.empty());
    EXPECT_EQ(compare(slice_figure(), drawn_of(c, q)), "");
}

TEST(ARQuiver, RelativeQuotientMatchesDrawing)
{
    const ExtCategory& c = *ka3_relative_quotient();
    EXPECT_EQ(compare(relative_quotient_figure(), drawn_of(c, ar_quiver(c))), "");
}

TEST(Rigid, TwoTermRad2)
{
    const ExtCategory& c = *two_term_rad2();
    RigidResult r = rigid_and_mutation(c);
    // Support tau-tilting modules of 1 -> 2 -> 3 with radical square zero.
    EXPECT_EQ(r.rigid.size(), 12u);
    EXPECT_EQ(r.edges.size(), 18u);
    for (auto& u : r.rigid) {
        EXPECT_TRUE(is_rigid(c, u));
        EXPECT_EQ(u.size(), 3u);
    }
}

TEST(Rigid, BlossomQuotientHasTwelveWithEighteenExchanges)
{
    const ExtCategory& c = *blossom_eb();
    RigidResult r = rigid_and_mutation(c);
    EXPECT_EQ(r.rigid.size(), 12u);
    EXPECT_EQ(r.edges.size(), 18u);
    for (auto& u : r.rigid) EXPECT_EQ(u.size(), 3u);
    for (auto& e : r.edges) {
        std::set<std::size_t> a(r.rigid[e.from].begin(), r.rigid[e.from].end());
        std::set<std::size_t> b(r.rigid[e.to].begin(), r.rigid[e.to].end());
        std::vector<std::size_t> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        EXPECT_EQ(common.size(), 2u);
    }
}
