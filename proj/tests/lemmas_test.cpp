#include "instances.hpp"
#include "ofdef/error.hpp"
#include "ofdef/lemmas.hpp"

#include <gtest/gtest.h>

using namespace ofdef;
using namespace ofdef::testing;

namespace {

FractionalIdeal rational_ideal(const RankOneInstance& inst, long n)
{
    return FractionalIdeal::principal(FieldElement::from_rational(inst.top(), n));
}

} // namespace

TEST(CoordinateBound, ConfiguredExponentPassesBothHypothesisVariants)
{
    const auto& inst = golden_config();
    for (bool with_mu : {true, false}) {
        const LemmaReport rep = check_coordinate_bound_sample(inst, inst.c, with_mu, 3);
        EXPECT_EQ(rep.verdict(), Verdict::Pass) << rep.to_json().dump();
        EXPECT_EQ(rep.constants["observed_least_integer_c"], 4);
    }
}

TEST(CoordinateBound, ExponentOneIsRefuted)
{
    const LemmaReport rep = check_coordinate_bound_sample(golden_config(), 1, false, 3);
    EXPECT_EQ(rep.verdict(), Verdict::Fail);
}

TEST(CoordinateBound, UnmetHypothesisIsInconclusive)
{
    const auto& inst = golden_config();
    const FieldElement mu = FieldElement::generator(inst.top());
    const LemmaReport rep = check_coordinate_bound(inst, mu, rational_ideal(inst, 7), inst.c, false);
    EXPECT_EQ(rep.verdict(), Verdict::Inconclusive);
}

TEST(Descent, ConfiguredConstantSurvives)
{
    const auto& inst = golden_config();
    const LemmaReport rep = check_descent(inst, inst.c_prime, 3, 50);
    EXPECT_EQ(rep.verdict(), Verdict::Pass);
    EXPECT_EQ(rep.constants["largest_surviving_c_prime"], "25");
}

TEST(Descent, ConstantAboveSurvivingValueIsRefuted)
{
    EXPECT_EQ(check_descent(golden_config(), 26, 3, 50).verdict(), Verdict::Fail);
}

TEST(Growth, HoldsUpToFive)
{
    const LemmaReport rep = check_denominator_growth(golden_config(), 5);
    EXPECT_EQ(rep.verdict(), Verdict::Pass);
    EXPECT_EQ(rep.constants["norm_den_x_P"], "10000");
    for (long m : {2, -2, 3, -3, 4, -4, 5, -5})
        EXPECT_NE(rep.find("m=" + std::to_string(m)), nullptr) << m;
}

TEST(Growth, BareGeneratorFailsPrecondition)
{
    const LemmaReport rep = check_denominator_growth(bare_generator_config(), 5);
    ASSERT_NE(rep.find("den-nontrivial"), nullptr);
    EXPECT_EQ(rep.find("den-nontrivial")->verdict, Verdict::Fail);
    EXPECT_EQ(rep.verdict(), Verdict::Fail);
}

TEST(MultipleDivisibility, TableIsDivisibility)
{
    const LemmaReport rep = check_multiple_divisibility(golden_config(), 6);
    EXPECT_EQ(rep.verdict(), Verdict::Pass);
    EXPECT_EQ(rep.constants["if_direction_failures"], 0);
    EXPECT_EQ(rep.constants["only_if_direction_failures"], 0);
}

TEST(MultipleDivisibility, IfDirectionHoldsWithoutRankData)
{
    const LemmaReport rep = check_multiple_divisibility(gaussian_config(), 6);
    EXPECT_EQ(rep.constants["if_direction_failures"], 0);
}

TEST(PointSearch, LeastMultiples)
{
    const auto& inst = golden_config();
    EXPECT_EQ(find_point_with_denominator(inst, rational_ideal(inst, 2), 50).k, 1);
    EXPECT_EQ(find_point_with_denominator(inst, rational_ideal(inst, 3), 50).k, 3);
    EXPECT_EQ(find_point_with_denominator(inst, rational_ideal(inst, 30), 50).k, 3);
    EXPECT_EQ(find_point_with_denominator(inst, rational_ideal(inst, 110), 50).k, 6);
    EXPECT_EQ(find_point_with_denominator(inst, rational_ideal(inst, 306), 50).k, 9);
}

TEST(PointSearch, BoundExceeded)
{
    const auto& inst = golden_config();
    try {
        find_point_with_denominator(inst, rational_ideal(inst, 306), 8);
        FAIL() << "expected BoundExceeded";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BoundExceeded);
    }
}

TEST(PointSearch, SuiteOnDefaultIdeals)
{
    const auto& inst = golden_config();
    const LemmaReport rep = check_point_with_denominator(inst, default_probe_ideals(inst), 50, 12);
    EXPECT_EQ(rep.verdict(), Verdict::Pass);
}

TEST(QuotientCongruence, HoldsUpToFive)
{
    const LemmaReport rep = check_quotient_congruence(golden_config(), 5);
    EXPECT_EQ(rep.verdict(), Verdict::Pass);
    EXPECT_EQ(rep.cases.size() >= 10, true);
}

TEST(GISubgroup, Patterns)
{
    const auto& inst = golden_config();
    const LemmaReport two = probe_GI_subgroup(inst, rational_ideal(inst, 2), 12);
    const LemmaReport three = probe_GI_subgroup(inst, rational_ideal(inst, 3), 12);
    EXPECT_EQ(two.verdict(), Verdict::Pass);
    EXPECT_EQ(three.verdict(), Verdict::Pass);
    EXPECT_EQ(three.cases.front().witness["members"], Json({3, 6, 9, 12}));
}

TEST(GISubgroup, EmptyPatternIsInconclusive)
{
    const auto& inst = golden_config();
    EXPECT_EQ(probe_GI_subgroup(inst, rational_ideal(inst, 7), 2).verdict(), Verdict::Inconclusive);
}

TEST(Suites, AllTagsPassOnCuratedInstance)
{
    for (const auto& rep : run_lemma_suites(golden_config(), lemma_tags()))
        EXPECT_EQ(rep.verdict(), Verdict::Pass) << rep.lemma;
}

TEST(Suites, ReportsAreDeterministic)
{
    const auto a = run_lemma_suites(golden_config(), {"growth", "quotient"});
    const auto b = run_lemma_suites(golden_config(), {"growth", "quotient"});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(a[i].to_json().dump(), b[i].to_json().dump());
}
