#include "fields.hpp"

#include "ofdef/error.hpp"
#include "ofdef/ideal.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ofdef;
using namespace ofdef::testing;

namespace {

FractionalIdeal pr(const FieldPtr& K, std::vector<Rat> c) { return FractionalIdeal::principal(el(K, std::move(c))); }
FractionalIdeal pq(const FieldPtr& K, Rat v) { return FractionalIdeal::principal(q(K, v)); }

FieldElement random_integral(const FieldPtr& K, std::mt19937_64& rng, long box)
{
    std::vector<Rat> c(K->degree());
    do {
        for (auto& v : c)
            v = Rat(static_cast<long>(rng() % (2 * box + 1)) - box);
    } while (FieldElement::from_integral_coords(K, c).is_zero());
    return FieldElement::from_integral_coords(K, c);
}

FieldElement random_nonzero(const FieldPtr& K, std::mt19937_64& rng, long box)
{
    const auto a = random_integral(K, rng, box);
    const auto b = random_integral(K, rng, box);
    return a / b;
}

} // namespace

TEST(Ideal, Generators)
{
    const auto Q = NumberField::rationals();
    EXPECT_TRUE(FractionalIdeal::from_generators({q(Q, 2), q(Q, 3)}).is_unit());
    EXPECT_TRUE(FractionalIdeal::from_generators({FieldElement::zero(Q)}).is_zero());

    const auto K = gaussian();
    const auto I = pr(K, {Rat(1), Rat(1)});
    IntMatrix h(2, 2);
    h(0, 0) = 1; h(1, 0) = 1; h(1, 1) = 2;
    EXPECT_EQ(I.hnf(), h);
    EXPECT_EQ(I.denominator(), 1);
    EXPECT_EQ(I.norm(), Rat(2));
}

TEST(Ideal, Combine)
{
    const auto Q = NumberField::rationals();
    EXPECT_TRUE((pq(Q, 2) + pq(Q, 3)).is_unit());
    EXPECT_EQ(pq(Q, 2) * pq(Q, 3), pq(Q, 6));
    EXPECT_EQ(quotient(pq(Q, 4), pq(Q, 2)), pq(Q, 2));
    EXPECT_EQ(intersection(pq(Q, 4), pq(Q, 6)), pq(Q, 12));
    EXPECT_EQ(combine(pq(Q, 4), pq(Q, 6), IdealOp::Sum), pq(Q, 2));
    EXPECT_THROW(quotient(pq(Q, 4), FractionalIdeal::zero(Q)), Error);
}

TEST(Ideal, Divides)
{
    const auto Q = NumberField::rationals();
    EXPECT_TRUE(divides(pq(Q, 2), pq(Q, 4)));
    EXPECT_FALSE(divides(pq(Q, 3), pq(Q, 2)));
    EXPECT_TRUE(divides(pq(Q, 3), FractionalIdeal::zero(Q)));
    const auto K = gaussian();
    EXPECT_TRUE(divides(pr(K, {Rat(1), Rat(1)}), pq(K, 2)));
    EXPECT_FALSE(divides(pq(K, 2), pr(K, {Rat(1), Rat(1)})));
}

TEST(Ideal, DenNum)
{
    const auto Q = NumberField::rationals();
    EXPECT_EQ(den_ideal(q(Q, Rat(1, 2))), pq(Q, 2));
    EXPECT_TRUE(den_ideal(q(Q, 7)).is_unit());
    EXPECT_TRUE(den_ideal(FieldElement::zero(Q)).is_unit());
    EXPECT_TRUE(num_ideal(FieldElement::zero(Q)).is_zero());
    EXPECT_EQ(num_ideal(q(Q, Rat(4, 3))), pq(Q, 4));

    const auto K = gaussian();
    EXPECT_EQ(den_ideal(el(K, {Rat(1, 2), Rat(-1, 2)})), pr(K, {Rat(1), Rat(1)}));
    EXPECT_EQ(num_ideal(el(K, {Rat(1), Rat(1)})), pr(K, {Rat(1), Rat(1)}));
}

TEST(Ideal, Norms)
{
    const auto K = gaussian();
    EXPECT_EQ(pq(K, 2).norm(), Rat(4));
    EXPECT_EQ(FractionalIdeal::unit(K).norm(), Rat(1));
    EXPECT_EQ(FractionalIdeal::zero(K).norm(), Rat(0));
    EXPECT_EQ(pq(K, Rat(1, 3)).norm(), Rat(1, 9));
}

TEST(Ideal, PropertiesOverSyntheticFields)
{
    std::mt19937_64 rng(21);
    for (const auto& K : {gaussian(), sqrt5(), golden()})
        for (int trial = 0; trial < 60; ++trial) {
            const auto a = random_integral(K, rng, 6);
            const auto b = random_integral(K, rng, 6);
            const auto t = random_nonzero(K, rng, 5);
            const auto I = FractionalIdeal::from_generators({a, b});
            const auto J = FractionalIdeal::principal(b);

            // norms
            EXPECT_EQ((I * J).norm(), I.norm() * J.norm());
            EXPECT_EQ(FractionalIdeal::principal(a).norm(), abs(a.norm()));

            // den/num duality
            EXPECT_EQ(num_ideal(t), den_ideal(t.inverse()));
            EXPECT_EQ(FractionalIdeal::principal(t), num_ideal(t) * inverse(den_ideal(t)));
            EXPECT_TRUE(den_ideal(t).is_integral());
            EXPECT_TRUE((den_ideal(t) * FractionalIdeal::principal(t)).is_integral());

            // quotient and inverse
            EXPECT_EQ(quotient(I * J, J), I);
            EXPECT_TRUE((I * inverse(I)).is_unit());
            EXPECT_EQ(intersection(I, J) * (I + J), I * J);

            // divisibility agrees with factorization; Kummer-Dedekind refuses
            // 2 in Z[sqrt5], so only ideals prime to the index are compared.
            if (gcd((I * J).norm().get_num(), K->power_order_index()) != 1)
                continue;
            const auto fi = factor(I);
            EXPECT_EQ(fi.product(K), I);
            bool by_exponents = true;
            for (const auto& [p, e] : fi.factors)
                if (valuation(p, J) < e)
                    by_exponents = false;
            EXPECT_EQ(divides(I, J), by_exponents);
            EXPECT_EQ(ideal_sqrt(I * I), I);
        }
}

TEST(Factor, SmallExamples)
{
    const auto Q = NumberField::rationals();
    const auto f100 = factor(pq(Q, 100));
    ASSERT_EQ(f100.factors.size(), 2u);
    EXPECT_EQ(f100.factors[0].first.p, 2);
    EXPECT_EQ(f100.factors[0].second, 2);
    EXPECT_EQ(f100.factors[1].first.p, 5);
    EXPECT_EQ(f100.factors[1].second, 2);
    EXPECT_TRUE(factor(FractionalIdeal::unit(Q)).factors.empty());

    const auto K = gaussian();
    const auto f2 = factor(pq(K, 2));
    ASSERT_EQ(f2.factors.size(), 1u);
    EXPECT_EQ(f2.factors[0].second, 2);
    EXPECT_EQ(f2.factors[0].first.residue_degree, 1u);
    EXPECT_EQ(f2.factors[0].first.ramification, 2u);
    EXPECT_EQ(f2.factors[0].first.ideal, pr(K, {Rat(1), Rat(1)}));

    const auto f3 = factor(pq(K, Rat(3, 5)));
    ASSERT_EQ(f3.factors.size(), 3u);
    long total = 0;
    for (const auto& [p, e] : f3.factors)
        total += e;
    EXPECT_EQ(total, -1);
}

TEST(Factor, RefusesIndexPrimes)
{
    try {
        primes_above(sqrt5(), Int(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedPrime);
    }
    EXPECT_EQ(primes_above(golden(), Int(2)).size(), 1u);
    EXPECT_EQ(primes_above(golden(), Int(5)).size(), 1u);
    EXPECT_EQ(primes_above(golden(), Int(11)).size(), 2u);
}

TEST(Sqrt, Examples)
{
    const auto Q = NumberField::rationals();
    EXPECT_EQ(ideal_sqrt(pq(Q, 100)), pq(Q, 10));
    EXPECT_TRUE(ideal_sqrt(FractionalIdeal::unit(Q)).is_unit());
    try {
        ideal_sqrt(pq(Q, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotASquare);
    }
}

TEST(ExtendRestrict, GaussianOverRationals)
{
    const auto Q = NumberField::rationals();
    const auto K = gaussian();
    const auto ext = RelativeExtension::create(Q, K, FieldElement::zero(K), FieldElement::generator(K));
    const auto two = extend(pq(Q, 2), *ext);
    EXPECT_EQ(two, pq(K, 2));
    EXPECT_EQ(two.norm(), Rat(4));
    const auto p = pr(K, {Rat(1), Rat(1)});
    EXPECT_EQ(restrict(p * p, *ext), pq(Q, 2));
    EXPECT_EQ(restrict(p, *ext), pq(Q, 2));
    EXPECT_TRUE(restrict(FractionalIdeal::unit(K), *ext).is_unit());

    for (long n = 1; n <= 30; ++n) {
        const auto I = pq(Q, n);
        EXPECT_EQ(extend(I, *ext).norm(), I.norm() * I.norm());
        EXPECT_EQ(restrict(extend(I, *ext), *ext), I);
    }
}

TEST(Enumerate, IdealsOfSmallNorm)
{
    // Ideal counts of Z[i] by norm: 1,1,0,1,2,0,0,1,1,2.
    const auto ideals = integral_ideals_up_to(gaussian(), 10);
    EXPECT_EQ(ideals.size(), 9u);
    for (const auto& I : ideals)
        EXPECT_TRUE(I.is_integral());
    EXPECT_EQ(integral_ideals_up_to(NumberField::rationals(), 12).size(), 12u);
}

TEST(Residues, CompleteSystem)
{
    const auto K = gaussian();
    const auto I = pr(K, {Rat(2), Rat(1)});
    const auto reps = residue_representatives(I);
    EXPECT_EQ(reps.size(), 5u);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            EXPECT_FALSE(I.contains(reps[i] - reps[j]));
}
