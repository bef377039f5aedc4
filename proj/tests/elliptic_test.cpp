#include "fields.hpp"

#include "ofdef/elliptic.hpp"
#include "ofdef/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ofdef;
using namespace ofdef::testing;

namespace {

WeierstrassCurve mordell(const FieldPtr& K, long b) { return WeierstrassCurve(q(K, 0), q(K, b)); }

CurvePoint pt(const FieldPtr& K, Rat x, Rat y) { return CurvePoint::affine(q(K, x), q(K, y)); }

PrimeIdeal prime_of_q(long p) { return primes_above(NumberField::rationals(), Int(p)).at(0); }

RankOneInstance golden_instance(long r)
{
    RankOneInstance inst;
    inst.name = "golden";
    const auto K = golden();
    inst.ext = RelativeExtension::create(NumberField::rationals(), K, FieldElement::zero(K),
                                         FieldElement::generator(K));
    inst.curve = mordell(K, -2);
    inst.generator = pt(K, 3, 5);
    inst.r = r;
    inst.tamagawa_indices = {{"2", 1}, {"3", 1}, {"5", 1}};
    for (const char* key : {"rank", "torsion_order", "index_EK_EF", "tamagawa_indices"})
        inst.provenance[key] = "test fixture";
    return inst;
}

} // namespace

TEST(GroupLaw, DoublingOverQ)
{
    const auto Q = NumberField::rationals();
    const auto E = mordell(Q, -2);
    const auto P = pt(Q, 3, 5);
    ASSERT_TRUE(on_curve(E, P));
    const auto twoP = point_op(E, P, P, PointOp::DoubleFirst);
    EXPECT_EQ(twoP, pt(Q, Rat(129, 100), Rat(-383, 1000)));
    EXPECT_TRUE(on_curve(E, twoP));
    EXPECT_EQ(scalar_mul(E, 2, P), twoP);
    EXPECT_EQ(den_ideal(twoP.x()), FractionalIdeal::principal(q(Q, 100)));
}

TEST(GroupLaw, IdentityAndInverse)
{
    const auto Q = NumberField::rationals();
    const auto E = mordell(Q, -2);
    const auto P = pt(Q, 3, 5);
    EXPECT_EQ(add(E, P, CurvePoint::infinity()), P);
    EXPECT_EQ(add(E, CurvePoint::infinity(), P), P);
    EXPECT_TRUE(add(E, P, negate(P)).is_infinity());
    EXPECT_TRUE(point_op(E, P, P, PointOp::NegateFirst) == negate(P));
    EXPECT_EQ(scalar_mul(E, 1, P), P);
    EXPECT_TRUE(scalar_mul(E, 0, P).is_infinity());
    EXPECT_EQ(scalar_mul(E, -3, P), negate(scalar_mul(E, 3, P)));

    // 2-torsion: y^2 = x^3 - x has (0,0); doubling it gives O.
    const WeierstrassCurve E2(q(Q, -1), q(Q, 0));
    EXPECT_TRUE(scalar_mul(E2, 2, pt(Q, 0, 0)).is_infinity());
}

TEST(GroupLaw, AxiomsOnRandomPoints)
{
    // y^2 = x^3 + 17 has independent points (-2,3) and (-1,4) over Q; work over Q(i).
    const auto K = gaussian();
    const auto E = mordell(K, 17);
    const auto A = pt(K, -2, 3);
    const auto B = pt(K, -1, 4);
    std::mt19937_64 rng(31);
    auto random_point = [&] {
        const long a = static_cast<long>(rng() % 7) - 3;
        const long b = static_cast<long>(rng() % 7) - 3;
        return add(E, scalar_mul(E, a, A), scalar_mul(E, b, B));
    };
    for (int trial = 0; trial < 100; ++trial) {
        const auto P = random_point();
        const auto Qp = random_point();
        const auto R = random_point();
        ASSERT_TRUE(on_curve(E, P));
        EXPECT_EQ(add(E, add(E, P, Qp), R), add(E, P, add(E, Qp, R)));
        EXPECT_EQ(add(E, P, Qp), add(E, Qp, P));
        EXPECT_TRUE(add(E, P, negate(P)).is_infinity());
        const long m = static_cast<long>(rng() % 9) - 4;
        const long n = static_cast<long>(rng() % 9) - 4;
        EXPECT_EQ(scalar_mul(E, m + n, P), add(E, scalar_mul(E, m, P), scalar_mul(E, n, P)));
    }
}

TEST(ZParameter, Values)
{
    const auto Q = NumberField::rationals();
    EXPECT_EQ(z_parameter(pt(Q, 3, 5)), q(Q, Rat(-3, 5)));
    EXPECT_EQ(z_parameter(pt(Q, Rat(129, 100), Rat(-383, 1000))), q(Q, Rat(1290, 383)));
    EXPECT_THROW(z_parameter(CurvePoint::infinity()), Error);
}

TEST(ZParameter, LocalValuation)
{
    const auto Q = NumberField::rationals();
    const auto E = mordell(Q, -2);
    const auto P = pt(Q, 3, 5);
    const auto twoP = scalar_mul(E, 2, P);
    EXPECT_EQ(local_point_valuation(twoP, prime_of_q(2)), 1);
    EXPECT_EQ(local_point_valuation(twoP, prime_of_q(5)), 1);
    EXPECT_FALSE(local_point_valuation(twoP, prime_of_q(3)).has_value());
    EXPECT_FALSE(local_point_valuation(P, prime_of_q(2)).has_value());
}

TEST(ZParameter, DenominatorRoot)
{
    const auto Q = NumberField::rationals();
    const auto E = mordell(Q, -2);
    const auto twoP = scalar_mul(E, 2, pt(Q, 3, 5));
    EXPECT_EQ(denominator_root(twoP), FractionalIdeal::principal(q(Q, 10)));
    const auto K = golden();
    const auto P4 = scalar_mul(mordell(K, -2), 4, pt(K, 3, 5));
    const auto J = denominator_root(P4);
    EXPECT_EQ(J * J, den_ideal(P4.x()));
    EXPECT_EQ(J, ideal_sqrt(den_ideal(P4.x())));
}

TEST(Instance, GoldenValidates)
{
    const auto rep = validate_instance(golden_instance(2));
    for (const auto& c : rep.checks)
        EXPECT_TRUE(c.passed) << c.name << " " << c.witness.dump();
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(den_ideal(golden_instance(2).multiple(1).x()).norm(), Rat(10000));
}

TEST(Instance, FailuresAreReported)
{
    auto off = golden_instance(2);
    off.generator = pt(golden(), 3, 4);
    const auto rep = validate_instance(off);
    EXPECT_FALSE(rep.passed());
    EXPECT_FALSE(rep.find("on-curve")->passed);

    auto torsion = golden_instance(3);
    torsion.torsion_order = 7;
    const auto rep2 = validate_instance(torsion);
    EXPECT_FALSE(rep2.find("r-divisible-by-torsion")->passed);
    EXPECT_FALSE(rep2.find("torsion-divides-reduction-counts")->passed);

    auto bare = golden_instance(6);
    bare.tamagawa_indices = {{"2", 3}};
    bare.torsion_order = 1;
    bare.index_EK_EF = 2;
    EXPECT_TRUE(validate_instance(bare).passed());

    auto unsourced = golden_instance(2);
    unsourced.provenance.erase("rank");
    EXPECT_FALSE(validate_instance(unsourced).find("provenance-recorded")->passed);
}

TEST(Instance, PointCountsOverQ)
{
    // y^2 = x^3 - 2 over F_7 has 7 points; over F_13 it has 19.
    const auto Q = NumberField::rationals();
    const auto E = mordell(Q, -2);
    EXPECT_EQ(count_points_mod(E, prime_of_q(7)), Int(7));
    EXPECT_EQ(count_points_mod(E, prime_of_q(13)), Int(19));
    EXPECT_FALSE(count_points_mod(E, prime_of_q(3)).has_value());
}
