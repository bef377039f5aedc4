#include "fields.hpp"
#include "instances.hpp"
#include "ofdef/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ofdef;
using namespace ofdef::testing;

namespace {

std::vector<FieldElement> principal_family(const FieldPtr& K, long max_norm)
{
    std::vector<FieldElement> out;
    if (K->degree() == 1) {
        for (long n = 1; n <= max_norm; ++n)
            out.push_back(q(K, n));
        return out;
    }
    // one generator per associate class in Z[i]: a > 0, b >= 0
    for (long a = 1; a * a <= max_norm; ++a)
        for (long b = 0; a * a + b * b <= max_norm; ++b)
            out.push_back(el(K, {a, b}));
    return out;
}

bool has_witness(const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys)
{
    try {
        return divisibility_witness(xs, ys).replays();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoWitness)
            throw;
        return false;
    }
}

bool direct(PredicateKind kind, const FieldElement& t, const FieldElement& u)
{
    switch (kind) {
    case PredicateKind::DenDivDen: return divides(den_ideal(t), den_ideal(u));
    case PredicateKind::DenDivNum: return u.is_zero() || divides(den_ideal(t), num_ideal(u));
    case PredicateKind::EltDivDen: return divides(FractionalIdeal::principal(t), den_ideal(u));
    }
    return false;
}

const SCertificate& certificate(long m)
{
    static std::map<long, SCertificate> cache;
    auto it = cache.find(m);
    if (it == cache.end())
        it = cache.emplace(m, build_S_certificate(golden_config(), m, 50)).first;
    return it->second;
}

} // namespace

TEST(DivisibilityWitness, CompletenessOnPrincipalIdeals)
{
    for (const FieldPtr& K : {NumberField::rationals(), gaussian()}) {
        const auto family = principal_family(K, 30);
        long exists = 0;
        for (const auto& x : family)
            for (const auto& y : family) {
                const bool d = divides(FractionalIdeal::principal(x), FractionalIdeal::principal(y));
                ASSERT_EQ(has_witness({x}, {y}), d) << to_string(x) << " | " << to_string(y);
                exists += d;
            }
        EXPECT_GT(exists, static_cast<long>(family.size()));
    }
}

TEST(DivisibilityWitness, TwoGeneratorIdeals)
{
    const FieldPtr K = gaussian();
    // (2, 1+i) = (1+i)
    EXPECT_TRUE(has_witness({q(K, 2), el(K, {1, 1})}, {el(K, {1, -1})}));
    EXPECT_FALSE(has_witness({q(K, 2), el(K, {1, 1})}, {q(K, 1)}));
    const auto w = divisibility_witness({q(K, 2), q(K, 3)}, {q(K, 1)});
    EXPECT_TRUE(w.replays());
    EXPECT_EQ(w.coeffs.size(), 1u);
}

TEST(DivisibilityWitness, NonIntegralGenerators)
{
    const FieldPtr K = gaussian();
    // (1/2) contains 1 and (1/2)(1+i)
    EXPECT_TRUE(has_witness({q(K, Rat(1, 2))}, {q(K, 1), el(K, {Rat(1, 2), Rat(1, 2)})}));
    EXPECT_FALSE(has_witness({q(K, 1)}, {q(K, Rat(1, 2))}));
}

TEST(DivisibilityWitness, TamperedCoefficientFailsReplay)
{
    const FieldPtr K = gaussian();
    auto w = divisibility_witness({el(K, {1, 1})}, {q(K, 2)});
    ASSERT_TRUE(w.replays());
    w.coeffs[0][0] += q(K, 1);
    EXPECT_FALSE(w.replays());
    auto v = divisibility_witness({el(K, {1, 1})}, {q(K, 2)});
    v.coeffs[0][0] = el(K, {Rat(1, 2), 0});
    EXPECT_FALSE(v.replays());
}

TEST(DivisibilityWitness, JsonRoundTrip)
{
    const FieldPtr K = gaussian();
    const auto w = divisibility_witness({el(K, {1, 1}), q(K, 6)}, {q(K, 2), el(K, {3, 3})});
    const auto back = DivisibilityWitness::from_json(K, w.to_json(), "w");
    EXPECT_TRUE(back.replays());
    EXPECT_EQ(back.to_json(), w.to_json());
}

TEST(PredicateWitness, RandomPairsReplay)
{
    const FieldPtr K = gaussian();
    std::mt19937 rng(20261018);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<int> pick(0, 3);
    const long dens[] = {1, 1, 2, 5};
    const auto rnd = [&](bool integral) {
        return el(K, {Rat(num(rng), integral ? 1 : dens[pick(rng)]), Rat(num(rng), integral ? 1 : dens[pick(rng)])});
    };
    int held = 0, refused = 0, zero_branch = 0;
    for (int i = 0; i < 50; ++i) {
        for (auto kind : {PredicateKind::DenDivDen, PredicateKind::DenDivNum, PredicateKind::EltDivDen}) {
            FieldElement t = rnd(kind == PredicateKind::EltDivDen);
            FieldElement u = (kind == PredicateKind::DenDivNum && i % 10 == 0) ? q(K, 0) : rnd(false);
            if (t.is_zero())
                t = q(K, 1);
            if (u.is_zero() && kind != PredicateKind::DenDivNum)
                u = q(K, 1);
            const bool expected = direct(kind, t, u);
            try {
                const PredicateWitness w = predicate_witness(kind, t, u);
                EXPECT_TRUE(expected) << to_string(kind) << " " << to_string(t) << " " << to_string(u);
                EXPECT_TRUE(w.replays());
                EXPECT_TRUE(PredicateWitness::from_json(K, w.to_json(), "w").replays());
                ++held;
                if (u.is_zero()) {
                    ++zero_branch;
                    EXPECT_FALSE(w.v.has_value());
                    EXPECT_FALSE(w.divisibility.has_value());
                }
            } catch (const Error& e) {
                ASSERT_EQ(e.kind(), ErrorKind::NoWitness);
                EXPECT_FALSE(expected);
                ++refused;
            }
        }
    }
    EXPECT_GT(held, 0);
    EXPECT_GT(refused, 0);
    EXPECT_GE(zero_branch, 5);
}

TEST(PredicateWitness, DomainErrors)
{
    const FieldPtr K = gaussian();
    EXPECT_THROW(predicate_witness(PredicateKind::DenDivDen, q(K, 0), q(K, 1)), Error);
    EXPECT_THROW(predicate_witness(PredicateKind::DenDivNum, q(K, 0), q(K, 1)), Error);
    EXPECT_THROW(predicate_witness(PredicateKind::EltDivDen, q(K, Rat(1, 2)), q(K, 1)), Error);
}

TEST(PredicateWitness, ZeroBranchRejectsSpuriousData)
{
    const FieldPtr K = gaussian();
    PredicateWitness w = predicate_witness(PredicateKind::DenDivNum, q(K, Rat(1, 3)), q(K, 0));
    ASSERT_TRUE(w.replays());
    w.v = q(K, 1);
    EXPECT_FALSE(w.replays());
}

TEST(SCertificate, BuildsForSmallSquares)
{
    const long expected_k0[] = {0, 3, 3, 6};
    for (long m = 1; m <= 3; ++m) {
        const SCertificate& c = certificate(m);
        EXPECT_EQ(c.k0, expected_k0[m]) << m;
        EXPECT_EQ(c.ell, 3);
        EXPECT_EQ(c.k_prime, m * c.ell * c.k0);
        const CheckReport v = verify_S_certificate(c, golden_config());
        EXPECT_TRUE(v.passed()) << v.to_json("accept", "reject").dump();
        const CheckReport s = soundness_descent(c, golden_config());
        EXPECT_TRUE(s.passed()) << s.to_json("pass", "fail").dump();
        EXPECT_TRUE(s.find("direct-check-agrees")->passed);
    }
}

TEST(SCertificate, JsonRoundTrip)
{
    const SCertificate& c = certificate(2);
    const Json j = c.to_json();
    EXPECT_EQ(j["schema"], SCertificate::kSchema);
    const SCertificate back = SCertificate::from_json(golden_config(), j);
    EXPECT_EQ(back.to_json(), j);
    EXPECT_TRUE(verify_S_certificate(back, golden_config()).passed());
}

TEST(SCertificate, EveryTamperIsRejected)
{
    const auto& inst = golden_config();
    for (const auto& t : certificate_tampers(inst)) {
        SCertificate c = certificate(2);
        t.apply(c);
        const CheckReport rep = verify_S_certificate(c, inst);
        EXPECT_FALSE(rep.passed()) << t.name;
        EXPECT_TRUE(rep.first_failure().has_value()) << t.name;
        const CheckReport descent = soundness_descent(c, inst);
        EXPECT_FALSE(descent.passed()) << t.name;
        EXPECT_EQ(descent.first_failure(), "certificate-accepted") << t.name;
    }
}

TEST(SCertificate, TamperNamesCondition)
{
    const auto& inst = golden_config();
    SCertificate c = certificate(1);
    c.t0 += q(inst.top(), 1);
    EXPECT_EQ(verify_S_certificate(c, inst).first_failure(), "condition-2");
    SCertificate d = certificate(1);
    d.mu += q(inst.top(), 1);
    EXPECT_EQ(verify_S_certificate(d, inst).first_failure(), "condition-3");
}

TEST(SCertificate, SmallEllIsRefused)
{
    RankOneInstance inst = golden_config();
    inst.ell = 2;
    try {
        build_S_certificate(inst, 1, 50);
        FAIL() << "expected EllTooSmall";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EllTooSmall);
    }
}

TEST(SCertificate, RejectsNonPositiveM)
{
    EXPECT_THROW(build_S_certificate(golden_config(), 0, 50), Error);
}

TEST(IntegerTrace, ReplaysInRange)
{
    for (long z = -200; z <= 200; ++z) {
        const IntegerTrace t = trace_integer(z);
        ASSERT_TRUE(t.replays()) << z;
        for (const auto& m : t.leaf_roots())
            EXPECT_GE(m, 1);
    }
}

TEST(IntegerTrace, LeafRoots)
{
    EXPECT_EQ(trace_integer(7).leaf_roots(), (std::vector<Int>{3, 4}));
    EXPECT_EQ(trace_integer(2).leaf_roots(), (std::vector<Int>{1, 2}));
    EXPECT_EQ(trace_integer(-3).leaf_roots(), (std::vector<Int>{3, 4}));
    EXPECT_EQ(trace_integer(0).leaf_roots(), (std::vector<Int>{2, 3}));
}

TEST(IntegerTrace, TamperedTraceFails)
{
    IntegerTrace t = trace_integer(9);
    t.tree.children[0].root += 1;
    EXPECT_FALSE(t.replays());
    IntegerTrace u = trace_integer(9);
    u.target = 10;
    EXPECT_FALSE(u.replays());
    IntegerTrace v = trace_integer(4);
    v.tree.children[0].value += 1;
    EXPECT_FALSE(v.replays());
}

TEST(OFCertificate, WithPointLeaves)
{
    const auto& inst = golden_config();
    const OFCertificate c = certify_of_element(inst, q(inst.base(), 2), true, 50);
    EXPECT_EQ(c.leaves.size(), 2u);
    const CheckReport rep = verify_of_certificate(c, inst);
    EXPECT_TRUE(rep.passed()) << rep.to_json("accept", "reject").dump();
    const OFCertificate back = OFCertificate::from_json(inst, c.to_json());
    EXPECT_TRUE(verify_of_certificate(back, inst).passed());

    OFCertificate missing = c;
    missing.leaves.erase(2);
    EXPECT_EQ(verify_of_certificate(missing, inst).first_failure(), "leaf-2");
    OFCertificate wrong = c;
    wrong.coords[0] += 1;
    EXPECT_FALSE(verify_of_certificate(wrong, inst).passed());
}

TEST(OFCertificate, AcceptsElementsGivenInK)
{
    const auto& inst = golden_config();
    const OFCertificate c = certify_of_element(inst, q(inst.top(), -5), false, 50);
    EXPECT_TRUE(c.leaves.empty());
    EXPECT_TRUE(verify_of_certificate(c, inst).passed());
    EXPECT_THROW(certify_of_element(inst, FieldElement::generator(inst.top()), false, 50), Error);
    EXPECT_THROW(certify_of_element(inst, q(inst.base(), Rat(1, 2)), false, 50), Error);
}

TEST(FourSquares, SmallRange)
{
    for (long a = 0; a <= 500; ++a) {
        const auto w = four_squares_witness(a);
        EXPECT_EQ(w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3], a);
        EXPECT_TRUE(w[0] >= w[1] && w[1] >= w[2] && w[2] >= w[3] && w[3] >= 0);
    }
    EXPECT_EQ(four_squares_witness(7), (std::array<Int, 4>{2, 1, 1, 1}));
}

TEST(FourSquares, NegativeHasNoWitness)
{
    for (long a = -10; a < 0; ++a) {
        try {
            four_squares_witness(a);
            FAIL() << a;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::NoWitness);
        }
    }
}
