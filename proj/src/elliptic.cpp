#include "ofdef/elliptic.hpp"
#include "ofdef/error.hpp"

#include <algorithm>

namespace ofdef {

WeierstrassCurve::WeierstrassCurve(FieldElement a, FieldElement b) : a_(std::move(a)), b_(std::move(b))
{
    if (!same_field(a_.field(), b_.field()))
        throw Error(ErrorKind::FieldMismatch, "curve coefficients belong to different fields");
}

FieldElement WeierstrassCurve::discriminant() const
{
    return Rat(-16) * (Rat(4) * a_.pow(3) + Rat(27) * b_ * b_);
}

const FieldElement& CurvePoint::x() const
{
    if (!coords_)
        throw Error(ErrorKind::InvalidArgument, "the point at infinity has no affine coordinates");
    return coords_->first;
}

const FieldElement& CurvePoint::y() const
{
    if (!coords_)
        throw Error(ErrorKind::InvalidArgument, "the point at infinity has no affine coordinates");
    return coords_->second;
}

bool CurvePoint::operator==(const CurvePoint& o) const
{
    if (is_infinity() || o.is_infinity())
        return is_infinity() == o.is_infinity();
    return x() == o.x() && y() == o.y();
}

bool on_curve(const WeierstrassCurve& E, const CurvePoint& P)
{
    if (P.is_infinity())
        return true;
    const FieldElement& x = P.x();
    return P.y() * P.y() == x * x * x + E.a() * x + E.b();
}

CurvePoint negate(const CurvePoint& P)
{
    if (P.is_infinity())
        return P;
    return CurvePoint::affine(P.x(), -P.y());
}

CurvePoint add(const WeierstrassCurve& E, const CurvePoint& P, const CurvePoint& Q)
{
    if (P.is_infinity())
        return Q;
    if (Q.is_infinity())
        return P;
    FieldElement slope = FieldElement::zero(E.field());
    if (P.x() == Q.x()) {
        if ((P.y() + Q.y()).is_zero())
            return CurvePoint::infinity();
        slope = (Rat(3) * P.x() * P.x() + E.a()) / (Rat(2) * P.y());
    } else {
        slope = (Q.y() - P.y()) / (Q.x() - P.x());
    }
    FieldElement x3 = slope * slope - P.x() - Q.x();
    FieldElement y3 = slope * (P.x() - x3) - P.y();
    return CurvePoint::affine(std::move(x3), std::move(y3));
}

CurvePoint point_op(const WeierstrassCurve& E, const CurvePoint& P, const CurvePoint& Q, PointOp op)
{
    switch (op) {
    case PointOp::Add: return add(E, P, Q);
    case PointOp::NegateFirst: return negate(P);
    case PointOp::DoubleFirst: return add(E, P, P);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown point operation");
}

CurvePoint scalar_mul(const WeierstrassCurve& E, long m, const CurvePoint& P)
{
    CurvePoint base = m < 0 ? negate(P) : P;
    unsigned long k = m < 0 ? static_cast<unsigned long>(-m) : static_cast<unsigned long>(m);
    CurvePoint acc = CurvePoint::infinity();
    while (k) {
        if (k & 1)
            acc = add(E, acc, base);
        k >>= 1;
        if (k)
            base = add(E, base, base);
    }
    return acc;
}

FieldElement z_parameter(const CurvePoint& P)
{
    if (P.is_infinity())
        throw Error(ErrorKind::InvalidArgument, "z is not defined at the point at infinity");
    if (P.y().is_zero())
        throw Error(ErrorKind::InvalidArgument, "z is not defined at a 2-torsion point");
    return -(P.x() / P.y());
}

std::optional<long> local_point_valuation(const CurvePoint& P, const PrimeIdeal& prime)
{
    if (P.is_infinity() || P.x().is_zero())
        throw Error(ErrorKind::InvalidArgument, "local valuation needs an affine point with x != 0");
    const long vx = valuation(prime, P.x());
    if (vx >= 0)
        return std::nullopt;
    if (vx % 2 != 0)
        throw Error(ErrorKind::InvalidArgument, "x-coordinate has odd valuation at a prime above " + to_string(prime.p));
    const long n = -vx / 2;
    const long direct = valuation(prime, z_parameter(P));
    if (direct != n)
        throw Error(ErrorKind::InvalidArgument, "v(z) disagrees with -v(x)/2 at a prime above " + to_string(prime.p));
    return n;
}

FractionalIdeal denominator_root(const CurvePoint& P)
{
    if (P.is_infinity())
        throw Error(ErrorKind::InvalidArgument, "the point at infinity has no denominator");
    const FractionalIdeal dx = den_ideal(P.x());
    // v(x) = -2k exactly when v(y) = -3k for integral a, b.
    const FractionalIdeal J = den_ideal(P.y()) * inverse(dx);
    if (J * J != dx)
        throw Error(ErrorKind::NotASquare, "den(x) is not the square of den(y)/den(x)");
    return J;
}

CurvePoint RankOneInstance::multiple(long k) const
{
    return scalar_mul(curve, k * r, generator);
}

MultipleTable::MultipleTable(const RankOneInstance& inst) : curve_(inst.curve)
{
    points_.push_back(CurvePoint::infinity());
    points_.push_back(inst.multiple(1));
}

CurvePoint MultipleTable::operator[](long k)
{
    if (k < 0)
        return negate((*this)[-k]);
    while (points_.size() <= static_cast<std::size_t>(k))
        points_.push_back(add(curve_, points_.back(), points_[1]));
    return points_[static_cast<std::size_t>(k)];
}

bool ValidationReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

namespace {

// Image of an element of O_P in the residue field of a degree-one prime.
std::optional<Int> residue(const FieldElement& a, const PrimeIdeal& prime)
{
    const FieldPtr& K = a.field();
    Int root;
    if (K->degree() == 1)
        root = -K->polynomial()[0];
    else
        root = -prime.generator.coords()[0].get_num();
    Int acc = 0;
    Int power = 1;
    for (const auto& c : a.coords()) {
        if (c.get_den() % prime.p == 0)
            return std::nullopt;
        Int inv;
        mpz_invert(inv.get_mpz_t(), Int(c.get_den()).get_mpz_t(), prime.p.get_mpz_t());
        acc += c.get_num() * inv * power;
        power = power * root % prime.p;
    }
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), prime.p.get_mpz_t());
    return r;
}

} // namespace

std::optional<Int> count_points_mod(const WeierstrassCurve& E, const PrimeIdeal& prime)
{
    if (prime.residue_degree != 1 || prime.p == 2)
        return std::nullopt;
    if (valuation(prime, E.discriminant()) != 0)
        return std::nullopt;
    const auto a = residue(E.a(), prime);
    const auto b = residue(E.b(), prime);
    if (!a || !b)
        return std::nullopt;
    const Int& p = prime.p;
    Int count = p + 1;
    for (Int x = 0; x < p; ++x) {
        Int rhs = x * x * x + *a * x + *b;
        mpz_fdiv_r(rhs.get_mpz_t(), rhs.get_mpz_t(), p.get_mpz_t());
        count += mpz_legendre(rhs.get_mpz_t(), p.get_mpz_t());
    }
    return count;
}

ValidationReport validate_instance(const RankOneInstance& inst)
{
    using nlohmann::json;
    ValidationReport rep;
    rep.instance = inst.name;
    auto check = [&](std::string name, bool ok, json witness = json::object()) {
        rep.checks.push_back({std::move(name), ok, std::move(witness)});
    };
    const auto& E = inst.curve;
    const auto& ext = *inst.ext;

    const FieldElement disc = E.discriminant();
    check("curve-nonsingular", !disc.is_zero(), {{"discriminant", to_string(disc)}});
    check("coefficients-integral", E.a().is_integral() && E.b().is_integral());
    check("coefficients-in-base-field", ext.lies_in_base(E.a()) && ext.lies_in_base(E.b()));

    const bool on = on_curve(E, inst.generator);
    check("on-curve", on);

    const CurvePoint rP = on ? inst.multiple(1) : CurvePoint::infinity();
    check("multiple-nonzero", on && !rP.is_infinity(), {{"r", inst.r}});
    const bool rational = on && !rP.is_infinity() && ext.lies_in_base(rP.x()) && ext.lies_in_base(rP.y());
    check("multiple-base-rational", rational);

    check("r-divisible-by-torsion", inst.torsion_order > 0 && inst.r % inst.torsion_order == 0,
          {{"r", inst.r}, {"torsion_order", inst.torsion_order}});
    check("r-divisible-by-index", inst.index_EK_EF > 0 && inst.r % inst.index_EK_EF == 0,
          {{"r", inst.r}, {"index_EK_EF", inst.index_EK_EF}});
    bool tam_ok = true;
    json tam = json::array();
    for (const auto& [tag, c] : inst.tamagawa_indices) {
        tam.push_back({{"prime", tag}, {"index", c}});
        tam_ok = tam_ok && c > 0 && inst.r % c == 0;
    }
    check("r-divisible-by-tamagawa", tam_ok, {{"tamagawa_indices", tam}});

    json missing = json::array();
    for (const char* key : {"rank", "torsion_order", "index_EK_EF", "tamagawa_indices"}) {
        auto it = inst.provenance.find(key);
        if (it == inst.provenance.end() || it->second.empty())
            missing.push_back(key);
    }
    check("provenance-recorded", missing.empty(), {{"missing", missing}});

    // The torsion order must divide #E(F_P) at good degree-one primes.
    std::vector<Int> counts;
    json used = json::array();
    const FieldPtr& K = inst.top();
    for (unsigned long p = 3; counts.size() < 2 && p < 1000; p += 2) {
        const Int P(p);
        if (!is_probable_prime(P) || K->power_order_index() % P == 0)
            continue;
        for (const auto& pr : primes_above(K, P)) {
            if (counts.size() >= 2)
                break;
            auto n = count_points_mod(E, pr);
            if (!n)
                continue;
            counts.push_back(*n);
            used.push_back({{"p", to_string(P)}, {"points", to_string(*n)}});
        }
    }
    Int g = 0;
    for (const auto& n : counts)
        g = gcd(g, n);
    check("torsion-divides-reduction-counts", counts.size() == 2 && g % inst.torsion_order == 0,
          {{"reductions", used}, {"gcd", to_string(g)}});
    return rep;
}

} // namespace ofdef
