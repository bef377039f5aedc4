#include "ofdef/ideal.hpp"
#include "ofdef/error.hpp"
#include "ofdef/polymod.hpp"

#include <algorithm>
#include <functional>

namespace ofdef {

namespace {

// Coordinates u with (1/d) H u = v, or nullopt when v is not in the lattice.
// H is lower triangular with positive diagonal.
std::optional<std::vector<Int>> lattice_coords(const IntMatrix& H, const Int& d, const std::vector<Rat>& v)
{
    const std::size_t n = H.rows();
    std::vector<Int> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rat rhs = v[i] * d;
        for (std::size_t j = 0; j < i; ++j)
            rhs -= Rat(H(i, j) * u[j]);
        rhs /= Rat(H(i, i));
        if (rhs.get_den() != 1)
            return std::nullopt;
        u[i] = rhs.get_num();
    }
    return u;
}

RatMatrix scaled_basis(const FractionalIdeal& I)
{
    RatMatrix m = to_rational(I.hnf());
    const Rat inv_d = Rat(1) / Rat(I.denominator());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) *= inv_d;
    return m;
}

// Columns of a rational matrix as vectors.
std::vector<std::vector<Rat>> columns_of(const RatMatrix& m)
{
    std::vector<std::vector<Rat>> cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        cols.push_back(m.column(j));
    return cols;
}

// Canonical (d, H) for the Z-span of rational vectors; rank must be full.
std::pair<Int, IntMatrix> canonical_lattice(const std::vector<std::vector<Rat>>& vectors, std::size_t n)
{
    Int d = 1;
    for (const auto& v : vectors)
        d = lcm(d, common_denominator(v));
    IntMatrix gens(n, vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            gens(i, j) = Rat(vectors[j][i] * d).get_num();
    IntMatrix h = hermite_basis(gens);
    if (h.cols() != n)
        throw Error(ErrorKind::InvalidArgument, "generators do not span a full-rank lattice");
    Int g = d;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            g = gcd(g, h(i, j));
    if (g != 1) {
        d /= g;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                h(i, j) /= g;
    }
    return {d, h};
}

} // namespace

FractionalIdeal FractionalIdeal::zero(const FieldPtr& field)
{
    FractionalIdeal I;
    I.field_ = field;
    I.zero_ = true;
    I.denom_ = 1;
    I.hnf_ = IntMatrix(field->degree(), 0);
    return I;
}

FractionalIdeal FractionalIdeal::unit(const FieldPtr& field)
{
    FractionalIdeal I;
    I.field_ = field;
    I.denom_ = 1;
    I.hnf_ = IntMatrix::identity(field->degree());
    return I;
}

FractionalIdeal FractionalIdeal::from_z_span(const FieldPtr& field, const std::vector<std::vector<Rat>>& vectors)
{
    bool all_zero = true;
    for (const auto& v : vectors)
        for (const auto& c : v)
            if (c != 0)
                all_zero = false;
    if (all_zero)
        return zero(field);
    auto [d, h] = canonical_lattice(vectors, field->degree());
    FractionalIdeal I;
    I.field_ = field;
    I.denom_ = std::move(d);
    I.hnf_ = std::move(h);
    return I;
}

FractionalIdeal FractionalIdeal::from_generators(const std::vector<FieldElement>& gens)
{
    if (gens.empty())
        throw Error(ErrorKind::InvalidArgument, "an ideal needs at least one generator");
    const FieldPtr& K = gens.front().field();
    std::vector<FieldElement> omegas;
    for (const auto& b : K->integral_basis())
        omegas.emplace_back(K, b);
    std::vector<std::vector<Rat>> vectors;
    for (const auto& g : gens) {
        if (!same_field(g.field(), K))
            throw Error(ErrorKind::FieldMismatch, "ideal generators belong to different fields");
        if (g.is_zero())
            continue;
        for (const auto& w : omegas)
            vectors.push_back((g * w).integral_coords());
    }
    if (vectors.empty())
        return zero(K);
    return from_z_span(K, vectors);
}

FractionalIdeal FractionalIdeal::principal(const FieldElement& a) { return from_generators({a}); }

FractionalIdeal FractionalIdeal::from_lattice(const FieldPtr& field, const Int& denominator, const IntMatrix& lattice)
{
    if (denominator <= 0)
        throw Error(ErrorKind::InvalidArgument, "ideal denominator must be positive");
    if (lattice.rows() != field->degree())
        throw Error(ErrorKind::InvalidArgument, "ideal lattice has wrong dimension");
    std::vector<std::vector<Rat>> vectors;
    for (std::size_t j = 0; j < lattice.cols(); ++j) {
        std::vector<Rat> v(lattice.rows());
        for (std::size_t i = 0; i < lattice.rows(); ++i)
            v[i] = ratio(lattice(i, j), denominator);
        vectors.push_back(std::move(v));
    }
    FractionalIdeal I = from_z_span(field, vectors);
    if (I.is_zero())
        return I;
    // Closure under O_K.
    for (const auto& b : field->integral_basis()) {
        const FieldElement w(field, b);
        for (const auto& x : I.z_basis())
            if (!I.contains(w * x))
                throw Error(ErrorKind::InvalidArgument, "lattice is not an O_K-module");
    }
    return I;
}

bool FractionalIdeal::is_unit() const
{
    return !zero_ && denom_ == 1 && hnf_ == IntMatrix::identity(field_->degree());
}

std::vector<FieldElement> FractionalIdeal::z_basis() const
{
    std::vector<FieldElement> out;
    const RatMatrix m = scaled_basis(*this);
    for (std::size_t j = 0; j < m.cols(); ++j)
        out.push_back(FieldElement::from_integral_coords(field_, m.column(j)));
    return out;
}

bool FractionalIdeal::contains(const FieldElement& a) const
{
    if (!same_field(a.field(), field_))
        throw Error(ErrorKind::FieldMismatch, "element and ideal belong to different fields");
    if (a.is_zero())
        return true;
    if (zero_)
        return false;
    return lattice_coords(hnf_, denom_, a.integral_coords()).has_value();
}

Rat FractionalIdeal::norm() const
{
    if (zero_)
        return 0;
    Int det = 1;
    for (std::size_t i = 0; i < hnf_.rows(); ++i)
        det *= hnf_(i, i);
    return ratio(det, pow(denom_, field_->degree()));
}

bool FractionalIdeal::operator==(const FractionalIdeal& o) const
{
    return same_field(field_, o.field_) && zero_ == o.zero_ && denom_ == o.denom_ && hnf_ == o.hnf_;
}

namespace {

void require_same(const FractionalIdeal& a, const FractionalIdeal& b)
{
    if (!same_field(a.field(), b.field()))
        throw Error(ErrorKind::FieldMismatch, "ideals belong to different fields");
}

} // namespace

FractionalIdeal operator+(const FractionalIdeal& a, const FractionalIdeal& b)
{
    require_same(a, b);
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    auto gens = a.z_basis();
    for (const auto& x : b.z_basis())
        gens.push_back(x);
    return FractionalIdeal::from_generators(gens);
}

FractionalIdeal operator*(const FractionalIdeal& a, const FractionalIdeal& b)
{
    require_same(a, b);
    if (a.is_zero() || b.is_zero())
        return FractionalIdeal::zero(a.field());
    std::vector<FieldElement> gens;
    for (const auto& x : a.z_basis())
        for (const auto& y : b.z_basis())
            gens.push_back(x * y);
    return FractionalIdeal::from_generators(gens);
}

FractionalIdeal intersection(const FractionalIdeal& a, const FractionalIdeal& b)
{
    require_same(a, b);
    if (a.is_zero() || b.is_zero())
        return FractionalIdeal::zero(a.field());
    // L1 cap L2 = (L1* + L2*)* with respect to the standard pairing on
    // integral-basis coordinates.
    const std::size_t n = a.field()->degree();
    auto dual = [](const RatMatrix& basis) { return inverse(basis)->transpose(); };
    auto gens = columns_of(dual(scaled_basis(a)));
    for (auto& c : columns_of(dual(scaled_basis(b))))
        gens.push_back(std::move(c));
    auto [d, h] = canonical_lattice(gens, n);
    RatMatrix sum = to_rational(h);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sum(i, j) /= Rat(d);
    std::vector<FieldElement> basis;
    for (const auto& c : columns_of(dual(sum)))
        basis.push_back(FieldElement::from_integral_coords(a.field(), c));
    return FractionalIdeal::from_generators(basis);
}

FractionalIdeal quotient(const FractionalIdeal& a, const FractionalIdeal& b)
{
    require_same(a, b);
    if (b.is_zero())
        throw Error(ErrorKind::DivisionByZero, "quotient by the zero ideal");
    if (a.is_zero())
        return a;
    std::optional<FractionalIdeal> acc;
    for (const auto& beta : b.z_basis()) {
        FractionalIdeal part = FractionalIdeal::principal(beta.inverse()) * a;
        acc = acc ? intersection(*acc, part) : part;
    }
    return *acc;
}

FractionalIdeal inverse(const FractionalIdeal& a) { return quotient(FractionalIdeal::unit(a.field()), a); }

FractionalIdeal power(const FractionalIdeal& a, long exponent)
{
    FractionalIdeal base = exponent < 0 ? inverse(a) : a;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    FractionalIdeal acc = FractionalIdeal::unit(a.field());
    while (e) {
        if (e & 1)
            acc = acc * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return acc;
}

FractionalIdeal combine(const FractionalIdeal& a, const FractionalIdeal& b, IdealOp op)
{
    switch (op) {
    case IdealOp::Sum: return a + b;
    case IdealOp::Product: return a * b;
    case IdealOp::Quotient: return quotient(a, b);
    case IdealOp::Intersection: return intersection(a, b);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown ideal operation");
}

bool divides(const FractionalIdeal& divisor, const FractionalIdeal& dividend)
{
    require_same(divisor, dividend);
    if (dividend.is_zero())
        return true;
    if (divisor.is_zero())
        return false;
    for (const auto& x : dividend.z_basis())
        if (!divisor.contains(x))
            return false;
    return true;
}

FractionalIdeal den_ideal(const FieldElement& t)
{
    const FractionalIdeal one = FractionalIdeal::unit(t.field());
    if (t.is_zero())
        return one;
    if (t.is_integral())
        return one;
    return intersection(one, FractionalIdeal::principal(t.inverse()));
}

FractionalIdeal num_ideal(const FieldElement& t)
{
    if (t.is_zero())
        return FractionalIdeal::zero(t.field());
    return den_ideal(t.inverse());
}

FractionalIdeal PrimeFactorization::product(const FieldPtr& field) const
{
    FractionalIdeal acc = FractionalIdeal::unit(field);
    for (const auto& [prime, e] : factors)
        acc = acc * power(prime.ideal, e);
    return acc;
}

std::vector<PrimeIdeal> primes_above(const FieldPtr& field, const Int& p)
{
    if (p < 2 || !is_probable_prime(p))
        throw Error(ErrorKind::InvalidArgument, to_string(p) + " is not prime");
    if (field->power_order_index() % p == 0)
        throw Error(ErrorKind::UnsupportedPrime,
                    to_string(p) + " divides the index of the power order of " + field->tag());
    if (!p.fits_ulong_p() || p > Int(1) << 62)
        throw Error(ErrorKind::UnsupportedPrime, to_string(p) + " is too large for residue arithmetic");
    const std::uint64_t pp = p.get_ui();
    std::vector<PrimeIdeal> out;
    for (const auto& fac : fp::factor(fp::reduce(field->polynomial(), pp), pp)) {
        std::vector<Rat> c(field->degree());
        for (std::size_t i = 0; i < fac.poly.size() && i < c.size(); ++i)
            c[i] = Rat(Int(static_cast<unsigned long>(fac.poly[i])));
        FieldElement g(field, c);
        if (fac.poly.size() > field->degree()) // g = f mod p: the prime is pO_K
            g = FieldElement::zero(field);
        FractionalIdeal I = FractionalIdeal::from_generators({FieldElement::from_rational(field, Rat(p)), g});
        const unsigned f = static_cast<unsigned>(fac.poly.size() - 1);
        if (I.norm() != Rat(pow(p, f)))
            throw Error(ErrorKind::UnsupportedPrime, "Kummer-Dedekind lift has unexpected norm at " + to_string(p));
        out.push_back(PrimeIdeal{p, f, fac.multiplicity, g, I});
    }
    return out;
}

namespace {

unsigned long int_valuation(const Int& n, const Int& p)
{
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "valuation of zero");
    unsigned long v = 0;
    Int m = n;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

} // namespace

long valuation(const PrimeIdeal& prime, const FractionalIdeal& ideal)
{
    if (ideal.is_zero())
        throw Error(ErrorKind::InvalidArgument, "valuation of the zero ideal");
    const Int& d = ideal.denominator();
    FractionalIdeal J = FractionalIdeal::from_lattice(ideal.field(), Int(1), ideal.hnf());
    const long shift = static_cast<long>(prime.ramification * int_valuation(d, prime.p));
    // Bound the loop by the p-part of the norm.
    const unsigned long max_v = int_valuation(J.norm().get_num(), prime.p) / prime.residue_degree;
    long v = 0;
    if (max_v > 0) {
        const FractionalIdeal pinv = inverse(prime.ideal);
        while (static_cast<unsigned long>(v) < max_v && divides(prime.ideal, J)) {
            J = J * pinv;
            ++v;
        }
    }
    return v - shift;
}

long valuation(const PrimeIdeal& prime, const FieldElement& a)
{
    return valuation(prime, FractionalIdeal::principal(a));
}

PrimeFactorization factor(const FractionalIdeal& ideal, unsigned long trial_bound)
{
    if (ideal.is_zero())
        throw Error(ErrorKind::InvalidArgument, "cannot factor the zero ideal");
    const Rat N = ideal.norm();
    std::vector<Int> primes;
    for (const Int& part : {N.get_num(), N.get_den()}) {
        auto [fs, rest] = trial_factor(part, trial_bound);
        if (rest != 1)
            throw Error(ErrorKind::FactorBoundExceeded,
                        "ideal norm has a factor beyond the trial bound " + std::to_string(trial_bound));
        for (const auto& [p, e] : fs)
            primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    PrimeFactorization out;
    for (const auto& p : primes)
        for (auto& P : primes_above(ideal.field(), p)) {
            const long v = valuation(P, ideal);
            if (v != 0)
                out.factors.emplace_back(std::move(P), v);
        }
    return out;
}

FractionalIdeal ideal_sqrt(const FractionalIdeal& ideal, unsigned long trial_bound)
{
    const PrimeFactorization fac = factor(ideal, trial_bound);
    PrimeFactorization half;
    for (const auto& [P, e] : fac.factors) {
        if (e % 2 != 0)
            throw Error(ErrorKind::NotASquare, "prime above " + to_string(P.p) + " occurs to an odd power");
        half.factors.emplace_back(P, e / 2);
    }
    return half.product(ideal.field());
}

FractionalIdeal extend(const FractionalIdeal& ideal, const RelativeExtension& ext)
{
    if (!same_field(ideal.field(), ext.base()))
        throw Error(ErrorKind::FieldMismatch, "extension expects an ideal of the base field");
    if (ideal.is_zero())
        return FractionalIdeal::zero(ext.top());
    std::vector<FieldElement> gens;
    for (const auto& x : ideal.z_basis())
        gens.push_back(ext.embed(x));
    return FractionalIdeal::from_generators(gens);
}

FractionalIdeal restrict(const FractionalIdeal& ideal, const RelativeExtension& ext)
{
    if (!same_field(ideal.field(), ext.top()))
        throw Error(ErrorKind::FieldMismatch, "restriction expects an ideal of the top field");
    if (ideal.is_zero())
        return FractionalIdeal::zero(ext.base());
    const std::size_t n = ext.top()->degree();
    const std::size_t f = ext.base()->degree();

    // Integer annihilator C of the embedded copy of F (in integral coords).
    std::vector<std::vector<Rat>> span;
    FieldElement phi_pow = FieldElement::from_rational(ext.top(), 1);
    for (std::size_t j = 0; j < f; ++j) {
        span.push_back(phi_pow.integral_coords());
        phi_pow *= ext.embedding_image();
    }
    IntMatrix span_t(f, n);
    for (std::size_t j = 0; j < f; ++j) {
        const Int d = common_denominator(span[j]);
        for (std::size_t i = 0; i < n; ++i)
            span_t(j, i) = Rat(span[j][i] * d).get_num();
    }
    const IntMatrix annihilator = integer_kernel(span_t).transpose(); // (n-f) x n

    // v in Z^n with C H v = 0 gives the lattice points inside F.
    const IntMatrix ch = annihilator * ideal.hnf();
    const IntMatrix kernel = ch.rows() == 0 ? IntMatrix::identity(n) : integer_kernel(ch);
    std::vector<FieldElement> gens;
    for (std::size_t j = 0; j < kernel.cols(); ++j) {
        std::vector<Rat> v(n);
        const auto hv = ideal.hnf() * kernel.column(j);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = ratio(hv[i], ideal.denominator());
        auto pre = ext.preimage(FieldElement::from_integral_coords(ext.top(), v));
        if (!pre)
            throw Error(ErrorKind::InvalidArgument, "restriction produced a vector outside the base field");
        gens.push_back(*pre);
    }
    return FractionalIdeal::from_generators(gens);
}

std::vector<FractionalIdeal> integral_ideals_up_to(const FieldPtr& field, unsigned long max_norm)
{
    const std::size_t n = field->degree();
    std::vector<FractionalIdeal> out;
    IntMatrix h(n, n);
    std::function<void(std::size_t, unsigned long)> diag = [&](std::size_t i, unsigned long budget) {
        if (i == n) {
            // Enumerate the entries below the diagonal: h(r, c) < h(r, r), c < r.
            std::vector<std::pair<std::size_t, std::size_t>> slots;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < r; ++c)
                    slots.emplace_back(r, c);
            std::function<void(std::size_t)> fill = [&](std::size_t k) {
                if (k == slots.size()) {
                    FractionalIdeal L = FractionalIdeal::unit(field);
                    try {
                        L = FractionalIdeal::from_lattice(field, Int(1), h);
                    } catch (const Error&) {
                        return;
                    }
                    if (L.hnf() == h)
                        out.push_back(L);
                    return;
                }
                const auto [r, c] = slots[k];
                for (Int v = 0; v < h(r, r); ++v) {
                    h(r, c) = v;
                    fill(k + 1);
                }
                h(r, c) = 0;
            };
            fill(0);
            return;
        }
        for (unsigned long a = 1; a <= budget; ++a) {
            h(i, i) = a;
            diag(i + 1, budget / a);
        }
    };
    diag(0, max_norm);
    std::sort(out.begin(), out.end(), [](const FractionalIdeal& a, const FractionalIdeal& b) {
        if (a.norm() != b.norm())
            return a.norm() < b.norm();
        for (std::size_t i = 0; i < a.hnf().rows(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if (a.hnf()(i, j) != b.hnf()(i, j))
                    return a.hnf()(i, j) < b.hnf()(i, j);
        return false;
    });
    return out;
}

std::vector<FieldElement> residue_representatives(const FractionalIdeal& ideal)
{
    if (!ideal.is_integral())
        throw Error(ErrorKind::InvalidArgument, "residue system needs a nonzero integral ideal");
    const std::size_t n = ideal.field()->degree();
    std::vector<FieldElement> out;
    std::vector<Rat> coords(n);
    // Lower-triangular HNF: coordinate i ranges over [0, H(i,i)).
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            out.push_back(FieldElement::from_integral_coords(ideal.field(), coords));
            return;
        }
        for (Int v = 0; v < ideal.hnf()(i, i); ++v) {
            coords[i] = Rat(v);
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

} // namespace ofdef
