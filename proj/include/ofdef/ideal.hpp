#pragma once

#include "ofdef/numfield.hpp"

#include <optional>
#include <vector>

namespace ofdef {

/// A fractional ideal of O_K stored as (1/d) L, where L is given by its
/// canonical column HNF with respect to the integral basis and d is minimal.
/// Equality of ideals is equality of representations.
class FractionalIdeal {
public:
    static FractionalIdeal zero(const FieldPtr& field);
    static FractionalIdeal unit(const FieldPtr& field);
    static FractionalIdeal principal(const FieldElement& a);

    /// O_K-module generated by the given elements.
    static FractionalIdeal from_generators(const std::vector<FieldElement>& gens);

    /// Canonicalizes (1/d) * span(columns of `lattice`) and checks that it is
    /// closed under multiplication by O_K.
    static FractionalIdeal from_lattice(const FieldPtr& field, const Int& denominator, const IntMatrix& lattice);

    const FieldPtr& field() const { return field_; }
    const Int& denominator() const { return denom_; }
    const IntMatrix& hnf() const { return hnf_; }
    bool is_zero() const { return zero_; }
    bool is_integral() const { return !zero_ && denom_ == 1; }
    bool is_unit() const;

    /// Z-basis, one element per HNF column.
    std::vector<FieldElement> z_basis() const;
    bool contains(const FieldElement& a) const;

    /// |det L| / d^n; 0 for the zero ideal.
    Rat norm() const;

    bool operator==(const FractionalIdeal& o) const;
    bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }

private:
    FractionalIdeal() = default;
    static FractionalIdeal from_z_span(const FieldPtr& field, const std::vector<std::vector<Rat>>& integral_vectors);

    FieldPtr field_;
    Int denom_ = 1;
    IntMatrix hnf_;
    bool zero_ = false;
};

enum class IdealOp { Sum, Product, Quotient, Intersection };

FractionalIdeal combine(const FractionalIdeal& a, const FractionalIdeal& b, IdealOp op);
FractionalIdeal operator+(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal operator*(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal intersection(const FractionalIdeal& a, const FractionalIdeal& b);
/// (a : b) = { x in K : x b subset a }.
FractionalIdeal quotient(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal inverse(const FractionalIdeal& a);
FractionalIdeal power(const FractionalIdeal& a, long exponent);

/// True iff `divisor` divides `dividend`, i.e. dividend is contained in divisor.
bool divides(const FractionalIdeal& divisor, const FractionalIdeal& dividend);

/// { b in O_K : b t in O_K }; the unit ideal for t = 0.
FractionalIdeal den_ideal(const FieldElement& t);
/// den(t^{-1}); the zero ideal for t = 0.
FractionalIdeal num_ideal(const FieldElement& t);

struct PrimeIdeal {
    Int p;
    unsigned residue_degree = 0;
    unsigned ramification = 0;
    /// Second generator g(x) of the two-element presentation (p, g(x)).
    FieldElement generator;
    FractionalIdeal ideal;
};

struct PrimeFactorization {
    std::vector<std::pair<PrimeIdeal, long>> factors;

    FractionalIdeal product(const FieldPtr& field) const;
};

constexpr unsigned long kDefaultTrialBound = 1000000;

/// Prime ideals above p via Kummer-Dedekind. Throws UnsupportedPrime when p
/// divides the index of Z[x] in O_K.
std::vector<PrimeIdeal> primes_above(const FieldPtr& field, const Int& p);

/// v_P(I) for nonzero I.
long valuation(const PrimeIdeal& prime, const FractionalIdeal& ideal);
long valuation(const PrimeIdeal& prime, const FieldElement& a);

PrimeFactorization factor(const FractionalIdeal& ideal, unsigned long trial_bound = kDefaultTrialBound);

/// J with J^2 = I, through the factorization of I.
FractionalIdeal ideal_sqrt(const FractionalIdeal& ideal, unsigned long trial_bound = kDefaultTrialBound);

/// I O_K for an ideal I of the base field.
FractionalIdeal extend(const FractionalIdeal& ideal, const RelativeExtension& ext);
/// I intersected with the embedded base field, as an ideal of the base field.
FractionalIdeal restrict(const FractionalIdeal& ideal, const RelativeExtension& ext);

/// All integral ideals of norm at most `max_norm`, in a fixed order.
std::vector<FractionalIdeal> integral_ideals_up_to(const FieldPtr& field, unsigned long max_norm);

/// A complete residue system for O_K / I, I nonzero integral.
std::vector<FieldElement> residue_representatives(const FractionalIdeal& ideal);

} // namespace ofdef
