#pragma once

#include "ofdef/elliptic.hpp"

#include <map>
#include <vector>

namespace ofdef {

/// Multivariate power series over K truncated at total degree `precision`:
/// only monomials of total degree < precision are kept.
class PowerSeries {
public:
    using Exponents = std::vector<unsigned>;

    PowerSeries(FieldPtr field, unsigned nvars, unsigned precision);

    static PowerSeries constant(const FieldElement& c, unsigned nvars, unsigned precision);
    static PowerSeries variable(const FieldPtr& field, unsigned index, unsigned nvars, unsigned precision);

    const FieldPtr& field() const { return field_; }
    unsigned nvars() const { return nvars_; }
    unsigned precision() const { return precision_; }
    const std::map<Exponents, FieldElement>& terms() const { return terms_; }

    FieldElement coefficient(const Exponents& e) const;
    void set(const Exponents& e, const FieldElement& c);

    /// Lowest total degree present; `precision` for the zero series.
    unsigned order() const;
    bool is_integral() const;

    PowerSeries operator-() const;
    PowerSeries& operator+=(const PowerSeries& o);
    PowerSeries& operator-=(const PowerSeries& o);
    PowerSeries operator*(const PowerSeries& o) const;
    PowerSeries operator*(const FieldElement& c) const;

    /// 1/f for a series with invertible constant term.
    PowerSeries inverse() const;

    /// Univariate only: drop the lowest k coefficients, which must vanish,
    /// and divide by z^k. The precision drops by k.
    PowerSeries shift_down(unsigned k) const;

    /// f(g_1, ..., g_nvars). Every g_i must have zero constant term; the
    /// result lives in the variables of the g_i.
    PowerSeries compose(const std::vector<PowerSeries>& args) const;

    /// Value of the truncated polynomial at the given point.
    FieldElement evaluate(const std::vector<FieldElement>& point) const;

    PowerSeries truncated(unsigned precision) const;

    bool operator==(const PowerSeries& o) const;

private:
    void require_compatible(const PowerSeries& o) const;

    FieldPtr field_;
    unsigned nvars_;
    unsigned precision_;
    std::map<Exponents, FieldElement> terms_;
};

PowerSeries operator+(PowerSeries a, const PowerSeries& b);
PowerSeries operator-(PowerSeries a, const PowerSeries& b);

enum class SeriesKind { GroupLaw, Mult, LaurentX, LaurentY };

/// z^{leading_exponent} * body, with body known to total degree < precision.
struct FormalGroupSeries {
    SeriesKind kind;
    long m = 0; ///< multiplier for SeriesKind::Mult
    int leading_exponent = 0;
    PowerSeries body;

    unsigned precision() const { return body.precision(); }
    bool is_integral() const { return body.is_integral(); }
    /// Evaluates z^{leading_exponent} * body at the given arguments.
    FieldElement evaluate(const std::vector<FieldElement>& args) const;
};

constexpr unsigned kDefaultSeriesPrecision = 12;

/// w(z) = -1/y as a power series in z = -x/y, truncated at degree `precision`.
PowerSeries formal_w(const WeierstrassCurve& E, unsigned precision);

/// Group law F(z1, z2), multiplication-by-m series [m](z), or the Laurent
/// expansions x(z) = z^{-2}(1 + ...) and y(z) = -z^{-3}(1 + ...).
/// Throws for precision < 3.
FormalGroupSeries formal_series(const WeierstrassCurve& E, SeriesKind kind, unsigned precision, long m = 1);

} // namespace ofdef
