#pragma once

#include "ofdef/ideal.hpp"
#include "ofdef/numfield.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ofdef {

/// y^2 = x^3 + a x + b over K.
class WeierstrassCurve {
public:
    WeierstrassCurve() : a_(nullptr, {}), b_(nullptr, {}) {}
    WeierstrassCurve(FieldElement a, FieldElement b);

    const FieldElement& a() const { return a_; }
    const FieldElement& b() const { return b_; }
    const FieldPtr& field() const { return a_.field(); }

    /// -16 (4 a^3 + 27 b^2)
    FieldElement discriminant() const;

private:
    FieldElement a_;
    FieldElement b_;
};

class CurvePoint {
public:
    CurvePoint() = default; ///< the point at infinity
    static CurvePoint infinity() { return CurvePoint(); }
    static CurvePoint affine(FieldElement x, FieldElement y) { return CurvePoint(std::move(x), std::move(y)); }

    bool is_infinity() const { return !coords_.has_value(); }
    const FieldElement& x() const;
    const FieldElement& y() const;

    bool operator==(const CurvePoint& o) const;
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }

private:
    CurvePoint(FieldElement x, FieldElement y) : coords_(std::make_pair(std::move(x), std::move(y))) {}

    std::optional<std::pair<FieldElement, FieldElement>> coords_;
};

bool on_curve(const WeierstrassCurve& E, const CurvePoint& P);

CurvePoint negate(const CurvePoint& P);
CurvePoint add(const WeierstrassCurve& E, const CurvePoint& P, const CurvePoint& Q);

enum class PointOp { Add, NegateFirst, DoubleFirst };
CurvePoint point_op(const WeierstrassCurve& E, const CurvePoint& P, const CurvePoint& Q, PointOp op);

/// m P by double-and-add; negative m multiplies -P.
CurvePoint scalar_mul(const WeierstrassCurve& E, long m, const CurvePoint& P);

/// z = -x/y. Throws for O and for points with y = 0.
FieldElement z_parameter(const CurvePoint& P);

/// v_P(z(P)) for a point near O at the prime (v(x) < 0). Derived from v(x)
/// and cross-checked against the valuation of -x/y. Returns nullopt when the
/// point is not P-adically close to O.
std::optional<long> local_point_valuation(const CurvePoint& P, const PrimeIdeal& prime);

/// The ideal J with J^2 = den(x(P)), computed as den(y) den(x)^{-1} and
/// checked by squaring. Works without factoring.
FractionalIdeal denominator_root(const CurvePoint& P);

struct RankOneInstance {
    std::string name;
    ExtensionPtr ext;
    WeierstrassCurve curve;
    CurvePoint generator; ///< P1
    long r = 1;
    long ell = 1;
    long torsion_order = 1;
    long index_EK_EF = 1;
    std::vector<std::pair<std::string, long>> tamagawa_indices;
    std::map<std::string, std::string> provenance;
    Rat c = 1;       ///< constant used for coordinate bounds
    Rat c_prime = 1; ///< constant used for the congruence descent

    struct Bounds {
        long k_bound = 50;
        long m_max = 5;
        long k_max = 6;
        long coord_box = 3;
        unsigned long norm_box = 50;
        unsigned long trial_bound = kDefaultTrialBound;
        unsigned precision = 12;
    } bounds;

    const FieldPtr& top() const { return ext->top(); }
    const FieldPtr& base() const { return ext->base(); }

    /// k * r * P1.
    CurvePoint multiple(long k) const;
};

/// Q_k = k r P1, extended incrementally by one addition per new k.
class MultipleTable {
public:
    explicit MultipleTable(const RankOneInstance& inst);
    /// Q_k; negative k gives -Q_{|k|}.
    CurvePoint operator[](long k);
    const WeierstrassCurve& curve() const { return curve_; }

private:
    WeierstrassCurve curve_;
    std::vector<CurvePoint> points_;
};

struct ValidationCheck {
    std::string name;
    bool passed = false;
    nlohmann::json witness;
};

struct ValidationReport {
    std::string instance;
    std::vector<ValidationCheck> checks;

    bool passed() const;
    const ValidationCheck* find(const std::string& name) const;
};

ValidationReport validate_instance(const RankOneInstance& inst);

/// Number of points of the reduction at a degree-one prime, including O.
/// Returns nullopt unless the prime has residue degree one and the curve
/// has good reduction there.
std::optional<Int> count_points_mod(const WeierstrassCurve& E, const PrimeIdeal& prime);

} // namespace ofdef
