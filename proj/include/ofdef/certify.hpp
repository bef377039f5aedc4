#pragma once

#include "ofdef/elliptic.hpp"
#include "ofdef/serialize.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ofdef {

/// y_j = sum_i coeffs[j][i] x_i with integral coefficients, witnessing that
/// the fractional ideal (x_1, ..., x_m) divides (y_1, ..., y_n).
struct DivisibilityWitness {
    std::vector<FieldElement> xs;
    std::vector<FieldElement> ys;
    std::vector<std::vector<FieldElement>> coeffs;

    bool replays() const;
    Json to_json() const;
    static DivisibilityWitness from_json(const FieldPtr& K, const Json& j, const std::string& path);
};

/// Throws NoWitness when (xs) does not divide (ys), InvalidArgument when every x is zero.
DivisibilityWitness divisibility_witness(const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys);

enum class PredicateKind {
    DenDivDen, ///< den(t) | den(u): (u, 1) divides (t, 1)
    DenDivNum, ///< den(t) | num(u): u = 0, or uv = 1 and den(t) | den(v)
    EltDivDen, ///< t | den(u): tv = 1 and den(v) | den(u)
};

const char* to_string(PredicateKind k);

struct PredicateWitness {
    PredicateKind kind = PredicateKind::DenDivDen;
    FieldElement t{nullptr, {}};
    FieldElement u{nullptr, {}};
    std::optional<FieldElement> v;
    /// Absent only for the u = 0 branch of DenDivNum.
    std::optional<DivisibilityWitness> divisibility;

    /// Replays the reduction from the stored data alone.
    bool replays() const;
    Json to_json() const;
    static PredicateWitness from_json(const FieldPtr& K, const Json& j, const std::string& path);
};

/// Throws NoWitness when the predicate is false, InvalidArgument outside its domain.
PredicateWitness predicate_witness(PredicateKind kind, const FieldElement& t, const FieldElement& u);

/// Witness that mu belongs to the set S: points P0 = k0 r P1, P = ell P0,
/// P' = k' r P1 with t0, t, t' their x-coordinates and
///   (3) (mu+1)...(mu+n) | den(t0), (4) den(t) | den(t'), (5) den(t) | num((t/t' - mu)^2).
struct SCertificate {
    static constexpr const char* kSchema = "ofdef.s-certificate/1";

    std::string instance;
    FieldElement mu{nullptr, {}};
    long k0 = 0;
    long ell = 0;
    long k_prime = 0;
    CurvePoint P0;
    CurvePoint P;
    CurvePoint P_prime;
    FieldElement t0{nullptr, {}};
    FieldElement t{nullptr, {}};
    FieldElement t_prime{nullptr, {}};
    PredicateWitness condition3;
    PredicateWitness condition4;
    PredicateWitness condition5;
    /// J with J^2 = den(t).
    FractionalIdeal root = FractionalIdeal::unit(NumberField::rationals());
    Rat c = 1;
    Rat c_prime = 1;

    Json to_json() const;
    static SCertificate from_json(const RankOneInstance& inst, const Json& j);
};

struct ConditionResult {
    std::string name;
    bool passed = false;
    Json detail = Json::object();
};

struct CheckReport {
    std::vector<ConditionResult> results;

    bool passed() const;
    /// Name of the first failing condition, if any.
    std::optional<std::string> first_failure() const;
    std::vector<std::string> failures() const;
    const ConditionResult* find(const std::string& name) const;
    Json to_json(const char* accept_word, const char* reject_word) const;
};

/// Builds the certificate for mu = m^2. Throws BoundExceeded from the P0
/// search and EllTooSmall when c' N(J) > N(den t0)^c fails.
SCertificate build_S_certificate(const RankOneInstance& inst, long m, long k_bound);

/// Recomputes every condition from the certificate's raw data.
CheckReport verify_S_certificate(const SCertificate& cert, const RankOneInstance& inst);

/// Replays the argument that an accepted certificate forces mu into O_F,
/// step by step, and compares with the direct test on relative coordinates.
CheckReport soundness_descent(const SCertificate& cert, const RankOneInstance& inst);

/// Derivation of an integer from squares:
///   odd z >= 3:  (m+1)^2 - m^2 with m = (z-1)/2
///   odd z <= 1:  4 - s with s = 4 - z odd >= 3
///   even z:      s + 1 with s = z - 1
struct TraceNode {
    enum class Rule { Square, DifferenceOfSquares, FourMinus, PlusOne };
    Rule rule = Rule::Square;
    Int value;
    Int root; ///< m for a Square leaf
    std::vector<TraceNode> children;
};

struct IntegerTrace {
    Int target;
    TraceNode tree;

    /// Re-derives every node value from the leaves and checks the rule shapes.
    bool replays() const;
    /// Square roots m of the leaves m^2, ascending and distinct.
    std::vector<Int> leaf_roots() const;
    Json to_json() const;
    static IntegerTrace from_json(const Json& j, const std::string& path);
};

IntegerTrace trace_integer(const Int& z);

struct OFCertificate {
    static constexpr const char* kSchema = "ofdef.of-certificate/1";

    std::string instance;
    FieldElement w{nullptr, {}}; ///< element of F
    std::vector<FieldElement> basis;
    std::vector<Int> coords;
    std::vector<IntegerTrace> traces;
    /// m -> certificate for m^2, when point leaves were requested.
    std::map<long, SCertificate> leaves;

    Json to_json() const;
    static OFCertificate from_json(const RankOneInstance& inst, const Json& j);
};

/// `w` may be given in F or in K (it must lie in the embedded O_F).
OFCertificate certify_of_element(const RankOneInstance& inst, const FieldElement& w, bool with_point_leaves,
                                 long k_bound);
CheckReport verify_of_certificate(const OFCertificate& cert, const RankOneInstance& inst);

/// x1 >= x2 >= x3 >= x4 >= 0 with the sum of squares equal to a, largest x1
/// first. Throws NoWitness for a < 0.
std::array<Int, 4> four_squares_witness(const Int& a);

} // namespace ofdef
