#pragma once

#include "ofdef/elliptic.hpp"
#include "ofdef/serialize.hpp"

#include <string>
#include <vector>

namespace ofdef {

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

struct LemmaCase {
    std::string key;
    Verdict verdict = Verdict::Pass;
    Json witness = Json::object();
};

struct LemmaReport {
    std::string lemma;
    std::string instance;
    std::vector<LemmaCase> cases;
    /// Empirical constants and parameters the suite ran with.
    Json constants = Json::object();

    /// Pass iff every case passes; otherwise Fail if any case fails, else Inconclusive.
    Verdict verdict() const;
    const LemmaCase* find(const std::string& key) const;
    Json to_json() const;
};

/// Coordinate bound: if mu(mu+1)...(mu+n) | I (or (mu+1)...(mu+n) | I when
/// include_mu_factor is false), then N(D a_i) <= N(I)^c for every relative
/// coordinate a_i of mu. Reports the least integer exponent that would pass.
LemmaReport check_coordinate_bound(const RankOneInstance& inst, const FieldElement& mu, const FractionalIdeal& I,
                                   const Rat& c, bool include_mu_factor);

/// The coordinate bound over every mu in the coordinate box with I equal to
/// the hypothesis product itself.
LemmaReport check_coordinate_bound_sample(const RankOneInstance& inst, const Rat& c, bool include_mu_factor,
                                          long coord_box);

/// Congruence descent, as a falsification search: for mu in O_K \ O_F with
/// integral coordinates in the box, ideals I of O_F of norm <= norm_box and
/// w in O_F with mu = w mod I O_K, some coordinate must have
/// N(D a_i) >= c' N(I O_K). Reports the largest c' surviving every sample.
LemmaReport check_descent(const RankOneInstance& inst, const Rat& c_prime, long coord_box, unsigned long norm_box);

/// N(den x(mP))^10 >= N(den x(P))^{9 m^2} for 2 <= |m| <= m_max, P = r P1,
/// together with den x(P) != (1).
LemmaReport check_denominator_growth(const RankOneInstance& inst, long m_max);

/// den x(Q_k) | den x(Q_k') <=> k | k' for 1 <= k, k' <= k_max, Q_k = k r P1.
LemmaReport check_multiple_divisibility(const RankOneInstance& inst, long k_max);

struct PointWithDenominator {
    long k = 0;
    CurvePoint point;
};

/// Least k in [1, k_bound] with I | den x(k r P1). Throws BoundExceeded.
PointWithDenominator find_point_with_denominator(const RankOneInstance& inst, const FractionalIdeal& I, long k_bound);
PointWithDenominator find_point_with_denominator(MultipleTable& table, const FractionalIdeal& I, long k_bound);

/// Runs the point search for each ideal; bound-exceeded is inconclusive. For
/// a found k, checks I | den x(k' r P1) for every multiple k' of k up to `window`.
LemmaReport check_point_with_denominator(const RankOneInstance& inst, const std::vector<FractionalIdeal>& ideals,
                                         long k_bound, long window);

/// den(t) | num((t/t' - m^2)^2) with t = x(P), t' = x(mP), 1 <= |m| <= m_max.
LemmaReport check_quotient_congruence(const RankOneInstance& inst, long m_max);

/// Membership pattern {k <= k_max : I | den x(k r P1)} must be the multiples
/// of its least element; an empty pattern is inconclusive.
LemmaReport probe_GI_subgroup(const RankOneInstance& inst, const FractionalIdeal& I, long k_max);

/// (2), (3) and (mu+1)...(mu+n) for mu = 4, n = [K:Q], as ideals of O_K.
std::vector<FractionalIdeal> default_probe_ideals(const RankOneInstance& inst);

/// (mu+1)(mu+2)...(mu+n), with the leading factor mu when requested.
FieldElement hypothesis_product(const FieldElement& mu, bool include_mu_factor);

/// Suite tags: bound, descent, growth, multiple, point, quotient, gi.
const std::vector<std::string>& lemma_tags();
std::vector<LemmaReport> run_lemma_suites(const RankOneInstance& inst, const std::vector<std::string>& tags);

} // namespace ofdef
