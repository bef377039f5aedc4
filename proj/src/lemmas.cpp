#include "ofdef/lemmas.hpp"
#include "ofdef/error.hpp"

#include <algorithm>
#include <set>

namespace ofdef {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict LemmaReport::verdict() const
{
    bool inconclusive = false;
    for (const auto& c : cases) {
        if (c.verdict == Verdict::Fail)
            return Verdict::Fail;
        inconclusive = inconclusive || c.verdict == Verdict::Inconclusive;
    }
    return inconclusive ? Verdict::Inconclusive : Verdict::Pass;
}

const LemmaCase* LemmaReport::find(const std::string& key) const
{
    for (const auto& c : cases)
        if (c.key == key)
            return &c;
    return nullptr;
}

Json LemmaReport::to_json() const
{
    Json cs = Json::array();
    for (const auto& c : cases)
        cs.push_back({{"case", c.key}, {"verdict", to_string(c.verdict)}, {"witness", c.witness}});
    return {{"lemma", lemma},
            {"instance", instance},
            {"verdict", to_string(verdict())},
            {"cases", cs},
            {"constants", constants}};
}

namespace {

Rat rat_pow(const Rat& base, unsigned long e)
{
    return ratio(pow(base.get_num(), e), pow(base.get_den(), e));
}

/// a <= b^c for rational c = p/q > 0 and a, b >= 0, compared as a^q <= b^p.
bool at_most_power(const Rat& a, const Rat& b, const Rat& c)
{
    return rat_pow(a, c.get_den().get_ui()) <= rat_pow(b, c.get_num().get_ui());
}

Int ideal_norm_int(const FractionalIdeal& I)
{
    const Rat n = I.norm();
    if (n.get_den() != 1)
        throw Error(ErrorKind::InvalidArgument, "expected an integral ideal");
    return n.get_num();
}

/// |N_{K/Q}(D a_i)| for every relative coordinate a_i of mu.
std::vector<Rat> coordinate_norms(const RelativeExtension& ext, const FieldElement& mu)
{
    std::vector<Rat> out;
    for (const auto& a : ext.relative_coordinates(mu))
        out.push_back(abs(ext.embed(ext.discriminant() * a).norm()));
    return out;
}

Json rationals_json(const std::vector<Rat>& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

/// Least integer c >= 0 with every value <= base^c; base >= 2.
long least_exponent(const std::vector<Rat>& values, const Rat& base)
{
    const Rat top = values.empty() ? Rat(0) : *std::max_element(values.begin(), values.end());
    long c = 0;
    Rat power = 1;
    while (power < top) {
        power *= base;
        ++c;
    }
    return c;
}

std::vector<FieldElement> box_elements(const FieldPtr& K, long box)
{
    const std::size_t n = K->degree();
    std::vector<FieldElement> out;
    std::vector<long> c(n, -box);
    for (;;) {
        std::vector<Rat> coords(c.begin(), c.end());
        out.push_back(FieldElement::from_integral_coords(K, coords));
        std::size_t i = 0;
        while (i < n && c[i] == box)
            c[i++] = -box;
        if (i == n)
            break;
        ++c[i];
    }
    return out;
}

std::string element_key(const FieldElement& a) { return to_string(a); }

LemmaReport new_report(const char* lemma, const RankOneInstance& inst)
{
    LemmaReport rep;
    rep.lemma = lemma;
    rep.instance = inst.name;
    return rep;
}

} // namespace

FieldElement hypothesis_product(const FieldElement& mu, bool include_mu_factor)
{
    const FieldPtr& K = mu.field();
    FieldElement prod = include_mu_factor ? mu : FieldElement::from_rational(K, 1);
    for (std::size_t j = 1; j <= K->degree(); ++j)
        prod *= mu + FieldElement::from_rational(K, static_cast<long>(j));
    return prod;
}

LemmaReport check_coordinate_bound(const RankOneInstance& inst, const FieldElement& mu, const FractionalIdeal& I,
                                   const Rat& c, bool include_mu_factor)
{
    if (I.is_zero() || !I.is_integral() || I.is_unit())
        throw Error(ErrorKind::InvalidArgument, "coordinate bound needs a nonzero nonunit integral ideal");
    if (!mu.is_integral())
        throw Error(ErrorKind::InvalidArgument, "coordinate bound needs integral mu");
    if (c <= 0)
        throw Error(ErrorKind::InvalidArgument, "c must be positive");
    LemmaReport rep = new_report("coordinate-bound", inst);
    rep.constants = {{"c", to_string(c)},
                     {"include_mu_factor", include_mu_factor},
                     {"hypothesis", include_mu_factor ? "mu(mu+1)...(mu+n) | I" : "(mu+1)...(mu+n) | I"}};

    LemmaCase cs;
    cs.key = element_key(mu);
    const FieldElement prod = hypothesis_product(mu, include_mu_factor);
    const bool hypothesis = !prod.is_zero() && divides(FractionalIdeal::principal(prod), I);
    cs.witness["hypothesis_holds"] = hypothesis;
    cs.witness["norm_I"] = to_string(I.norm());
    if (!hypothesis) {
        cs.verdict = Verdict::Inconclusive;
        cs.witness["reason"] = "hypothesis-not-satisfied";
        rep.cases.push_back(std::move(cs));
        return rep;
    }
    const auto norms = coordinate_norms(*inst.ext, mu);
    const Rat nI = I.norm();
    bool ok = true;
    for (const auto& v : norms)
        ok = ok && at_most_power(v, nI, c);
    const long least = least_exponent(norms, nI);
    cs.witness["coordinate_norms"] = rationals_json(norms);
    cs.witness["least_integer_c"] = least;
    cs.verdict = ok ? Verdict::Pass : Verdict::Fail;
    rep.constants["observed_least_integer_c"] = least;
    rep.cases.push_back(std::move(cs));
    return rep;
}

LemmaReport check_coordinate_bound_sample(const RankOneInstance& inst, const Rat& c, bool include_mu_factor,
                                          long coord_box)
{
    LemmaReport rep = new_report("coordinate-bound", inst);
    long observed = 0;
    for (const auto& mu : box_elements(inst.top(), coord_box)) {
        const FieldElement prod = hypothesis_product(mu, include_mu_factor);
        if (prod.is_zero())
            continue;
        const FractionalIdeal I = FractionalIdeal::principal(prod);
        if (I.is_unit())
            continue;
        LemmaReport one = check_coordinate_bound(inst, mu, I, c, include_mu_factor);
        if (one.constants.contains("observed_least_integer_c"))
            observed = std::max(observed, one.constants["observed_least_integer_c"].get<long>());
        rep.constants = one.constants;
        rep.cases.push_back(std::move(one.cases.front()));
    }
    rep.constants["coord_box"] = coord_box;
    rep.constants["observed_least_integer_c"] = observed;
    return rep;
}

LemmaReport check_descent(const RankOneInstance& inst, const Rat& c_prime, long coord_box, unsigned long norm_box)
{
    if (c_prime <= 0)
        throw Error(ErrorKind::InvalidArgument, "c' must be positive");
    const RelativeExtension& ext = *inst.ext;
    LemmaReport rep = new_report("congruence-descent", inst);

    struct BaseIdeal {
        FractionalIdeal ideal;
        FractionalIdeal extended;
        Rat norm; // N_{K/Q}(I O_K)
        std::vector<FieldElement> residues;
    };
    std::vector<BaseIdeal> ideals;
    for (const auto& I : integral_ideals_up_to(inst.base(), norm_box)) {
        FractionalIdeal IO = extend(I, ext);
        std::vector<FieldElement> reps;
        for (const auto& w : residue_representatives(I))
            reps.push_back(ext.embed(w));
        const Rat n = IO.norm();
        ideals.push_back({I, std::move(IO), n, std::move(reps)});
    }

    std::optional<Rat> surviving;
    long samples = 0;
    for (const auto& mu : box_elements(inst.top(), coord_box)) {
        LemmaCase cs;
        cs.key = element_key(mu);
        if (ext.lies_in_base(mu)) {
            // Trivial direction: the conclusion mu in O_F holds outright.
            const bool ok = ext.preimage(mu)->is_integral();
            cs.verdict = ok ? Verdict::Pass : Verdict::Fail;
            cs.witness = {{"in_base", true}};
            rep.cases.push_back(std::move(cs));
            continue;
        }
        const auto norms = coordinate_norms(ext, mu);
        const Rat worst = *std::max_element(norms.begin(), norms.end());
        std::optional<Rat> tightest;
        Json tight_witness;
        bool counterexample = false;
        Json counter;
        for (const auto& b : ideals) {
            const FieldElement* w = nullptr;
            for (const auto& cand : b.residues)
                if (b.extended.contains(mu - cand)) {
                    w = &cand;
                    break;
                }
            if (!w)
                continue;
            ++samples;
            const Rat r = worst / b.norm;
            if (!tightest || r < *tightest) {
                tightest = r;
                tight_witness = {{"I", to_json(b.ideal)}, {"w", to_json(*w)}, {"norm_IOK", to_string(b.norm)}};
            }
            if (!counterexample && worst < c_prime * b.norm) {
                counterexample = true;
                counter = {{"I", to_json(b.ideal)}, {"w", to_json(*w)}, {"norm_IOK", to_string(b.norm)}};
            }
        }
        cs.witness = {{"coordinate_norms", rationals_json(norms)}};
        if (tightest) {
            cs.witness["tightest_ratio"] = to_string(*tightest);
            cs.witness["tightest_sample"] = tight_witness;
            surviving = surviving ? std::min(*surviving, *tightest) : *tightest;
        }
        if (counterexample)
            cs.witness["counterexample"] = counter;
        cs.verdict = counterexample ? Verdict::Fail : Verdict::Pass;
        rep.cases.push_back(std::move(cs));
    }
    rep.constants = {{"c_prime", to_string(c_prime)},
                     {"coord_box", coord_box},
                     {"norm_box", norm_box},
                     {"samples", samples},
                     {"largest_surviving_c_prime", surviving ? to_string(*surviving) : "unbounded"}};
    return rep;
}

LemmaReport check_denominator_growth(const RankOneInstance& inst, long m_max)
{
    if (m_max < 2)
        throw Error(ErrorKind::InvalidArgument, "m_max must be at least 2");
    LemmaReport rep = new_report("denominator-growth", inst);
    MultipleTable table(inst);
    const CurvePoint P = table[1];
    if (P.is_infinity())
        throw Error(ErrorKind::InvalidArgument, "r P1 is the point at infinity");
    const Int base = ideal_norm_int(den_ideal(P.x()));
    rep.constants = {{"m_max", m_max}, {"norm_den_x_P", to_string(base)}};

    LemmaCase pre;
    pre.key = "den-nontrivial";
    pre.verdict = base != 1 ? Verdict::Pass : Verdict::Fail;
    pre.witness = {{"norm_den_x_P", to_string(base)}, {"r", inst.r}};
    if (base == 1)
        pre.witness["reason"] = "den(x(rP1)) = (1); r too small for the growth bound";
    rep.cases.push_back(std::move(pre));

    for (long a = 2; a <= m_max; ++a)
        for (long m : {a, -a}) {
            const CurvePoint mP = table[m];
            LemmaCase cs;
            cs.key = "m=" + std::to_string(m);
            if (mP.is_infinity()) {
                cs.verdict = Verdict::Fail;
                cs.witness = {{"reason", "mP is the point at infinity"}};
                rep.cases.push_back(std::move(cs));
                continue;
            }
            const Int nm = ideal_norm_int(den_ideal(mP.x()));
            const bool ok = pow(nm, 10) >= pow(base, static_cast<unsigned long>(9 * m * m));
            cs.verdict = ok ? Verdict::Pass : Verdict::Fail;
            cs.witness = {{"norm_den_x_mP", to_string(nm)},
                          {"inequality", "N(den x(mP))^10 >= N(den x(P))^(9 m^2)"},
                          {"holds", ok}};
            rep.cases.push_back(std::move(cs));
        }
    return rep;
}

LemmaReport check_multiple_divisibility(const RankOneInstance& inst, long k_max)
{
    LemmaReport rep = new_report("multiple-divisibility", inst);
    MultipleTable table(inst);
    std::vector<FractionalIdeal> dens;
    for (long k = 1; k <= k_max; ++k) {
        const CurvePoint Q = table[k];
        if (Q.is_infinity())
            throw Error(ErrorKind::InvalidArgument, "a multiple of r P1 is the point at infinity");
        dens.push_back(den_ideal(Q.x()));
    }
    long if_failures = 0;
    long only_if_failures = 0;
    for (long k = 1; k <= k_max; ++k)
        for (long kp = 1; kp <= k_max; ++kp) {
            const bool d = divides(dens[k - 1], dens[kp - 1]);
            const bool expect = kp % k == 0;
            LemmaCase cs;
            cs.key = "k=" + std::to_string(k) + ",k'=" + std::to_string(kp);
            cs.verdict = d == expect ? Verdict::Pass : Verdict::Fail;
            cs.witness = {{"divides", d}, {"k_divides_k'", expect}};
            if (d != expect) {
                cs.witness["direction"] = expect ? "if" : "only-if";
                ++(expect ? if_failures : only_if_failures);
            }
            rep.cases.push_back(std::move(cs));
        }
    rep.constants = {{"k_max", k_max}, {"if_direction_failures", if_failures},
                     {"only_if_direction_failures", only_if_failures}};
    return rep;
}

PointWithDenominator find_point_with_denominator(MultipleTable& table, const FractionalIdeal& I, long k_bound)
{
    if (I.is_zero() || !I.is_integral())
        throw Error(ErrorKind::InvalidArgument, "point search needs a nonzero integral ideal");
    for (long k = 1; k <= k_bound; ++k) {
        const CurvePoint Q = table[k];
        if (Q.is_infinity())
            continue;
        if (divides(I, den_ideal(Q.x())))
            return {k, Q};
    }
    throw Error(ErrorKind::BoundExceeded,
                "no multiple k r P1 with k <= " + std::to_string(k_bound) + " has the requested denominator");
}

PointWithDenominator find_point_with_denominator(const RankOneInstance& inst, const FractionalIdeal& I, long k_bound)
{
    MultipleTable table(inst);
    return find_point_with_denominator(table, I, k_bound);
}

LemmaReport check_point_with_denominator(const RankOneInstance& inst, const std::vector<FractionalIdeal>& ideals,
                                         long k_bound, long window)
{
    LemmaReport rep = new_report("point-with-denominator", inst);
    rep.constants = {{"k_bound", k_bound}, {"window", window}};
    MultipleTable table(inst);
    for (const auto& I : ideals) {
        LemmaCase cs;
        cs.key = "I=" + to_json(I).dump();
        try {
            const auto found = find_point_with_denominator(table, I, k_bound);
            cs.witness = {{"k", found.k}, {"norm_I", to_string(I.norm())}};
            Json bad = Json::array();
            for (long kp = found.k; kp <= window; kp += found.k)
                if (!divides(I, den_ideal(table[kp].x())))
                    bad.push_back(kp);
            cs.witness["multiples_checked_up_to"] = window;
            cs.witness["multiples_failing"] = bad;
            cs.verdict = bad.empty() ? Verdict::Pass : Verdict::Fail;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BoundExceeded)
                throw;
            cs.verdict = Verdict::Inconclusive;
            cs.witness = {{"reason", "bound-exceeded"}, {"k_bound", k_bound}};
        }
        rep.cases.push_back(std::move(cs));
    }
    return rep;
}

LemmaReport check_quotient_congruence(const RankOneInstance& inst, long m_max)
{
    LemmaReport rep = new_report("quotient-congruence", inst);
    MultipleTable table(inst);
    const CurvePoint P = table[1];
    if (P.is_infinity())
        throw Error(ErrorKind::InvalidArgument, "r P1 is the point at infinity");
    const FieldElement& t = P.x();
    const FractionalIdeal dt = den_ideal(t);
    rep.constants = {{"m_max", m_max}, {"den_t", to_json(dt)}};
    std::optional<PrimeFactorization> fac;
    try {
        fac = factor(dt, inst.bounds.trial_bound);
        rep.constants["den_t_factorization"] = to_json(*fac);
    } catch (const Error&) {
        rep.constants["den_t_factorization"] = "unavailable";
    }
    for (long a = 1; a <= m_max; ++a)
        for (long m : {a, -a}) {
            const CurvePoint mP = table[m];
            LemmaCase cs;
            cs.key = "m=" + std::to_string(m);
            if (mP.is_infinity()) {
                cs.verdict = Verdict::Inconclusive;
                cs.witness = {{"reason", "mP is the point at infinity"}};
                rep.cases.push_back(std::move(cs));
                continue;
            }
            const FieldElement diff = t / mP.x() - FieldElement::from_rational(t.field(), m * m);
            const FieldElement e = diff * diff;
            const bool ok = divides(dt, num_ideal(e));
            cs.verdict = ok ? Verdict::Pass : Verdict::Fail;
            cs.witness = {{"zero", e.is_zero()}, {"divides", ok}};
            if (fac && !e.is_zero()) {
                Json vals = Json::array();
                for (const auto& [p, k] : fac->factors)
                    vals.push_back({{"prime", to_json(p)}, {"v_den_t", k}, {"v_num", valuation(p, num_ideal(e))}});
                cs.witness["valuations"] = vals;
            }
            rep.cases.push_back(std::move(cs));
        }
    return rep;
}

LemmaReport probe_GI_subgroup(const RankOneInstance& inst, const FractionalIdeal& I, long k_max)
{
    if (I.is_zero() || !I.is_integral())
        throw Error(ErrorKind::InvalidArgument, "G_I probe needs a nonzero integral ideal");
    LemmaReport rep = new_report("GI-subgroup", inst);
    rep.constants = {{"k_max", k_max}, {"I", to_json(I)}};
    MultipleTable table(inst);
    std::set<long> members;
    for (long k = 1; k <= k_max; ++k) {
        const CurvePoint Q = table[k];
        if (!Q.is_infinity() && divides(I, den_ideal(Q.x())))
            members.insert(k);
    }
    LemmaCase cs;
    cs.key = "I=" + to_json(I).dump();
    Json pattern = Json::array();
    for (long k : members)
        pattern.push_back(k);
    cs.witness = {{"members", pattern}};
    if (members.empty()) {
        cs.verdict = Verdict::Inconclusive;
        cs.witness["reason"] = "no member in the window";
    } else {
        const long least = *members.begin();
        std::set<long> expect;
        for (long k = least; k <= k_max; k += least)
            expect.insert(k);
        cs.witness["least"] = least;
        cs.verdict = members == expect ? Verdict::Pass : Verdict::Fail;
    }
    rep.cases.push_back(std::move(cs));
    return rep;
}

std::vector<FractionalIdeal> default_probe_ideals(const RankOneInstance& inst)
{
    const FieldPtr& K = inst.top();
    return {FractionalIdeal::principal(FieldElement::from_rational(K, 2)),
            FractionalIdeal::principal(FieldElement::from_rational(K, 3)),
            FractionalIdeal::principal(hypothesis_product(FieldElement::from_rational(K, 4), false))};
}

const std::vector<std::string>& lemma_tags()
{
    static const std::vector<std::string> tags{"bound", "descent", "growth", "multiple", "point", "quotient", "gi"};
    return tags;
}

std::vector<LemmaReport> run_lemma_suites(const RankOneInstance& inst, const std::vector<std::string>& tags)
{
    for (const auto& t : tags)
        if (std::find(lemma_tags().begin(), lemma_tags().end(), t) == lemma_tags().end())
            throw Error(ErrorKind::InvalidArgument, "unknown lemma tag '" + t + "'");
    auto wanted = [&](const char* t) { return std::find(tags.begin(), tags.end(), t) != tags.end(); };
    const auto& b = inst.bounds;
    std::vector<LemmaReport> out;
    if (wanted("bound")) {
        out.push_back(check_coordinate_bound_sample(inst, inst.c, true, b.coord_box));
        out.push_back(check_coordinate_bound_sample(inst, inst.c, false, b.coord_box));
    }
    if (wanted("descent"))
        out.push_back(check_descent(inst, inst.c_prime, b.coord_box, b.norm_box));
    if (wanted("growth"))
        out.push_back(check_denominator_growth(inst, b.m_max));
    if (wanted("multiple"))
        out.push_back(check_multiple_divisibility(inst, b.k_max));
    if (wanted("point"))
        out.push_back(check_point_with_denominator(inst, default_probe_ideals(inst), b.k_bound, 2 * b.k_max));
    if (wanted("quotient"))
        out.push_back(check_quotient_congruence(inst, b.m_max));
    if (wanted("gi"))
        for (const auto& I : default_probe_ideals(inst))
            out.push_back(probe_GI_subgroup(inst, I, 2 * b.k_max));
    return out;
}

} // namespace ofdef
