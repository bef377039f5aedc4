#include "ofdef/certify.hpp"
#include "ofdef/error.hpp"
#include "ofdef/lemmas.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ofdef {

namespace {

FieldElement one(const FieldPtr& K) { return FieldElement::from_rational(K, 1); }

Json elements_json(const std::vector<FieldElement>& v)
{
    Json out = Json::array();
    for (const auto& a : v)
        out.push_back(to_json(a));
    return out;
}

std::vector<FieldElement> elements_from_json(const FieldPtr& K, const Json& j, const std::string& path)
{
    if (!j.is_array())
        throw Error(ErrorKind::Parse, path + ": expected an array");
    std::vector<FieldElement> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(element_from_json(K, j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

/// Integer solution v of H v = target for H in lower echelon form.
std::optional<std::vector<Int>> echelon_solve(const HermiteResult& hr, const std::vector<Int>& target)
{
    std::vector<Int> rest = target;
    std::vector<Int> v(hr.rank);
    for (std::size_t j = 0; j < hr.rank; ++j) {
        const std::size_t p = hr.pivot_rows[j];
        if (rest[p] % hr.basis(p, j) != 0)
            return std::nullopt;
        v[j] = rest[p] / hr.basis(p, j);
        for (std::size_t i = 0; i < rest.size(); ++i)
            rest[i] -= hr.basis(i, j) * v[j];
    }
    if (std::any_of(rest.begin(), rest.end(), [](const Int& x) { return x != 0; }))
        return std::nullopt;
    return v;
}

Rat rat_pow(const Rat& base, unsigned long e) { return ratio(pow(base.get_num(), e), pow(base.get_den(), e)); }

/// N(den t0)^c < c' N(J'), with J' = restrict(J) extended back to O_K.
struct EllInequality {
    Rat norm_den_t0;
    Rat norm_root;
    bool holds = false;
    Json to_json(const Rat& c, const Rat& c_prime) const
    {
        return {{"inequality", "c' * N(restrict(J) O_K) > N(den t0)^c"},
                {"c", ofdef::to_string(c)},
                {"c_prime", ofdef::to_string(c_prime)},
                {"norm_den_t0", ofdef::to_string(norm_den_t0)},
                {"norm_restricted_root", ofdef::to_string(norm_root)},
                {"holds", holds}};
    }
};

EllInequality ell_inequality(const RankOneInstance& inst, const FieldElement& t0, const FractionalIdeal& J,
                             const Rat& c, const Rat& c_prime)
{
    EllInequality e;
    e.norm_den_t0 = den_ideal(t0).norm();
    e.norm_root = extend(restrict(J, *inst.ext), *inst.ext).norm();
    // c' N(J') > N(den t0)^c  <=>  (c' N(J'))^q > N(den t0)^p
    e.holds = rat_pow(c_prime * e.norm_root, c.get_den().get_ui()) > rat_pow(e.norm_den_t0, c.get_num().get_ui());
    return e;
}

FieldElement condition5_argument(const FieldElement& t, const FieldElement& t_prime, const FieldElement& mu)
{
    const FieldElement d = t / t_prime - mu;
    return d * d;
}

} // namespace

// ---------------------------------------------------------------------------
// Divisibility witnesses

bool DivisibilityWitness::replays() const
{
    if (xs.empty() || coeffs.size() != ys.size())
        return false;
    for (std::size_t j = 0; j < ys.size(); ++j) {
        if (coeffs[j].size() != xs.size())
            return false;
        FieldElement sum = FieldElement::zero(ys[j].field());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!coeffs[j][i].is_integral())
                return false;
            sum += coeffs[j][i] * xs[i];
        }
        if (!(sum == ys[j]))
            return false;
    }
    return true;
}

Json DivisibilityWitness::to_json() const
{
    Json cs = Json::array();
    for (const auto& row : coeffs)
        cs.push_back(elements_json(row));
    return {{"xs", elements_json(xs)}, {"ys", elements_json(ys)}, {"coeffs", cs}};
}

DivisibilityWitness DivisibilityWitness::from_json(const FieldPtr& K, const Json& j, const std::string& path)
{
    DivisibilityWitness w;
    w.xs = elements_from_json(K, field_at(j, "xs", path), path + ".xs");
    w.ys = elements_from_json(K, field_at(j, "ys", path), path + ".ys");
    const Json& cs = field_at(j, "coeffs", path);
    if (!cs.is_array())
        throw Error(ErrorKind::Parse, path + ".coeffs: expected an array");
    for (std::size_t r = 0; r < cs.size(); ++r)
        w.coeffs.push_back(elements_from_json(K, cs[r], path + ".coeffs[" + std::to_string(r) + "]"));
    return w;
}

DivisibilityWitness divisibility_witness(const std::vector<FieldElement>& xs, const std::vector<FieldElement>& ys)
{
    if (xs.empty() || std::all_of(xs.begin(), xs.end(), [](const FieldElement& x) { return x.is_zero(); }))
        throw Error(ErrorKind::InvalidArgument, "divisibility witness needs a nonzero generator");
    const FieldPtr K = xs.front().field();
    for (const auto& a : xs)
        if (!same_field(a.field(), K))
            throw Error(ErrorKind::FieldMismatch, "generators belong to different fields");
    for (const auto& a : ys)
        if (!same_field(a.field(), K))
            throw Error(ErrorKind::FieldMismatch, "generators belong to different fields");
    const std::size_t n = K->degree();

    // Z-module generated by omega_k x_i, in integral-basis coordinates scaled by d.
    std::vector<FieldElement> omega;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rat> e(n);
        e[k] = 1;
        omega.push_back(FieldElement::from_integral_coords(K, e));
    }
    std::vector<std::vector<Rat>> gens;
    for (const auto& x : xs)
        for (const auto& w : omega)
            gens.push_back((w * x).integral_coords());
    Int d = 1;
    for (const auto& g : gens)
        d = lcm(d, common_denominator(g));
    IntMatrix G(n, gens.size());
    for (std::size_t c = 0; c < gens.size(); ++c)
        for (std::size_t r = 0; r < n; ++r)
            G(r, c) = Rat(gens[c][r] * d).get_num();
    const HermiteResult hr = hermite_with_transform(G);

    DivisibilityWitness out;
    out.xs = xs;
    out.ys = ys;
    for (const auto& y : ys) {
        const std::vector<Rat> yc = y.integral_coords();
        std::vector<Int> target(n);
        for (std::size_t r = 0; r < n; ++r) {
            const Rat v = yc[r] * d;
            if (v.get_den() != 1)
                throw Error(ErrorKind::NoWitness, "(xs) does not divide (ys)");
            target[r] = v.get_num();
        }
        const auto sol = echelon_solve(hr, target);
        if (!sol)
            throw Error(ErrorKind::NoWitness, "(xs) does not divide (ys)");
        std::vector<Int> full(gens.size());
        for (std::size_t c = 0; c < gens.size(); ++c)
            for (std::size_t j = 0; j < hr.rank; ++j)
                full[c] += hr.transform(c, j) * (*sol)[j];
        std::vector<FieldElement> row;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::vector<Rat> coords(n);
            for (std::size_t k = 0; k < n; ++k)
                coords[k] = full[i * n + k];
            row.push_back(FieldElement::from_integral_coords(K, coords));
        }
        out.coeffs.push_back(std::move(row));
    }
    if (!out.replays())
        throw Error(ErrorKind::InvalidArgument, "internal error: divisibility witness does not replay");
    return out;
}

// ---------------------------------------------------------------------------
// Predicate witnesses

const char* to_string(PredicateKind k)
{
    switch (k) {
    case PredicateKind::DenDivDen: return "den_div_den";
    case PredicateKind::DenDivNum: return "den_div_num";
    case PredicateKind::EltDivDen: return "elt_div_den";
    }
    return "unknown";
}

namespace {

PredicateKind predicate_from_string(const std::string& s, const std::string& path)
{
    for (auto k : {PredicateKind::DenDivDen, PredicateKind::DenDivNum, PredicateKind::EltDivDen})
        if (s == to_string(k))
            return k;
    throw Error(ErrorKind::Parse, path + ": unknown predicate '" + s + "'");
}

void require_domain(PredicateKind kind, const FieldElement& t, const FieldElement& u)
{
    switch (kind) {
    case PredicateKind::DenDivDen:
        if (t.is_zero() || u.is_zero())
            throw Error(ErrorKind::InvalidArgument, "den_div_den needs t, u nonzero");
        break;
    case PredicateKind::DenDivNum:
        if (t.is_zero())
            throw Error(ErrorKind::InvalidArgument, "den_div_num needs t nonzero");
        break;
    case PredicateKind::EltDivDen:
        if (!t.is_integral() || u.is_zero())
            throw Error(ErrorKind::InvalidArgument, "elt_div_den needs t integral and u nonzero");
        break;
    }
}

bool same_elements(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

} // namespace

PredicateWitness predicate_witness(PredicateKind kind, const FieldElement& t, const FieldElement& u)
{
    require_domain(kind, t, u);
    const FieldPtr& K = t.field();
    PredicateWitness w;
    w.kind = kind;
    w.t = t;
    w.u = u;
    switch (kind) {
    case PredicateKind::DenDivDen:
        w.divisibility = divisibility_witness({u, one(K)}, {t, one(K)});
        break;
    case PredicateKind::DenDivNum:
        if (!u.is_zero()) {
            w.v = u.inverse();
            w.divisibility = divisibility_witness({*w.v, one(K)}, {t, one(K)});
        }
        break;
    case PredicateKind::EltDivDen:
        if (t.is_zero())
            throw Error(ErrorKind::NoWitness, "0 divides no nonzero ideal");
        w.v = t.inverse();
        w.divisibility = divisibility_witness({u, one(K)}, {*w.v, one(K)});
        break;
    }
    return w;
}

bool PredicateWitness::replays() const
{
    try {
        require_domain(kind, t, u);
    } catch (const Error&) {
        return false;
    }
    const FieldPtr& K = t.field();
    switch (kind) {
    case PredicateKind::DenDivDen:
        return !v && divisibility && same_elements(divisibility->xs, {u, one(K)}) &&
               same_elements(divisibility->ys, {t, one(K)}) && divisibility->replays();
    case PredicateKind::DenDivNum:
        if (u.is_zero())
            return !v && !divisibility;
        return v && divisibility && (u * *v) == one(K) && same_elements(divisibility->xs, {*v, one(K)}) &&
               same_elements(divisibility->ys, {t, one(K)}) && divisibility->replays();
    case PredicateKind::EltDivDen:
        return v && divisibility && (t * *v) == one(K) && same_elements(divisibility->xs, {u, one(K)}) &&
               same_elements(divisibility->ys, {*v, one(K)}) && divisibility->replays();
    }
    return false;
}

Json PredicateWitness::to_json() const
{
    Json j = {{"kind", to_string(kind)}, {"t", ofdef::to_json(t)}, {"u", ofdef::to_json(u)}};
    if (v)
        j["v"] = ofdef::to_json(*v);
    if (divisibility)
        j["divisibility"] = divisibility->to_json();
    return j;
}

PredicateWitness PredicateWitness::from_json(const FieldPtr& K, const Json& j, const std::string& path)
{
    PredicateWitness w;
    const Json& kind = field_at(j, "kind", path);
    if (!kind.is_string())
        throw Error(ErrorKind::Parse, path + ".kind: expected a string");
    w.kind = predicate_from_string(kind.get<std::string>(), path + ".kind");
    w.t = element_from_json(K, field_at(j, "t", path), path + ".t");
    w.u = element_from_json(K, field_at(j, "u", path), path + ".u");
    if (j.contains("v"))
        w.v = element_from_json(K, j["v"], path + ".v");
    if (j.contains("divisibility"))
        w.divisibility = DivisibilityWitness::from_json(K, j["divisibility"], path + ".divisibility");
    return w;
}

// ---------------------------------------------------------------------------
// Reports

bool CheckReport::passed() const
{
    return !results.empty() &&
           std::all_of(results.begin(), results.end(), [](const ConditionResult& r) { return r.passed; });
}

std::optional<std::string> CheckReport::first_failure() const
{
    for (const auto& r : results)
        if (!r.passed)
            return r.name;
    return std::nullopt;
}

std::vector<std::string> CheckReport::failures() const
{
    std::vector<std::string> out;
    for (const auto& r : results)
        if (!r.passed)
            out.push_back(r.name);
    return out;
}

const ConditionResult* CheckReport::find(const std::string& name) const
{
    for (const auto& r : results)
        if (r.name == name)
            return &r;
    return nullptr;
}

Json CheckReport::to_json(const char* accept_word, const char* reject_word) const
{
    Json rs = Json::array();
    for (const auto& r : results)
        rs.push_back({{"condition", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    Json j = {{"verdict", passed() ? accept_word : reject_word}, {"conditions", rs}};
    if (auto f = first_failure())
        j["first_failure"] = *f;
    return j;
}

namespace {

/// Runs `body`; any exception counts as a failure with its message recorded.
void record(CheckReport& rep, const std::string& name, const std::function<bool(Json&)>& body)
{
    ConditionResult r;
    r.name = name;
    try {
        r.passed = body(r.detail);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail["error"] = e.what();
    }
    rep.results.push_back(std::move(r));
}

} // namespace

// ---------------------------------------------------------------------------
// S certificates

Json SCertificate::to_json() const
{
    return {{"schema", kSchema},
            {"instance", instance},
            {"mu", ofdef::to_json(mu)},
            {"multipliers", {{"k0", k0}, {"ell", ell}, {"k_prime", k_prime}}},
            {"points", {{"P0", ofdef::to_json(P0)}, {"P", ofdef::to_json(P)}, {"P_prime", ofdef::to_json(P_prime)}}},
            {"t0", ofdef::to_json(t0)},
            {"t", ofdef::to_json(t)},
            {"t_prime", ofdef::to_json(t_prime)},
            {"witnesses",
             {{"condition3", condition3.to_json()},
              {"condition4", condition4.to_json()},
              {"condition5", condition5.to_json()}}},
            {"den_t_root", ofdef::to_json(root)},
            {"constants", {{"c", ofdef::to_string(c)}, {"c_prime", ofdef::to_string(c_prime)}}}};
}

SCertificate SCertificate::from_json(const RankOneInstance& inst, const Json& j)
{
    const std::string p = "certificate";
    const Json& schema = field_at(j, "schema", p);
    if (!schema.is_string() || schema.get<std::string>() != kSchema)
        throw Error(ErrorKind::Parse, p + ".schema: expected \"" + std::string(kSchema) + "\"");
    const FieldPtr& K = inst.top();
    SCertificate c;
    const Json& name = field_at(j, "instance", p);
    if (!name.is_string())
        throw Error(ErrorKind::Parse, p + ".instance: expected a string");
    c.instance = name.get<std::string>();
    c.mu = element_from_json(K, field_at(j, "mu", p), p + ".mu");
    const Json& mult = field_at(j, "multipliers", p);
    c.k0 = small_integer_from_json(field_at(mult, "k0", p + ".multipliers"), p + ".multipliers.k0");
    c.ell = small_integer_from_json(field_at(mult, "ell", p + ".multipliers"), p + ".multipliers.ell");
    c.k_prime = small_integer_from_json(field_at(mult, "k_prime", p + ".multipliers"), p + ".multipliers.k_prime");
    const Json& pts = field_at(j, "points", p);
    c.P0 = point_from_json(K, field_at(pts, "P0", p + ".points"), p + ".points.P0");
    c.P = point_from_json(K, field_at(pts, "P", p + ".points"), p + ".points.P");
    c.P_prime = point_from_json(K, field_at(pts, "P_prime", p + ".points"), p + ".points.P_prime");
    c.t0 = element_from_json(K, field_at(j, "t0", p), p + ".t0");
    c.t = element_from_json(K, field_at(j, "t", p), p + ".t");
    c.t_prime = element_from_json(K, field_at(j, "t_prime", p), p + ".t_prime");
    const Json& ws = field_at(j, "witnesses", p);
    c.condition3 = PredicateWitness::from_json(K, field_at(ws, "condition3", p + ".witnesses"), p + ".witnesses.condition3");
    c.condition4 = PredicateWitness::from_json(K, field_at(ws, "condition4", p + ".witnesses"), p + ".witnesses.condition4");
    c.condition5 = PredicateWitness::from_json(K, field_at(ws, "condition5", p + ".witnesses"), p + ".witnesses.condition5");
    c.root = ideal_from_json(K, field_at(j, "den_t_root", p), p + ".den_t_root");
    const Json& consts = field_at(j, "constants", p);
    c.c = rational_from_json(field_at(consts, "c", p + ".constants"), p + ".constants.c");
    c.c_prime = rational_from_json(field_at(consts, "c_prime", p + ".constants"), p + ".constants.c_prime");
    return c;
}

SCertificate build_S_certificate(const RankOneInstance& inst, long m, long k_bound)
{
    if (m < 1)
        throw Error(ErrorKind::InvalidArgument, "m must be a positive integer");
    const FieldPtr& K = inst.top();
    const LemmaReport divisibility = check_multiple_divisibility(inst, inst.bounds.k_max);
    if (divisibility.verdict() != Verdict::Pass)
        throw Error(ErrorKind::Validation, "multiple-divisibility table fails on this instance; refusing to certify");

    SCertificate c;
    c.instance = inst.name;
    c.mu = FieldElement::from_rational(K, m * m);
    c.ell = inst.ell;
    c.c = inst.c;
    c.c_prime = inst.c_prime;

    MultipleTable table(inst);
    const FieldElement prod = hypothesis_product(c.mu, false);
    const auto found = find_point_with_denominator(table, FractionalIdeal::principal(prod), k_bound);
    c.k0 = found.k;
    c.k_prime = m * c.ell * c.k0;
    c.P0 = found.point;
    c.P = table[c.ell * c.k0];
    c.P_prime = table[c.k_prime];
    c.t0 = c.P0.x();
    c.t = c.P.x();
    c.t_prime = c.P_prime.x();

    c.root = denominator_root(c.P);
    const EllInequality ineq = ell_inequality(inst, c.t0, c.root, c.c, c.c_prime);
    if (!ineq.holds)
        throw Error(ErrorKind::EllTooSmall, "ell = " + std::to_string(c.ell) + " fails " +
                                                ineq.to_json(c.c, c.c_prime).dump() + "; raise ell");

    c.condition3 = predicate_witness(PredicateKind::EltDivDen, prod, c.t0);
    c.condition4 = predicate_witness(PredicateKind::DenDivDen, c.t, c.t_prime);
    c.condition5 = predicate_witness(PredicateKind::DenDivNum, c.t, condition5_argument(c.t, c.t_prime, c.mu));
    return c;
}

CheckReport verify_S_certificate(const SCertificate& cert, const RankOneInstance& inst)
{
    CheckReport rep;
    const FieldPtr& K = inst.top();
    const auto affine = [](const CurvePoint& P) {
        if (P.is_infinity())
            throw Error(ErrorKind::InvalidArgument, "point at infinity");
        return P;
    };

    record(rep, "instance", [&](Json& d) {
        d["certificate"] = cert.instance;
        d["config"] = inst.name;
        return cert.instance == inst.name;
    });
    record(rep, "constants", [&](Json& d) {
        d["c"] = to_string(cert.c);
        d["c_prime"] = to_string(cert.c_prime);
        return cert.c == inst.c && cert.c_prime == inst.c_prime;
    });
    record(rep, "mu-integral", [&](Json&) { return same_field(cert.mu.field(), K) && cert.mu.is_integral(); });
    record(rep, "multipliers", [&](Json& d) {
        d = {{"k0", cert.k0}, {"ell", cert.ell}, {"k_prime", cert.k_prime}};
        return cert.k0 >= 1 && cert.ell == inst.ell && cert.k_prime != 0;
    });
    record(rep, "P0-in-rE(K)", [&](Json&) {
        return on_curve(inst.curve, cert.P0) && !cert.P0.is_infinity() &&
               scalar_mul(inst.curve, cert.k0 * inst.r, inst.generator) == cert.P0;
    });
    record(rep, "condition-1", [&](Json&) {
        return !cert.P.is_infinity() && scalar_mul(inst.curve, cert.ell, cert.P0) == cert.P;
    });
    record(rep, "P-prime-in-rE(K)", [&](Json&) {
        return on_curve(inst.curve, cert.P_prime) && !cert.P_prime.is_infinity() &&
               scalar_mul(inst.curve, cert.k_prime * inst.r, inst.generator) == cert.P_prime;
    });
    record(rep, "condition-2", [&](Json&) {
        return affine(cert.P0).x() == cert.t0 && affine(cert.P).x() == cert.t && affine(cert.P_prime).x() == cert.t_prime;
    });
    record(rep, "condition-3", [&](Json& d) {
        const FieldElement prod = hypothesis_product(cert.mu, false);
        const auto& w = cert.condition3;
        const bool statement = w.kind == PredicateKind::EltDivDen && w.t == prod && w.u == cert.t0;
        const bool direct = divides(FractionalIdeal::principal(prod), den_ideal(cert.t0));
        d = {{"statement_matches", statement}, {"witness_replays", w.replays()}, {"direct", direct}};
        return statement && w.replays() && direct;
    });
    record(rep, "condition-4", [&](Json& d) {
        const auto& w = cert.condition4;
        const bool statement = w.kind == PredicateKind::DenDivDen && w.t == cert.t && w.u == cert.t_prime;
        const bool direct = divides(den_ideal(cert.t), den_ideal(cert.t_prime));
        d = {{"statement_matches", statement}, {"witness_replays", w.replays()}, {"direct", direct}};
        return statement && w.replays() && direct;
    });
    record(rep, "condition-5", [&](Json& d) {
        const auto& w = cert.condition5;
        const FieldElement u = condition5_argument(cert.t, cert.t_prime, cert.mu);
        const bool statement = w.kind == PredicateKind::DenDivNum && w.t == cert.t && w.u == u;
        const bool direct = divides(den_ideal(cert.t), num_ideal(u));
        d = {{"statement_matches", statement}, {"witness_replays", w.replays()}, {"direct", direct}};
        return statement && w.replays() && direct;
    });
    record(rep, "den-t-root", [&](Json&) {
        return same_field(cert.root.field(), K) && cert.root.is_integral() &&
               cert.root * cert.root == den_ideal(cert.t);
    });
    record(rep, "ell-inequality", [&](Json& d) {
        const EllInequality e = ell_inequality(inst, cert.t0, cert.root, cert.c, cert.c_prime);
        d = e.to_json(cert.c, cert.c_prime);
        return e.holds;
    });
    return rep;
}

CheckReport soundness_descent(const SCertificate& cert, const RankOneInstance& inst)
{
    CheckReport rep;
    const RelativeExtension& ext = *inst.ext;
    const CheckReport verified = verify_S_certificate(cert, inst);
    record(rep, "certificate-accepted", [&](Json& d) {
        if (auto f = verified.first_failure())
            d["first_failure"] = *f;
        return verified.passed();
    });
    if (!verified.passed())
        return rep;

    const FieldPtr& K = inst.top();
    const long step = cert.ell * cert.k0;
    long m = 0;
    record(rep, "recover-m", [&](Json& d) {
        // P' = k' r P1 and P = ell k0 r P1; den(t) | den(t') makes P' a multiple of P.
        d = {{"k_prime", cert.k_prime}, {"ell_k0", step}};
        if (cert.k_prime % step != 0)
            return false;
        m = cert.k_prime / step;
        d["m"] = m;
        return m != 0;
    });
    if (m == 0)
        return rep;
    const FieldElement m2 = FieldElement::from_rational(K, m * m);
    record(rep, "quotient-congruence", [&](Json&) {
        return divides(den_ideal(cert.t), num_ideal(condition5_argument(cert.t, cert.t_prime, m2)));
    });
    record(rep, "sqrt-well-defined", [&](Json& d) {
        d["norm_den_t"] = to_string(den_ideal(cert.t).norm());
        d["norm_root"] = to_string(cert.root.norm());
        return cert.root.is_integral() && cert.root * cert.root == den_ideal(cert.t);
    });
    record(rep, "root-divides-difference", [&](Json& d) {
        const FieldElement diff = cert.mu - m2;
        d["difference_zero"] = diff.is_zero();
        return divides(cert.root, FractionalIdeal::principal(diff));
    });

    const auto a = ext.relative_coordinates(cert.mu);
    std::vector<Rat> norms;
    for (const auto& ai : a)
        norms.push_back(abs(ext.embed(ext.discriminant() * ai).norm()));
    const Rat norm_den_t0 = den_ideal(cert.t0).norm();
    record(rep, "coordinate-bound", [&](Json& d) {
        const FieldElement with_mu = hypothesis_product(cert.mu, true);
        const bool mu_variant = !with_mu.is_zero() && divides(FractionalIdeal::principal(with_mu), den_ideal(cert.t0));
        Json ns = Json::array();
        bool ok = true;
        for (const auto& v : norms) {
            ns.push_back(to_string(v));
            ok = ok && rat_pow(v, cert.c.get_den().get_ui()) <= rat_pow(norm_den_t0, cert.c.get_num().get_ui());
        }
        d = {{"coordinate_norms", ns},
             {"norm_den_t0", to_string(norm_den_t0)},
             {"c", to_string(cert.c)},
             {"hypothesis_used", "(mu+1)...(mu+n) | den(t0)"},
             {"mu_factor_variant_also_holds", mu_variant}};
        return ok;
    });
    const FractionalIdeal I = restrict(cert.root, ext);
    const FractionalIdeal IO = extend(I, ext);
    record(rep, "restrict-extend-round-trip", [&](Json& d) {
        d["restricted"] = to_json(I);
        return IO == cert.root;
    });
    record(rep, "ell-inequality", [&](Json& d) {
        const EllInequality e = ell_inequality(inst, cert.t0, cert.root, cert.c, cert.c_prime);
        d = e.to_json(cert.c, cert.c_prime);
        return e.holds;
    });
    record(rep, "congruence-hypothesis", [&](Json& d) {
        // N(D a_i) < c' N(I O_K) for all i, and mu = m^2 mod I O_K.
        bool bound = true;
        for (const auto& v : norms)
            bound = bound && v < cert.c_prime * IO.norm();
        const bool congruent = IO.contains(cert.mu - m2);
        d = {{"bound", bound}, {"congruent", congruent}, {"norm_IOK", to_string(IO.norm())}};
        return bound && congruent;
    });
    const bool chain = rep.passed();
    bool direct = ext.lies_in_base(cert.mu) && ext.preimage(cert.mu)->is_integral();
    for (std::size_t i = 1; i < a.size(); ++i)
        direct = direct && a[i].is_zero();
    record(rep, "direct-check-agrees", [&](Json& d) {
        d = {{"chain_concludes_mu_in_OF", chain}, {"direct_mu_in_OF", direct}};
        return chain && direct;
    });
    return rep;
}

// ---------------------------------------------------------------------------
// Integer traces

namespace {

TraceNode square(const Int& m) { return {TraceNode::Rule::Square, m * m, m, {}}; }

TraceNode difference_of_squares(const Int& z)
{
    const Int m = (z - 1) / 2;
    return {TraceNode::Rule::DifferenceOfSquares, z, 0, {square(m + 1), square(m)}};
}

TraceNode trace_odd(const Int& z)
{
    if (z >= 3)
        return difference_of_squares(z);
    return {TraceNode::Rule::FourMinus, z, 0, {difference_of_squares(4 - z)}};
}

bool node_replays(const TraceNode& n)
{
    using R = TraceNode::Rule;
    switch (n.rule) {
    case R::Square:
        return n.children.empty() && n.root >= 1 && n.value == n.root * n.root;
    case R::DifferenceOfSquares:
        return n.children.size() == 2 && n.children[0].rule == R::Square && n.children[1].rule == R::Square &&
               node_replays(n.children[0]) && node_replays(n.children[1]) &&
               n.value == n.children[0].value - n.children[1].value;
    case R::FourMinus:
        return n.children.size() == 1 && n.children[0].rule == R::DifferenceOfSquares &&
               node_replays(n.children[0]) && n.value == 4 - n.children[0].value;
    case R::PlusOne:
        return n.children.size() == 1 &&
               (n.children[0].rule == R::DifferenceOfSquares || n.children[0].rule == R::FourMinus) &&
               node_replays(n.children[0]) && n.value == n.children[0].value + 1;
    }
    return false;
}

void collect_roots(const TraceNode& n, std::set<Int>& out)
{
    if (n.rule == TraceNode::Rule::Square)
        out.insert(n.root);
    for (const auto& c : n.children)
        collect_roots(c, out);
}

const char* rule_name(TraceNode::Rule r)
{
    switch (r) {
    case TraceNode::Rule::Square: return "square";
    case TraceNode::Rule::DifferenceOfSquares: return "difference-of-squares";
    case TraceNode::Rule::FourMinus: return "four-minus";
    case TraceNode::Rule::PlusOne: return "plus-one";
    }
    return "unknown";
}

Json node_json(const TraceNode& n)
{
    Json j = {{"rule", rule_name(n.rule)}, {"value", to_string(n.value)}};
    if (n.rule == TraceNode::Rule::Square)
        j["root"] = to_string(n.root);
    else {
        Json cs = Json::array();
        for (const auto& c : n.children)
            cs.push_back(node_json(c));
        j["children"] = cs;
    }
    return j;
}

TraceNode node_from_json(const Json& j, const std::string& path)
{
    TraceNode n;
    const Json& rule = field_at(j, "rule", path);
    const std::string r = rule.is_string() ? rule.get<std::string>() : "";
    using R = TraceNode::Rule;
    bool known = false;
    for (auto k : {R::Square, R::DifferenceOfSquares, R::FourMinus, R::PlusOne})
        if (r == rule_name(k)) {
            n.rule = k;
            known = true;
        }
    if (!known)
        throw Error(ErrorKind::Parse, path + ".rule: unknown rule");
    n.value = integer_from_json(field_at(j, "value", path), path + ".value");
    if (n.rule == R::Square) {
        n.root = integer_from_json(field_at(j, "root", path), path + ".root");
    } else {
        const Json& cs = field_at(j, "children", path);
        if (!cs.is_array())
            throw Error(ErrorKind::Parse, path + ".children: expected an array");
        for (std::size_t i = 0; i < cs.size(); ++i)
            n.children.push_back(node_from_json(cs[i], path + ".children[" + std::to_string(i) + "]"));
    }
    return n;
}

} // namespace

IntegerTrace trace_integer(const Int& z)
{
    IntegerTrace t;
    t.target = z;
    if (z % 2 != 0)
        t.tree = trace_odd(z);
    else
        t.tree = {TraceNode::Rule::PlusOne, z, 0, {trace_odd(z - 1)}};
    return t;
}

bool IntegerTrace::replays() const { return tree.value == target && node_replays(tree); }

std::vector<Int> IntegerTrace::leaf_roots() const
{
    std::set<Int> roots;
    collect_roots(tree, roots);
    return {roots.begin(), roots.end()};
}

Json IntegerTrace::to_json() const { return {{"target", to_string(target)}, {"tree", node_json(tree)}}; }

IntegerTrace IntegerTrace::from_json(const Json& j, const std::string& path)
{
    IntegerTrace t;
    t.target = integer_from_json(field_at(j, "target", path), path + ".target");
    t.tree = node_from_json(field_at(j, "tree", path), path + ".tree");
    return t;
}

// ---------------------------------------------------------------------------
// O_F certificates

namespace {

std::vector<FieldElement> base_integral_basis(const FieldPtr& F)
{
    std::vector<FieldElement> out;
    for (std::size_t k = 0; k < F->degree(); ++k) {
        std::vector<Rat> e(F->degree());
        e[k] = 1;
        out.push_back(FieldElement::from_integral_coords(F, e));
    }
    return out;
}

} // namespace

Json OFCertificate::to_json() const
{
    Json traces_json = Json::array();
    for (const auto& t : traces)
        traces_json.push_back(t.to_json());
    Json coords_json = Json::array();
    for (const auto& a : coords)
        coords_json.push_back(to_string(a));
    Json leaves_json = Json::object();
    for (const auto& [m, c] : leaves)
        leaves_json[std::to_string(m)] = c.to_json();
    return {{"schema", kSchema},
            {"instance", instance},
            {"w", ofdef::to_json(w)},
            {"basis", elements_json(basis)},
            {"coordinates", coords_json},
            {"traces", traces_json},
            {"leaves", leaves_json}};
}

OFCertificate OFCertificate::from_json(const RankOneInstance& inst, const Json& j)
{
    const std::string p = "certificate";
    const Json& schema = field_at(j, "schema", p);
    if (!schema.is_string() || schema.get<std::string>() != kSchema)
        throw Error(ErrorKind::Parse, p + ".schema: expected \"" + std::string(kSchema) + "\"");
    const FieldPtr& F = inst.base();
    OFCertificate c;
    const Json& name = field_at(j, "instance", p);
    if (!name.is_string())
        throw Error(ErrorKind::Parse, p + ".instance: expected a string");
    c.instance = name.get<std::string>();
    c.w = element_from_json(F, field_at(j, "w", p), p + ".w");
    c.basis = elements_from_json(F, field_at(j, "basis", p), p + ".basis");
    const Json& cs = field_at(j, "coordinates", p);
    const Json& ts = field_at(j, "traces", p);
    if (!cs.is_array() || !ts.is_array())
        throw Error(ErrorKind::Parse, p + ": coordinates and traces must be arrays");
    for (std::size_t i = 0; i < cs.size(); ++i)
        c.coords.push_back(integer_from_json(cs[i], p + ".coordinates[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < ts.size(); ++i)
        c.traces.push_back(IntegerTrace::from_json(ts[i], p + ".traces[" + std::to_string(i) + "]"));
    const Json& ls = field_at(j, "leaves", p);
    if (!ls.is_object())
        throw Error(ErrorKind::Parse, p + ".leaves: expected an object");
    for (const auto& [key, leaf] : ls.items())
        c.leaves.emplace(small_integer_from_json(Json(key), p + ".leaves." + key), SCertificate::from_json(inst, leaf));
    return c;
}

OFCertificate certify_of_element(const RankOneInstance& inst, const FieldElement& w, bool with_point_leaves,
                                 long k_bound)
{
    const FieldPtr& F = inst.base();
    FieldElement base_w = w;
    if (!same_field(w.field(), F)) {
        auto pre = inst.ext->preimage(w);
        if (!pre)
            throw Error(ErrorKind::InvalidArgument, "element does not lie in F");
        base_w = *pre;
    }
    if (!base_w.is_integral())
        throw Error(ErrorKind::InvalidArgument, "element does not lie in O_F");
    OFCertificate c;
    c.instance = inst.name;
    c.w = base_w;
    c.basis = base_integral_basis(F);
    std::set<Int> roots;
    for (const auto& a : base_w.integral_coords()) {
        c.coords.push_back(a.get_num());
        c.traces.push_back(trace_integer(a.get_num()));
        for (const auto& m : c.traces.back().leaf_roots())
            roots.insert(m);
    }
    if (with_point_leaves)
        for (const auto& m : roots) {
            if (!m.fits_slong_p())
                throw Error(ErrorKind::BoundExceeded, "leaf square root too large");
            c.leaves.emplace(m.get_si(), build_S_certificate(inst, m.get_si(), k_bound));
        }
    return c;
}

CheckReport verify_of_certificate(const OFCertificate& cert, const RankOneInstance& inst)
{
    CheckReport rep;
    const FieldPtr& F = inst.base();
    record(rep, "instance", [&](Json&) { return cert.instance == inst.name; });
    record(rep, "w-in-OF", [&](Json&) { return same_field(cert.w.field(), F) && cert.w.is_integral(); });
    record(rep, "decomposition", [&](Json&) {
        const auto basis = base_integral_basis(F);
        if (!(cert.basis.size() == basis.size() && std::equal(basis.begin(), basis.end(), cert.basis.begin())))
            return false;
        if (cert.coords.size() != basis.size())
            return false;
        FieldElement sum = FieldElement::zero(F);
        for (std::size_t i = 0; i < basis.size(); ++i)
            sum += Rat(cert.coords[i]) * basis[i];
        return sum == cert.w;
    });
    std::set<Int> roots;
    for (std::size_t i = 0; i < cert.traces.size(); ++i) {
        const auto& t = cert.traces[i];
        record(rep, "trace-" + std::to_string(i), [&](Json& d) {
            d["target"] = to_string(t.target);
            return i < cert.coords.size() && t.target == cert.coords[i] && t.replays();
        });
        for (const auto& m : t.leaf_roots())
            roots.insert(m);
    }
    record(rep, "trace-count", [&](Json&) { return cert.traces.size() == cert.coords.size(); });
    if (!cert.leaves.empty())
        for (const auto& m : roots) {
            record(rep, "leaf-" + to_string(m), [&](Json& d) {
                if (!m.fits_slong_p())
                    return false;
                auto it = cert.leaves.find(m.get_si());
                if (it == cert.leaves.end()) {
                    d["error"] = "missing leaf certificate";
                    return false;
                }
                const auto& leaf = it->second;
                const bool square = leaf.mu == FieldElement::from_rational(inst.top(), Rat(m * m));
                const CheckReport v = verify_S_certificate(leaf, inst);
                const CheckReport s = soundness_descent(leaf, inst);
                d = {{"mu_is_square", square}, {"verified", v.passed()}, {"descent", s.passed()}};
                if (auto f = v.first_failure())
                    d["first_failure"] = *f;
                return square && v.passed() && s.passed();
            });
        }
    return rep;
}

std::array<Int, 4> four_squares_witness(const Int& a)
{
    if (a < 0)
        throw Error(ErrorKind::NoWitness, "a negative integer is not a sum of four squares");
    const auto isqrt = [](const Int& v) {
        Int r;
        mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
        return r;
    };
    for (Int x = isqrt(a); x >= 0; --x)
        for (Int y = std::min(x, isqrt(a - x * x)); y >= 0; --y)
            for (Int z = std::min(y, isqrt(a - x * x - y * y)); z >= 0; --z) {
                const Int rest = a - x * x - y * y - z * z;
                const Int w = isqrt(rest);
                if (w * w == rest && w <= z)
                    return {x, y, z, w};
            }
    throw Error(ErrorKind::NoWitness, "no four-square representation found");
}

} // namespace ofdef
