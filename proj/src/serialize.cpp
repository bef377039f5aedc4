#include "ofdef/serialize.hpp"
#include "ofdef/error.hpp"

namespace ofdef {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what)
{
    throw Error(ErrorKind::Parse, path + ": " + what);
}

} // namespace

Json to_json(const Int& v) { return to_string(v); }
Json to_json(const Rat& v) { return to_string(v); }

Json to_json(const FieldElement& a)
{
    Json out = Json::array();
    for (const auto& c : a.coords())
        out.push_back(to_string(c));
    return out;
}

Json to_json(const FractionalIdeal& I)
{
    Json out;
    out["field"] = I.field()->tag();
    if (I.is_zero()) {
        out["zero"] = true;
        return out;
    }
    out["denominator"] = to_string(I.denominator());
    Json cols = Json::array();
    for (std::size_t j = 0; j < I.hnf().cols(); ++j) {
        Json col = Json::array();
        for (const auto& v : I.hnf().column(j))
            col.push_back(to_string(v));
        cols.push_back(col);
    }
    out["hnf"] = cols;
    return out;
}

Json to_json(const PrimeIdeal& p)
{
    return {{"p", to_string(p.p)},
            {"f", p.residue_degree},
            {"e", p.ramification},
            {"generators", Json::array({to_string(p.p), to_json(p.generator)})}};
}

Json to_json(const PrimeFactorization& f)
{
    Json out = Json::array();
    for (const auto& [p, e] : f.factors) {
        Json entry = to_json(p);
        entry["exponent"] = e;
        out.push_back(entry);
    }
    return out;
}

Json to_json(const CurvePoint& P)
{
    if (P.is_infinity())
        return "infinity";
    return {{"x", to_json(P.x())}, {"y", to_json(P.y())}};
}

Json to_json(const ValidationReport& rep)
{
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"check", c.name}, {"verdict", c.passed ? "pass" : "fail"}, {"witness", c.witness}});
    return {{"instance", rep.instance}, {"checks", checks}, {"verdict", rep.passed() ? "pass" : "fail"}};
}

const Json& field_at(const Json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object())
        parse_fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        parse_fail(path + "." + key, "missing");
    return *it;
}

Rat rational_from_json(const Json& j, const std::string& path)
{
    if (j.is_number_float())
        parse_fail(path, "floating-point literal; write exact rationals as strings \"p/q\"");
    if (j.is_number_integer())
        return Rat(Int(j.dump(), 10));
    if (!j.is_string())
        parse_fail(path, "expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        parse_fail(path, e.what());
    }
}

Int integer_from_json(const Json& j, const std::string& path)
{
    const Rat r = rational_from_json(j, path);
    if (r.get_den() != 1)
        parse_fail(path, "expected an integer");
    return r.get_num();
}

long small_integer_from_json(const Json& j, const std::string& path)
{
    const Int v = integer_from_json(j, path);
    if (!v.fits_slong_p())
        parse_fail(path, "integer out of range");
    return v.get_si();
}

FieldElement element_from_json(const FieldPtr& K, const Json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != K->degree())
        parse_fail(path, "expected " + std::to_string(K->degree()) + " coordinates");
    std::vector<Rat> c;
    for (std::size_t i = 0; i < j.size(); ++i)
        c.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return FieldElement(K, std::move(c));
}

FractionalIdeal ideal_from_json(const FieldPtr& K, const Json& j, const std::string& path)
{
    const Json& tag = field_at(j, "field", path);
    if (!tag.is_string() || tag.get<std::string>() != K->tag())
        parse_fail(path + ".field", "ideal belongs to another field");
    if (j.contains("zero") && j["zero"] == true)
        return FractionalIdeal::zero(K);
    const Int d = integer_from_json(field_at(j, "denominator", path), path + ".denominator");
    const Json& cols = field_at(j, "hnf", path);
    const std::size_t n = K->degree();
    if (!cols.is_array() || cols.size() != n)
        parse_fail(path + ".hnf", "expected " + std::to_string(n) + " columns");
    IntMatrix H(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::string cp = path + ".hnf[" + std::to_string(c) + "]";
        if (!cols[c].is_array() || cols[c].size() != n)
            parse_fail(cp, "expected " + std::to_string(n) + " entries");
        for (std::size_t r = 0; r < n; ++r)
            H(r, c) = integer_from_json(cols[c][r], cp + "[" + std::to_string(r) + "]");
    }
    if (d <= 0)
        parse_fail(path + ".denominator", "must be positive");
    try {
        return FractionalIdeal::from_lattice(K, d, H);
    } catch (const Error& e) {
        parse_fail(path, e.what());
    }
}

CurvePoint point_from_json(const FieldPtr& K, const Json& j, const std::string& path)
{
    if (j.is_string() && j.get<std::string>() == "infinity")
        return CurvePoint::infinity();
    return CurvePoint::affine(element_from_json(K, field_at(j, "x", path), path + ".x"),
                              element_from_json(K, field_at(j, "y", path), path + ".y"));
}

} // namespace ofdef
