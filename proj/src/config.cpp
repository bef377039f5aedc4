#include "ofdef/config.hpp"
#include "ofdef/error.hpp"

#include <fstream>
#include <sstream>

namespace ofdef {

namespace {

std::vector<Rat> rationals_at(const Json& j, const std::string& path)
{
    if (!j.is_array())
        throw Error(ErrorKind::Parse, path + ": expected an array");
    std::vector<Rat> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

FieldPtr field_from_json(const Json& j, const std::string& path)
{
    const Json& tag = field_at(j, "tag", path);
    if (!tag.is_string())
        throw Error(ErrorKind::Parse, path + ".tag: expected a string");
    std::vector<Int> poly;
    const Json& pj = field_at(j, "polynomial", path);
    for (const auto& c : rationals_at(pj, path + ".polynomial")) {
        if (c.get_den() != 1)
            throw Error(ErrorKind::Parse, path + ".polynomial: coefficients must be integers");
        poly.push_back(c.get_num());
    }
    if (poly.size() == 2 && poly[0] == 0 && poly[1] == 1)
        return NumberField::rationals();
    const Json& bj = field_at(j, "integral_basis", path);
    if (!bj.is_array())
        throw Error(ErrorKind::Parse, path + ".integral_basis: expected an array");
    std::vector<std::vector<Rat>> basis;
    for (std::size_t i = 0; i < bj.size(); ++i)
        basis.push_back(rationals_at(bj[i], path + ".integral_basis[" + std::to_string(i) + "]"));
    return NumberField::create(tag.get<std::string>(), std::move(poly), std::move(basis));
}

Json field_to_json(const FieldPtr& K)
{
    Json poly = Json::array();
    for (const auto& c : K->polynomial())
        poly.push_back(to_string(c));
    Json basis = Json::array();
    for (const auto& v : K->integral_basis()) {
        Json col = Json::array();
        for (const auto& c : v)
            col.push_back(to_string(c));
        basis.push_back(col);
    }
    return {{"tag", K->tag()}, {"polynomial", poly}, {"integral_basis", basis}};
}

} // namespace

RankOneInstance instance_from_json(const Json& j)
{
    const std::string p = "config";
    if (!j.is_object())
        throw Error(ErrorKind::Parse, p + ": expected an object");
    const Json& schema = field_at(j, "schema", p);
    if (!schema.is_string() || schema.get<std::string>() != kInstanceSchema)
        throw Error(ErrorKind::Parse, p + ".schema: expected \"" + std::string(kInstanceSchema) + "\"");

    RankOneInstance inst;
    const Json& name = field_at(j, "name", p);
    if (!name.is_string())
        throw Error(ErrorKind::Parse, p + ".name: expected a string");
    inst.name = name.get<std::string>();

    const Json& fields = field_at(j, "fields", p);
    const FieldPtr F = field_from_json(field_at(fields, "F", p + ".fields"), p + ".fields.F");
    const FieldPtr K = field_from_json(field_at(fields, "K", p + ".fields"), p + ".fields.K");
    const Json& emb = field_at(j, "embedding", p);
    inst.ext = RelativeExtension::create(F, K, element_from_json(K, field_at(emb, "image", p + ".embedding"), p + ".embedding.image"),
                                         element_from_json(K, field_at(emb, "alpha", p + ".embedding"), p + ".embedding.alpha"));

    const Json& curve = field_at(j, "curve", p);
    inst.curve = WeierstrassCurve(element_from_json(K, field_at(curve, "a", p + ".curve"), p + ".curve.a"),
                                  element_from_json(K, field_at(curve, "b", p + ".curve"), p + ".curve.b"));
    inst.generator = point_from_json(K, field_at(j, "generator", p), p + ".generator");

    const auto positive = [&](const char* key) {
        const long v = small_integer_from_json(field_at(j, key, p), p + "." + key);
        if (v < 1)
            throw Error(ErrorKind::Parse, p + "." + key + ": expected a positive integer");
        return v;
    };
    inst.r = positive("r");
    inst.ell = positive("ell");
    inst.torsion_order = positive("torsion_order");
    inst.index_EK_EF = positive("index_EK_EF");

    const Json& tam = field_at(j, "tamagawa_indices", p);
    if (!tam.is_array())
        throw Error(ErrorKind::Parse, p + ".tamagawa_indices: expected an array");
    for (std::size_t i = 0; i < tam.size(); ++i) {
        const std::string tp = p + ".tamagawa_indices[" + std::to_string(i) + "]";
        const Json& prime = field_at(tam[i], "prime", tp);
        if (!prime.is_string())
            throw Error(ErrorKind::Parse, tp + ".prime: expected a string tag");
        inst.tamagawa_indices.emplace_back(prime.get<std::string>(),
                                           small_integer_from_json(field_at(tam[i], "index", tp), tp + ".index"));
    }

    const Json& consts = field_at(j, "constants", p);
    inst.c = rational_from_json(field_at(consts, "c", p + ".constants"), p + ".constants.c");
    inst.c_prime = rational_from_json(field_at(consts, "c_prime", p + ".constants"), p + ".constants.c_prime");
    if (inst.c <= 0 || inst.c_prime <= 0)
        throw Error(ErrorKind::Parse, p + ".constants: c and c_prime must be positive");

    if (j.contains("bounds")) {
        const Json& b = j["bounds"];
        const auto opt = [&](const char* key, auto& slot) {
            if (b.contains(key)) {
                const long v = small_integer_from_json(b[key], p + ".bounds." + key);
                if (v < 1)
                    throw Error(ErrorKind::Parse, p + ".bounds." + key + ": expected a positive integer");
                slot = static_cast<std::remove_reference_t<decltype(slot)>>(v);
            }
        };
        opt("k_bound", inst.bounds.k_bound);
        opt("m_max", inst.bounds.m_max);
        opt("k_max", inst.bounds.k_max);
        opt("coord_box", inst.bounds.coord_box);
        opt("norm_box", inst.bounds.norm_box);
        opt("trial_bound", inst.bounds.trial_bound);
        opt("precision", inst.bounds.precision);
    }

    const Json& prov = field_at(j, "provenance", p);
    if (!prov.is_object())
        throw Error(ErrorKind::Parse, p + ".provenance: expected an object");
    for (const auto& [key, value] : prov.items()) {
        if (!value.is_string())
            throw Error(ErrorKind::Parse, p + ".provenance." + key + ": expected free text");
        inst.provenance[key] = value.get<std::string>();
    }
    return inst;
}

Json instance_to_json(const RankOneInstance& inst)
{
    Json tam = Json::array();
    for (const auto& [tag, c] : inst.tamagawa_indices)
        tam.push_back({{"prime", tag}, {"index", c}});
    Json prov = Json::object();
    for (const auto& [k, v] : inst.provenance)
        prov[k] = v;
    const auto& b = inst.bounds;
    return {{"schema", kInstanceSchema},
            {"name", inst.name},
            {"fields", {{"F", field_to_json(inst.base())}, {"K", field_to_json(inst.top())}}},
            {"embedding", {{"image", to_json(inst.ext->embedding_image())}, {"alpha", to_json(inst.ext->alpha())}}},
            {"curve", {{"a", to_json(inst.curve.a())}, {"b", to_json(inst.curve.b())}}},
            {"generator", to_json(inst.generator)},
            {"r", inst.r},
            {"ell", inst.ell},
            {"torsion_order", inst.torsion_order},
            {"index_EK_EF", inst.index_EK_EF},
            {"tamagawa_indices", tam},
            {"constants", {{"c", to_string(inst.c)}, {"c_prime", to_string(inst.c_prime)}}},
            {"bounds",
             {{"k_bound", b.k_bound},
              {"m_max", b.m_max},
              {"k_max", b.k_max},
              {"coord_box", b.coord_box},
              {"norm_box", b.norm_box},
              {"trial_bound", b.trial_bound},
              {"precision", b.precision}}},
            {"provenance", prov}};
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Parse, path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

RankOneInstance read_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

RankOneInstance load_instance(const std::string& path)
{
    RankOneInstance inst = read_instance(path);
    const ValidationReport rep = validate_instance(inst);
    if (!rep.passed()) {
        std::string failed;
        for (const auto& c : rep.checks)
            if (!c.passed)
                failed += (failed.empty() ? "" : ", ") + c.name;
        throw Error(ErrorKind::Validation, inst.name + ": validation failed (" + failed + ")");
    }
    return inst;
}

} // namespace ofdef
