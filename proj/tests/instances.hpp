#pragma once

// Shipped instance configs and certificate tampers shared by the suites.

#include "ofdef/certify.hpp"
#include "ofdef/config.hpp"

#include <functional>
#include <string>

namespace ofdef::testing {

inline std::string instance_path(const std::string& file) { return std::string(OFDEF_INSTANCE_DIR) + "/" + file; }

inline const RankOneInstance& golden_config()
{
    static const RankOneInstance inst = load_instance(instance_path("golden_sqrt5.json"));
    return inst;
}

inline const RankOneInstance& bare_generator_config()
{
    static const RankOneInstance inst = load_instance(instance_path("bare_generator_r1.json"));
    return inst;
}

inline const RankOneInstance& gaussian_config()
{
    static const RankOneInstance inst = load_instance(instance_path("gaussian_x3p17.json"));
    return inst;
}

struct Tamper {
    std::string name;
    std::function<void(SCertificate&)> apply;
};

/// Single-field edits, each of which must make verification fail.
inline std::vector<Tamper> certificate_tampers(const RankOneInstance& inst)
{
    const FieldPtr& K = inst.top();
    const auto one = FieldElement::from_rational(K, 1);
    const auto& E = inst.curve;
    return {
        {"mu+1", [=](SCertificate& c) { c.mu += one; }},
        {"mu+1/2", [=](SCertificate& c) { c.mu += Rat(1, 2) * one; }},
        {"k0+1", [](SCertificate& c) { ++c.k0; }},
        {"ell+1", [](SCertificate& c) { ++c.ell; }},
        {"k_prime+1", [](SCertificate& c) { ++c.k_prime; }},
        {"P0-doubled", [=](SCertificate& c) { c.P0 = add(E, c.P0, c.P0); }},
        {"P0-negated", [](SCertificate& c) { c.P0 = negate(c.P0); }},
        {"P-replaced-by-P0", [](SCertificate& c) { c.P = c.P0; }},
        {"P_prime-replaced-by-P", [](SCertificate& c) { c.P_prime = c.P; }},
        {"t0+1", [=](SCertificate& c) { c.t0 += one; }},
        {"t-doubled", [](SCertificate& c) { c.t = Rat(2) * c.t; }},
        {"t_prime-replaced-by-t", [](SCertificate& c) { c.t_prime = c.t; }},
        {"condition3.u+1", [=](SCertificate& c) { c.condition3.u += one; }},
        {"condition3.coeff+1", [=](SCertificate& c) { c.condition3.divisibility->coeffs[0][0] += one; }},
        {"condition4.coeff+1", [=](SCertificate& c) { c.condition4.divisibility->coeffs[0][0] += one; }},
        {"condition4.swapped", [](SCertificate& c) { std::swap(c.condition4.t, c.condition4.u); }},
        {"condition5.v-doubled", [](SCertificate& c) { *c.condition5.v = Rat(2) * *c.condition5.v; }},
        {"condition5.kind", [](SCertificate& c) { c.condition5.kind = PredicateKind::DenDivDen; }},
        {"root-times-2", [=](SCertificate& c) { c.root = c.root * FractionalIdeal::principal(Rat(2) * one); }},
        {"c+1", [](SCertificate& c) { c.c += 1; }},
        {"c_prime-100", [](SCertificate& c) { c.c_prime = 100; }},
        {"instance-renamed", [](SCertificate& c) { c.instance += "-other"; }},
    };
}

} // namespace ofdef::testing
