#pragma once

#include "ofdef/arith.hpp"

#include <cstdint>
#include <vector>

namespace ofdef::fp {

/// Polynomial over F_p, constant term first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

struct Factor {
    Poly poly; ///< monic irreducible
    unsigned multiplicity = 0;
};

Poly reduce(const std::vector<Int>& f, std::uint64_t p);

/// Complete factorization of a monic polynomial into monic irreducibles,
/// ordered by (degree, coefficients). Deterministic.
std::vector<Factor> factor(const Poly& f, std::uint64_t p);

Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly mod(const Poly& a, const Poly& m, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);

} // namespace ofdef::fp
