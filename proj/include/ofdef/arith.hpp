#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace ofdef {

using Int = mpz_class;
using Rat = mpq_class;

/// n/d in lowest terms with positive denominator.
Rat ratio(const Int& n, const Int& d);

/// Parses "p/q" or "p" (optional sign, decimal digits only). Rejects anything
/// that looks like a floating-point literal.
Rat parse_rational(const std::string& text);

/// Canonical decimal form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rat& value);
std::string to_string(const Int& value);

Int lcm(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);

/// Floor division with a positive divisor.
Int floor_div(const Int& a, const Int& b);

/// Trial division of |n| by primes up to `bound`. Returns (prime, exponent)
/// pairs and the unfactored cofactor (1 when fully factored).
std::pair<std::vector<std::pair<Int, unsigned>>, Int>
trial_factor(const Int& n, unsigned long bound);

bool is_probable_prime(const Int& n);

Int pow(const Int& base, unsigned long exponent);

} // namespace ofdef
