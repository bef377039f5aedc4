#include "ofdef/arith.hpp"
#include "ofdef/error.hpp"

#include <cctype>

namespace ofdef {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::FieldMismatch: return "field-mismatch";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::UnsupportedPrime: return "unsupported-prime";
    case ErrorKind::FactorBoundExceeded: return "factor-bound-exceeded";
    case ErrorKind::NotASquare: return "not-a-square";
    case ErrorKind::BoundExceeded: return "bound-exceeded";
    case ErrorKind::NoWitness: return "no-witness";
    case ErrorKind::EllTooSmall: return "ell-too-small";
    case ErrorKind::DescentFailed: return "descent-step-failed";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Validation: return "validation-failure";
    }
    return "unknown";
}

namespace {

bool valid_integer_text(const std::string& s)
{
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+'))
        ++i;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

Rat parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' || den[0] == '+')
        throw Error(ErrorKind::Parse, "not an exact rational: \"" + text + "\"");
    Int n(num[0] == '+' ? num.substr(1) : num, 10);
    Int d(den, 10);
    if (d == 0)
        throw Error(ErrorKind::Parse, "zero denominator in \"" + text + "\"");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

Rat ratio(const Int& n, const Int& d)
{
    if (d == 0)
        throw Error(ErrorKind::DivisionByZero, "zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Int& value) { return value.get_str(10); }

std::string to_string(const Rat& value)
{
    if (value.get_den() == 1)
        return value.get_num().get_str(10);
    return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int pow(const Int& base, unsigned long exponent)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

bool is_probable_prime(const Int& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::pair<std::vector<std::pair<Int, unsigned>>, Int>
trial_factor(const Int& n, unsigned long bound)
{
    std::vector<std::pair<Int, unsigned>> out;
    Int m = abs(n);
    if (m == 0)
        throw Error(ErrorKind::InvalidArgument, "cannot factor zero");
    auto strip = [&](unsigned long p) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            ++e;
        }
        if (e)
            out.emplace_back(Int(p), e);
    };
    strip(2);
    bool exhausted = false;
    for (unsigned long p = 3; m > 1; p += 2) {
        if (Int(p) * p > m) {
            exhausted = true;
            break;
        }
        if (p > bound)
            break;
        strip(p);
    }
    // Once p^2 exceeds the cofactor, the cofactor is prime.
    if (m > 1 && exhausted) {
        out.emplace_back(m, 1);
        m = 1;
    }
    return {out, m};
}

} // namespace ofdef
