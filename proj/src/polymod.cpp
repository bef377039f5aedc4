#include "ofdef/polymod.hpp"
#include "ofdef/error.hpp"

#include <algorithm>
#include <random>

namespace ofdef::fp {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p)
{
    u64 r = 1 % p;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly sub(Poly a, const Poly& b, u64 p)
{
    if (a.size() < b.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

Poly add(Poly a, const Poly& b, u64 p)
{
    if (a.size() < b.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (a[i] + b[i]) % p;
    trim(a);
    return a;
}

Poly make_monic(Poly a, u64 p)
{
    if (a.empty())
        return a;
    const u64 inv = invmod(a.back(), p);
    for (auto& c : a)
        c = mulmod(c, inv, p);
    return a;
}

std::pair<Poly, Poly> divmod(Poly a, const Poly& b, u64 p)
{
    const int db = deg(b);
    if (deg(a) < db)
        return {Poly{}, a};
    Poly q(static_cast<std::size_t>(deg(a) - db + 1));
    const u64 inv = invmod(b.back(), p);
    for (int i = deg(a); i >= db; --i) {
        const u64 c = mulmod(a[static_cast<std::size_t>(i)], inv, p);
        q[static_cast<std::size_t>(i - db)] = c;
        if (c == 0)
            continue;
        for (int j = 0; j <= db; ++j) {
            auto& t = a[static_cast<std::size_t>(i - db + j)];
            t = (t + p - mulmod(c, b[static_cast<std::size_t>(j)], p)) % p;
        }
    }
    trim(a);
    trim(q);
    return {q, a};
}

Poly powmod_poly(Poly base, const Int& e, const Poly& m, u64 p)
{
    Poly r{1 % p};
    base = mod(base, m, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mod(mul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mod(mul(r, base, p), m, p);
    }
    return r;
}

bool less(const Poly& a, const Poly& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

// Split g, a product of distinct monic irreducibles of degree k.
void equal_degree_split(const Poly& g, int k, u64 p, std::mt19937_64& rng, std::vector<Poly>& out)
{
    if (deg(g) == k) {
        out.push_back(g);
        return;
    }
    const Int pk = ofdef::pow(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(k));
    for (;;) {
        Poly a(static_cast<std::size_t>(deg(g)));
        for (auto& c : a)
            c = rng() % p;
        trim(a);
        if (deg(a) < 1)
            continue;
        Poly b;
        if (p == 2) {
            Poly term = a;
            b = a;
            for (int i = 1; i < k; ++i) {
                term = mod(mul(term, term, p), g, p);
                b = add(b, term, p);
            }
        } else {
            b = sub(powmod_poly(a, (pk - 1) / 2, g, p), Poly{1}, p);
        }
        Poly d = gcd(g, b, p);
        if (deg(d) > 0 && deg(d) < deg(g)) {
            equal_degree_split(d, k, p, rng, out);
            equal_degree_split(divmod(g, d, p).first, k, p, rng, out);
            return;
        }
    }
}

} // namespace

Poly reduce(const std::vector<Int>& f, u64 p)
{
    Poly out(f.size());
    const Int P(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < f.size(); ++i) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), f[i].get_mpz_t(), P.get_mpz_t());
        out[i] = r.get_ui();
    }
    trim(out);
    return out;
}

Poly mul(const Poly& a, const Poly& b, u64 p)
{
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(c);
    return c;
}

Poly mod(const Poly& a, const Poly& m, u64 p) { return divmod(a, m, p).second; }

Poly gcd(Poly a, Poly b, u64 p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

std::vector<Factor> factor(const Poly& f_in, u64 p)
{
    Poly f = make_monic(f_in, p);
    if (deg(f) < 1)
        throw Error(ErrorKind::InvalidArgument, "cannot factor a constant polynomial");
    std::mt19937_64 rng(0x5eed + p);
    std::vector<Poly> irreducibles;
    const Poly x{0, 1};
    Poly frob = x; // x^{p^k} mod f
    for (int k = 1; k <= deg(f); ++k) {
        frob = powmod_poly(frob, Int(static_cast<unsigned long>(p)), f, p);
        Poly g = gcd(f, sub(frob, x, p), p);
        for (const auto& q : irreducibles)
            if (k % deg(q) == 0) {
                auto [quot, rem] = divmod(g, q, p);
                if (rem.empty())
                    g = quot;
            }
        if (deg(g) > 0)
            equal_degree_split(g, k, p, rng, irreducibles);
    }
    std::vector<Factor> out;
    for (const auto& q : irreducibles) {
        Factor fac{q, 0};
        Poly rest = f;
        for (;;) {
            auto [quot, rem] = divmod(rest, q, p);
            if (!rem.empty())
                break;
            rest = quot;
            ++fac.multiplicity;
        }
        out.push_back(fac);
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return less(a.poly, b.poly); });
    return out;
}

} // namespace ofdef::fp
