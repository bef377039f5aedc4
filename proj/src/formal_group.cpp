#include "ofdef/formal_group.hpp"
#include "ofdef/error.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace ofdef {

namespace {

unsigned degree_of(const PowerSeries::Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

} // namespace

PowerSeries::PowerSeries(FieldPtr field, unsigned nvars, unsigned precision)
    : field_(std::move(field)), nvars_(nvars), precision_(precision)
{
}

PowerSeries PowerSeries::constant(const FieldElement& c, unsigned nvars, unsigned precision)
{
    PowerSeries s(c.field(), nvars, precision);
    s.set(Exponents(nvars, 0), c);
    return s;
}

PowerSeries PowerSeries::variable(const FieldPtr& field, unsigned index, unsigned nvars, unsigned precision)
{
    PowerSeries s(field, nvars, precision);
    Exponents e(nvars, 0);
    e.at(index) = 1;
    s.set(e, FieldElement::from_rational(field, 1));
    return s;
}

FieldElement PowerSeries::coefficient(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldElement::zero(field_) : it->second;
}

void PowerSeries::set(const Exponents& e, const FieldElement& c)
{
    if (e.size() != nvars_)
        throw Error(ErrorKind::InvalidArgument, "exponent vector has the wrong length");
    if (degree_of(e) >= precision_ || c.is_zero())
        terms_.erase(e);
    else
        terms_.insert_or_assign(e, c);
}

unsigned PowerSeries::order() const
{
    unsigned best = precision_;
    for (const auto& [e, c] : terms_)
        best = std::min(best, degree_of(e));
    return best;
}

bool PowerSeries::is_integral() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_integral(); });
}

void PowerSeries::require_compatible(const PowerSeries& o) const
{
    if (nvars_ != o.nvars_)
        throw Error(ErrorKind::InvalidArgument, "series in different numbers of variables");
    if (!same_field(field_, o.field_))
        throw Error(ErrorKind::FieldMismatch, "series over different fields");
}

PowerSeries PowerSeries::operator-() const
{
    PowerSeries r(field_, nvars_, precision_);
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(e, -c);
    return r;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o)
{
    require_compatible(o);
    precision_ = std::min(precision_, o.precision_);
    std::erase_if(terms_, [&](const auto& t) { return degree_of(t.first) >= precision_; });
    for (const auto& [e, c] : o.terms_)
        set(e, coefficient(e) + c);
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o)
{
    return *this += -o;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const
{
    require_compatible(o);
    PowerSeries r(field_, nvars_, std::min(precision_, o.precision_));
    std::map<Exponents, FieldElement> acc;
    for (const auto& [e1, c1] : terms_) {
        const unsigned d1 = degree_of(e1);
        for (const auto& [e2, c2] : o.terms_) {
            if (d1 + degree_of(e2) >= r.precision_)
                continue;
            Exponents e(nvars_);
            for (unsigned i = 0; i < nvars_; ++i)
                e[i] = e1[i] + e2[i];
            auto it = acc.find(e);
            if (it == acc.end())
                acc.emplace(std::move(e), c1 * c2);
            else
                it->second += c1 * c2;
        }
    }
    for (auto& [e, c] : acc)
        r.set(e, c);
    return r;
}

PowerSeries PowerSeries::operator*(const FieldElement& c) const
{
    PowerSeries r(field_, nvars_, precision_);
    for (const auto& [e, v] : terms_)
        r.set(e, v * c);
    return r;
}

PowerSeries PowerSeries::inverse() const
{
    const FieldElement c0 = coefficient(Exponents(nvars_, 0));
    if (c0.is_zero())
        throw Error(ErrorKind::DivisionByZero, "series with zero constant term is not invertible");
    const FieldElement c0_inv = c0.inverse();
    // 1/f = c0^{-1} * sum_k (-h)^k with h = f/c0 - 1 of positive order.
    PowerSeries minus_h = -(*this * c0_inv - constant(FieldElement::from_rational(field_, 1), nvars_, precision_));
    PowerSeries sum = constant(FieldElement::from_rational(field_, 1), nvars_, precision_);
    PowerSeries term = sum;
    for (unsigned k = 1; k < precision_; ++k) {
        term = term * minus_h;
        if (term.terms_.empty())
            break;
        sum += term;
    }
    return sum * c0_inv;
}

PowerSeries PowerSeries::shift_down(unsigned k) const
{
    if (nvars_ != 1)
        throw Error(ErrorKind::InvalidArgument, "shift_down needs a univariate series");
    if (k > precision_)
        throw Error(ErrorKind::InvalidArgument, "shift exceeds precision");
    PowerSeries r(field_, 1, precision_ - k);
    for (const auto& [e, c] : terms_) {
        if (e[0] < k)
            throw Error(ErrorKind::InvalidArgument, "series does not vanish to the requested order");
        r.set({e[0] - k}, c);
    }
    return r;
}

PowerSeries PowerSeries::compose(const std::vector<PowerSeries>& args) const
{
    if (args.size() != nvars_ || args.empty())
        throw Error(ErrorKind::InvalidArgument, "compose needs one argument per variable");
    unsigned prec = precision_;
    for (const auto& g : args) {
        args[0].require_compatible(g);
        if (!g.coefficient(Exponents(g.nvars_, 0)).is_zero())
            throw Error(ErrorKind::InvalidArgument, "composition argument has a constant term");
        prec = std::min(prec, g.precision_);
    }
    const unsigned m = args[0].nvars_;
    const PowerSeries one = constant(FieldElement::from_rational(field_, 1), m, prec);

    // powers[i][k] = g_i^k
    std::vector<std::vector<PowerSeries>> powers(nvars_);
    for (unsigned i = 0; i < nvars_; ++i) {
        powers[i].push_back(one);
        for (unsigned k = 1; k < prec; ++k)
            powers[i].push_back(powers[i].back() * args[i].truncated(prec));
    }

    // Group terms by the first exponent: f = sum_k g_0^k * inner_k.
    std::map<unsigned, PowerSeries> inner;
    for (const auto& [e, c] : terms_) {
        if (degree_of(e) >= prec)
            continue;
        std::optional<PowerSeries> mono;
        for (unsigned i = 1; i < nvars_; ++i)
            if (e[i] > 0)
                mono = mono ? *mono * powers[i][e[i]] : powers[i][e[i]];
        PowerSeries term = mono ? *mono * c : constant(c, m, prec);
        auto it = inner.find(e[0]);
        if (it == inner.end())
            inner.emplace(e[0], std::move(term));
        else
            it->second += term;
    }
    PowerSeries result(field_, m, prec);
    for (const auto& [k, s] : inner)
        result += k == 0 ? s : powers[0][k] * s;
    return result;
}

FieldElement PowerSeries::evaluate(const std::vector<FieldElement>& point) const
{
    if (point.size() != nvars_)
        throw Error(ErrorKind::InvalidArgument, "evaluation point has the wrong dimension");
    std::vector<std::vector<FieldElement>> powers(nvars_);
    FieldElement total = FieldElement::zero(field_);
    for (const auto& [e, c] : terms_) {
        FieldElement term = c;
        for (unsigned i = 0; i < nvars_; ++i) {
            auto& pw = powers[i];
            if (pw.empty())
                pw.push_back(FieldElement::from_rational(field_, 1));
            while (pw.size() <= e[i])
                pw.push_back(pw.back() * point[i]);
            if (e[i] > 0)
                term *= pw[e[i]];
        }
        total += term;
    }
    return total;
}

PowerSeries PowerSeries::truncated(unsigned precision) const
{
    PowerSeries r(field_, nvars_, std::min(precision, precision_));
    for (const auto& [e, c] : terms_)
        r.set(e, c);
    return r;
}

bool PowerSeries::operator==(const PowerSeries& o) const
{
    return nvars_ == o.nvars_ && precision_ == o.precision_ && same_field(field_, o.field_) &&
           terms_ == o.terms_;
}

PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }

FieldElement FormalGroupSeries::evaluate(const std::vector<FieldElement>& args) const
{
    FieldElement v = body.evaluate(args);
    if (leading_exponent != 0)
        v *= args.at(0).pow(leading_exponent);
    return v;
}

PowerSeries formal_w(const WeierstrassCurve& E, unsigned precision)
{
    const FieldPtr& K = E.field();
    const PowerSeries z = PowerSeries::variable(K, 0, 1, precision);
    const PowerSeries z3 = z * z * z;
    // w = z^3 + a z w^2 + b w^3; each pass fixes at least one more degree.
    PowerSeries w(K, 1, precision);
    for (unsigned pass = 0; pass <= precision; ++pass) {
        PowerSeries next = z3 + z * (w * w) * E.a() + w * w * w * E.b();
        if (next == w)
            return w;
        w = std::move(next);
    }
    throw Error(ErrorKind::InvalidArgument, "w(z) iteration did not stabilize");
}

namespace {

PowerSeries group_law(const WeierstrassCurve& E, unsigned N)
{
    const FieldPtr& K = E.field();
    const PowerSeries w = formal_w(E, N + 1);
    const PowerSeries z1 = PowerSeries::variable(K, 0, 2, N);
    const PowerSeries z2 = PowerSeries::variable(K, 1, 2, N);

    // lambda = (w(z2) - w(z1)) / (z2 - z1) = sum_n A_n h_{n-1}(z1, z2)
    PowerSeries lambda(K, 2, N);
    for (const auto& [e, c] : w.terms()) {
        const unsigned n = e[0];
        if (n == 0 || n - 1 >= N)
            continue;
        for (unsigned i = 0; i < n; ++i)
            lambda.set({i, n - 1 - i}, lambda.coefficient({i, n - 1 - i}) + c);
    }
    const PowerSeries nu = w.truncated(N).compose({z1}) - lambda * z1;
    const PowerSeries lambda2 = lambda * lambda;
    const PowerSeries one = PowerSeries::constant(FieldElement::from_rational(K, 1), 2, N);
    const FieldElement two = FieldElement::from_rational(K, 2);
    const FieldElement three = FieldElement::from_rational(K, 3);

    const PowerSeries numer = lambda * nu * (two * E.a()) + lambda2 * nu * (three * E.b());
    const PowerSeries denom = one + lambda2 * E.a() + lambda2 * lambda * E.b();
    return z1 + z2 + numer * denom.inverse();
}

PowerSeries multiplication(const WeierstrassCurve& E, const PowerSeries& F, long m, unsigned N)
{
    const FieldPtr& K = E.field();
    const PowerSeries z = PowerSeries::variable(K, 0, 1, N);
    const long k = m < 0 ? -m : m;
    PowerSeries acc(K, 1, N);
    for (long i = 0; i < k; ++i)
        acc = i == 0 ? z : F.compose({acc, z});
    // [-1](z) = -z on a curve with a1 = a3 = 0.
    return m < 0 ? -acc : acc;
}

} // namespace

FormalGroupSeries formal_series(const WeierstrassCurve& E, SeriesKind kind, unsigned precision, long m)
{
    if (precision < 3)
        throw Error(ErrorKind::InvalidArgument, "series precision must be at least 3");
    switch (kind) {
    case SeriesKind::GroupLaw:
        return {kind, 0, 0, group_law(E, precision)};
    case SeriesKind::Mult:
        return {kind, m, 0, multiplication(E, group_law(E, precision), m, precision)};
    case SeriesKind::LaurentX:
    case SeriesKind::LaurentY: {
        // x = z/w = z^{-2} (w/z^3)^{-1}, y = -1/w = -z^{-3} (w/z^3)^{-1}
        const PowerSeries u = formal_w(E, precision + 3).shift_down(3).inverse();
        if (kind == SeriesKind::LaurentX)
            return {kind, 0, -2, u};
        return {kind, 0, -3, -u};
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown series kind");
}

} // namespace ofdef
