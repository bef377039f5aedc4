#include "ofdef/numfield.hpp"
#include "ofdef/error.hpp"

#include <sstream>

namespace ofdef {

namespace {

// Reduce a coefficient vector of length up to 2n-1 modulo the defining
// polynomial using the precomputed power table.
std::vector<Rat> reduce(const NumberField& K, const std::vector<Rat>& wide)
{
    const std::size_t n = K.degree();
    std::vector<Rat> out(n);
    for (std::size_t k = 0; k < wide.size(); ++k) {
        if (wide[k] == 0)
            continue;
        if (k < n) {
            out[k] += wide[k];
            continue;
        }
        const auto& row = K.power_table()[k];
        for (std::size_t i = 0; i < n; ++i)
            if (row[i] != 0)
                out[i] += wide[k] * row[i];
    }
    return out;
}

std::vector<Rat> multiply_coords(const NumberField& K, const std::vector<Rat>& a, const std::vector<Rat>& b)
{
    const std::size_t n = K.degree();
    std::vector<Rat> wide(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            if (b[j] != 0)
                wide[i + j] += a[i] * b[j];
    }
    return reduce(K, wide);
}

bool has_rational_root(const std::vector<Int>& poly)
{
    // Monic: rational roots are integer divisors of the constant term.
    if (poly[0] == 0)
        return true;
    auto [factors, rest] = trial_factor(poly[0], 100000);
    if (rest != 1)
        return false; // large constant term; trust the curated input
    std::vector<Int> divisors{1};
    for (const auto& [p, e] : factors) {
        const std::size_t count = divisors.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i)
                divisors.push_back(divisors[i] * pk);
        }
    }
    for (const auto& d : divisors)
        for (const Int& root : {Int(d), Int(-d)}) {
            Int acc = 0;
            for (std::size_t k = poly.size(); k-- > 0;)
                acc = acc * root + poly[k];
            if (acc == 0)
                return true;
        }
    return false;
}

} // namespace

FieldPtr NumberField::create(std::string tag, std::vector<Int> polynomial,
                             std::vector<std::vector<Rat>> integral_basis)
{
    if (polynomial.size() < 2 || polynomial.back() != 1)
        throw Error(ErrorKind::InvalidArgument, "defining polynomial of " + tag + " must be monic of degree >= 1");
    const std::size_t n = polynomial.size() - 1;
    if (n > 1 && has_rational_root(polynomial))
        throw Error(ErrorKind::InvalidArgument, "defining polynomial of " + tag + " has a rational root");
    if (integral_basis.size() != n)
        throw Error(ErrorKind::InvalidArgument, "integral basis of " + tag + " must have " + std::to_string(n) + " elements");
    for (const auto& b : integral_basis)
        if (b.size() != n)
            throw Error(ErrorKind::InvalidArgument, "integral basis element of " + tag + " has wrong length");

    std::shared_ptr<NumberField> K(new NumberField());
    K->tag_ = std::move(tag);
    K->degree_ = n;
    K->poly_ = std::move(polynomial);
    K->basis_ = std::move(integral_basis);

    // x^k for k < 2n-1, via x^k = x * x^{k-1} and x^n = -sum f_i x^i.
    K->power_table_.assign(2 * n - 1, std::vector<Rat>(n));
    for (std::size_t k = 0; k < 2 * n - 1; ++k) {
        if (k < n) {
            K->power_table_[k][k] = 1;
            continue;
        }
        const auto& prev = K->power_table_[k - 1];
        std::vector<Rat> cur(n);
        for (std::size_t i = 0; i + 1 < n; ++i)
            cur[i + 1] = prev[i];
        const Rat top = prev[n - 1];
        for (std::size_t i = 0; i < n; ++i)
            cur[i] -= top * Rat(K->poly_[i]);
        K->power_table_[k] = cur;
    }

    K->basis_matrix_ = RatMatrix::from_columns(K->basis_, n);
    auto inv = inverse(K->basis_matrix_);
    if (!inv)
        throw Error(ErrorKind::InvalidArgument, "integral basis of " + K->tag_ + " is singular");
    K->basis_inverse_ = *inv;

    // 1 must be in the lattice, and the lattice must be multiplicatively closed.
    std::vector<Rat> one(n);
    one[0] = 1;
    for (const auto& c : K->basis_inverse_ * one)
        if (c.get_den() != 1)
            throw Error(ErrorKind::InvalidArgument, "integral basis of " + K->tag_ + " does not contain 1");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const auto prod = multiply_coords(*K, K->basis_[i], K->basis_[j]);
            for (const auto& c : K->basis_inverse_ * prod)
                if (c.get_den() != 1)
                    throw Error(ErrorKind::InvalidArgument, "integral basis of " + K->tag_ + " is not closed under multiplication");
        }

    const Rat det = determinant(K->basis_matrix_);
    const Rat idx = 1 / abs(det);
    if (idx.get_den() != 1)
        throw Error(ErrorKind::InvalidArgument, "integral basis of " + K->tag_ + " does not contain Z[x]");
    K->power_index_ = idx.get_num();

    // Trace form on the integral basis.
    RatMatrix tr(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            FieldElement e(K, multiply_coords(*K, K->basis_[i], K->basis_[j]));
            tr(i, j) = e.trace();
        }
    const Rat d = determinant(tr);
    K->discriminant_ = d.get_num();
    return K;
}

FieldPtr NumberField::create_monogenic(std::string tag, std::vector<Int> polynomial)
{
    const std::size_t n = polynomial.size() - 1;
    std::vector<std::vector<Rat>> basis(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        basis[i][i] = 1;
    return create(std::move(tag), std::move(polynomial), std::move(basis));
}

FieldPtr NumberField::rationals()
{
    static const FieldPtr Q = create_monogenic("Q", {Int(0), Int(1)});
    return Q;
}

bool NumberField::same_as(const NumberField& other) const
{
    return this == &other || (poly_ == other.poly_ && basis_ == other.basis_);
}

bool same_field(const FieldPtr& a, const FieldPtr& b)
{
    return a && b && (a == b || a->same_as(*b));
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coords)
    : field_(std::move(field)), coords_(std::move(coords))
{
    if (field_ && coords_.size() != field_->degree())
        throw Error(ErrorKind::InvalidArgument, "coordinate vector length does not match the degree of " + field_->tag());
    for (auto& c : coords_)
        c.canonicalize();
}

FieldElement FieldElement::zero(const FieldPtr& field)
{
    return FieldElement(field, std::vector<Rat>(field->degree()));
}

FieldElement FieldElement::from_rational(const FieldPtr& field, const Rat& value)
{
    std::vector<Rat> c(field->degree());
    c[0] = value;
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::generator(const FieldPtr& field)
{
    if (field->degree() == 1)
        return from_rational(field, -Rat(field->polynomial()[0]));
    std::vector<Rat> c(field->degree());
    c[1] = 1;
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::from_integral_coords(const FieldPtr& field, const std::vector<Rat>& coords)
{
    return FieldElement(field, field->basis_matrix() * coords);
}

bool FieldElement::is_zero() const
{
    for (const auto& c : coords_)
        if (c != 0)
            return false;
    return true;
}

std::optional<Rat> FieldElement::as_rational() const
{
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0)
            return std::nullopt;
    return coords_[0];
}

void FieldElement::require_same_field(const FieldElement& o) const
{
    if (!same_field(field_, o.field_))
        throw Error(ErrorKind::FieldMismatch, "operands belong to different fields");
}

FieldElement FieldElement::operator-() const
{
    FieldElement r = *this;
    for (auto& c : r.coords_)
        c = -c;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o)
{
    require_same_field(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] += o.coords_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o)
{
    require_same_field(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] -= o.coords_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o)
{
    require_same_field(o);
    coords_ = multiply_coords(*field_, coords_, o.coords_);
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o)
{
    require_same_field(o);
    return *this *= o.inverse();
}

RatMatrix FieldElement::multiplication_matrix() const
{
    const std::size_t n = field_->degree();
    RatMatrix m(n, n);
    std::vector<Rat> basis(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(basis.begin(), basis.end(), Rat(0));
        basis[j] = 1;
        const auto col = multiply_coords(*field_, coords_, basis);
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) = col[i];
    }
    return m;
}

FieldElement FieldElement::inverse() const
{
    if (is_zero())
        throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    if (auto q = as_rational())
        return from_rational(field_, 1 / *q);
    std::vector<Rat> one(field_->degree());
    one[0] = 1;
    auto x = solve(multiplication_matrix(), one);
    return FieldElement(field_, std::move(*x));
}

FieldElement FieldElement::pow(long exponent) const
{
    FieldElement base = exponent < 0 ? inverse() : *this;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    FieldElement acc = from_rational(field_, 1);
    while (e) {
        if (e & 1)
            acc *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return acc;
}

std::vector<Rat> FieldElement::integral_coords() const
{
    return field_->basis_inverse() * coords_;
}

bool FieldElement::is_integral() const
{
    for (const auto& c : integral_coords())
        if (c.get_den() != 1)
            return false;
    return true;
}

Rat FieldElement::norm() const
{
    if (auto q = as_rational()) {
        Rat r = 1;
        for (std::size_t i = 0; i < field_->degree(); ++i)
            r *= *q;
        return r;
    }
    return determinant(multiplication_matrix());
}

Rat FieldElement::trace() const
{
    const RatMatrix m = multiplication_matrix();
    Rat t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        t += m(i, i);
    return t;
}

bool FieldElement::operator==(const FieldElement& o) const
{
    return same_field(field_, o.field_) && coords_ == o.coords_;
}

FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

FieldElement operator*(const Rat& q, const FieldElement& a)
{
    std::vector<Rat> c = a.coords();
    for (auto& x : c)
        x *= q;
    return FieldElement(a.field(), std::move(c));
}

std::string to_string(const FieldElement& a)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < a.coords().size(); ++i)
        os << (i ? ", " : "") << to_string(a.coords()[i]);
    os << ']';
    return os.str();
}

FieldElement determinant(std::vector<std::vector<FieldElement>> m)
{
    const std::size_t n = m.size();
    FieldElement det = FieldElement::from_rational(m[0][0].field(), 1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c].is_zero())
            ++piv;
        if (piv == n)
            return FieldElement::zero(det.field());
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        const FieldElement inv = m[c][c].inverse();
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero())
                continue;
            const FieldElement f = m[r][c] * inv;
            for (std::size_t j = c; j < n; ++j)
                m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

std::shared_ptr<const RelativeExtension>
RelativeExtension::create(FieldPtr base, FieldPtr top, FieldElement embedding_image, FieldElement alpha)
{
    if (!same_field(embedding_image.field(), top) || !same_field(alpha.field(), top))
        throw Error(ErrorKind::FieldMismatch, "embedding image and alpha must lie in the top field");
    const std::size_t f = base->degree();
    const std::size_t n = top->degree();
    if (n % f != 0)
        throw Error(ErrorKind::InvalidArgument, "degree of " + base->tag() + " does not divide degree of " + top->tag());
    if (!alpha.is_integral())
        throw Error(ErrorKind::InvalidArgument, "alpha must be integral");

    std::shared_ptr<RelativeExtension> ext(new RelativeExtension());
    ext->base_ = base;
    ext->top_ = top;
    ext->embedding_image_ = std::move(embedding_image);
    ext->alpha_ = std::move(alpha);
    ext->s_ = n / f;

    // The image of F's generator must satisfy F's defining polynomial.
    FieldElement acc = FieldElement::zero(top);
    for (std::size_t k = base->polynomial().size(); k-- > 0;)
        acc = acc * ext->embedding_image_ + FieldElement::from_rational(top, Rat(base->polynomial()[k]));
    if (!acc.is_zero())
        throw Error(ErrorKind::InvalidArgument, "embedding image is not a root of the defining polynomial of " + base->tag());

    // Columns alpha^i * phi^j; column index i*f + j.
    RatMatrix rel(n, n);
    FieldElement alpha_pow = FieldElement::from_rational(top, 1);
    for (std::size_t i = 0; i < ext->s_; ++i) {
        FieldElement phi_pow = FieldElement::from_rational(top, 1);
        for (std::size_t j = 0; j < f; ++j) {
            const FieldElement v = alpha_pow * phi_pow;
            for (std::size_t r = 0; r < n; ++r)
                rel(r, i * f + j) = v.coords()[r];
            phi_pow *= ext->embedding_image_;
        }
        alpha_pow *= ext->alpha_;
    }
    auto inv = inverse(rel);
    if (!inv)
        throw Error(ErrorKind::InvalidArgument, "powers of alpha are not a basis of " + top->tag() + " over " + base->tag());
    ext->relative_inverse_ = *inv;

    std::vector<std::vector<FieldElement>> pairing(ext->s_);
    for (std::size_t i = 0; i < ext->s_; ++i)
        for (std::size_t j = 0; j < ext->s_; ++j)
            pairing[i].push_back(ext->relative_trace(ext->alpha_.pow(static_cast<long>(i + j))));
    ext->disc_ = determinant(pairing);
    if (ext->disc_.is_zero())
        throw Error(ErrorKind::InvalidArgument, "relative discriminant vanishes");
    return ext;
}

FieldElement RelativeExtension::embed(const FieldElement& a) const
{
    if (!same_field(a.field(), base_))
        throw Error(ErrorKind::FieldMismatch, "element is not in the base field");
    FieldElement acc = FieldElement::zero(top_);
    FieldElement phi_pow = FieldElement::from_rational(top_, 1);
    for (std::size_t j = 0; j < base_->degree(); ++j) {
        if (a.coords()[j] != 0)
            acc += a.coords()[j] * phi_pow;
        phi_pow *= embedding_image_;
    }
    return acc;
}

std::vector<FieldElement> RelativeExtension::relative_coordinates(const FieldElement& mu) const
{
    if (!same_field(mu.field(), top_))
        throw Error(ErrorKind::FieldMismatch, "element is not in the top field");
    const std::size_t f = base_->degree();
    const auto c = relative_inverse_ * mu.coords();
    std::vector<FieldElement> out;
    for (std::size_t i = 0; i < s_; ++i)
        out.emplace_back(base_, std::vector<Rat>(c.begin() + static_cast<long>(i * f),
                                                 c.begin() + static_cast<long>((i + 1) * f)));
    return out;
}

std::optional<FieldElement> RelativeExtension::preimage(const FieldElement& mu) const
{
    auto a = relative_coordinates(mu);
    for (std::size_t i = 1; i < a.size(); ++i)
        if (!a[i].is_zero())
            return std::nullopt;
    return a[0];
}

FieldElement RelativeExtension::relative_trace(const FieldElement& mu) const
{
    FieldElement t = FieldElement::zero(base_);
    FieldElement alpha_pow = FieldElement::from_rational(top_, 1);
    for (std::size_t i = 0; i < s_; ++i) {
        t += relative_coordinates(mu * alpha_pow)[i];
        alpha_pow *= alpha_;
    }
    return t;
}

} // namespace ofdef
