#pragma once

#include "ofdef/arith.hpp"
#include "ofdef/matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ofdef {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// A number field Q[x]/(f) with f monic integral, together with a Z-basis of
/// its ring of integers expressed in the power basis 1, x, ..., x^{n-1}.
///
/// The integral basis is trusted input: construction checks that it spans a
/// ring containing 1 but does not prove maximality.
class NumberField {
public:
    /// `polynomial` lists coefficients constant term first and must be monic.
    /// Each `integral_basis` entry is a power-basis coordinate vector.
    static FieldPtr create(std::string tag, std::vector<Int> polynomial,
                           std::vector<std::vector<Rat>> integral_basis);

    /// Convenience: the power basis is taken as the integral basis.
    static FieldPtr create_monogenic(std::string tag, std::vector<Int> polynomial);

    /// Q itself, presented as Q[x]/(x).
    static FieldPtr rationals();

    const std::string& tag() const { return tag_; }
    std::size_t degree() const { return degree_; }
    const std::vector<Int>& polynomial() const { return poly_; }
    const std::vector<std::vector<Rat>>& integral_basis() const { return basis_; }

    /// Columns are the integral-basis elements in power-basis coordinates.
    const RatMatrix& basis_matrix() const { return basis_matrix_; }
    const RatMatrix& basis_inverse() const { return basis_inverse_; }

    /// det of the trace form on the integral basis.
    const Int& discriminant() const { return discriminant_; }

    /// [O_K : Z[x]].
    const Int& power_order_index() const { return power_index_; }

    /// Power-basis coordinates of x^k for every k < 2n - 1.
    const std::vector<std::vector<Rat>>& power_table() const { return power_table_; }

    bool same_as(const NumberField& other) const;

private:
    NumberField() = default;

    std::string tag_;
    std::size_t degree_ = 0;
    std::vector<Int> poly_;
    std::vector<std::vector<Rat>> basis_;
    RatMatrix basis_matrix_;
    RatMatrix basis_inverse_;
    Int discriminant_;
    Int power_index_;
    std::vector<std::vector<Rat>> power_table_;
};

/// An element of a number field stored in power-basis coordinates.
class FieldElement {
public:
    FieldElement(FieldPtr field, std::vector<Rat> coords);

    static FieldElement zero(const FieldPtr& field);
    static FieldElement from_rational(const FieldPtr& field, const Rat& value);
    static FieldElement generator(const FieldPtr& field);
    /// Element with the given coordinates in the integral basis.
    static FieldElement from_integral_coords(const FieldPtr& field, const std::vector<Rat>& coords);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool is_zero() const;
    /// Nonempty iff the element is rational.
    std::optional<Rat> as_rational() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);

    FieldElement inverse() const;
    FieldElement pow(long exponent) const;

    /// Coordinates with respect to the integral basis.
    std::vector<Rat> integral_coords() const;
    bool is_integral() const;

    /// Matrix of multiplication by this element on the power basis.
    RatMatrix multiplication_matrix() const;
    Rat norm() const;
    Rat trace() const;

    bool operator==(const FieldElement& o) const;

private:
    void require_same_field(const FieldElement& o) const;

    FieldPtr field_;
    std::vector<Rat> coords_;
};

FieldElement operator+(FieldElement a, const FieldElement& b);
FieldElement operator-(FieldElement a, const FieldElement& b);
FieldElement operator*(FieldElement a, const FieldElement& b);
FieldElement operator/(FieldElement a, const FieldElement& b);
FieldElement operator*(const Rat& q, const FieldElement& a);

bool same_field(const FieldPtr& a, const FieldPtr& b);

std::string to_string(const FieldElement& a);

/// K as an extension of a subfield F, with a relative power basis
/// 1, alpha, ..., alpha^{s-1} of K over F.
class RelativeExtension {
public:
    /// `embedding_image` is the image in K of the generator of F.
    static std::shared_ptr<const RelativeExtension>
    create(FieldPtr base, FieldPtr top, FieldElement embedding_image, FieldElement alpha);

    const FieldPtr& base() const { return base_; }
    const FieldPtr& top() const { return top_; }
    const FieldElement& embedding_image() const { return embedding_image_; }
    const FieldElement& alpha() const { return alpha_; }
    std::size_t relative_degree() const { return s_; }

    /// Discriminant of the relative basis, as an element of F.
    const FieldElement& discriminant() const { return disc_; }
    /// The same discriminant embedded into K.
    FieldElement discriminant_in_top() const { return embed(disc_); }

    FieldElement embed(const FieldElement& f) const;

    /// (a_0, ..., a_{s-1}) in F with mu = sum a_i alpha^i.
    std::vector<FieldElement> relative_coordinates(const FieldElement& mu) const;

    /// Preimage in F when mu lies in the embedded copy of F.
    std::optional<FieldElement> preimage(const FieldElement& mu) const;
    bool lies_in_base(const FieldElement& mu) const { return preimage(mu).has_value(); }

    FieldElement relative_trace(const FieldElement& mu) const;

private:
    RelativeExtension() = default;

    FieldPtr base_;
    FieldPtr top_;
    FieldElement embedding_image_{nullptr, {}};
    FieldElement alpha_{nullptr, {}};
    std::size_t s_ = 0;
    RatMatrix relative_inverse_;
    FieldElement disc_{nullptr, {}};
};

using ExtensionPtr = std::shared_ptr<const RelativeExtension>;

/// Determinant of a square matrix of field elements (Gaussian elimination).
FieldElement determinant(std::vector<std::vector<FieldElement>> m);

} // namespace ofdef
