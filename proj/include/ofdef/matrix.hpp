#pragma once

#include "ofdef/arith.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ofdef {

/// Dense row-major matrix over Int or Rat. Lattices are stored column-wise:
/// each column is one basis vector.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows)
    {
        Matrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = columns[j][i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, const std::vector<T>& c)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = c[i];
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const Matrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b)
{
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v)
{
    std::vector<T> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            out[i] += a(i, k) * v[k];
    return out;
}

RatMatrix to_rational(const IntMatrix& m);

/// Result of a column-style Hermite reduction: `input * transform == [basis | 0]`.
struct HermiteResult {
    IntMatrix basis;      ///< rows x rank, lower echelon, positive pivots, reduced.
    IntMatrix transform;  ///< cols x cols, unimodular.
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_rows;
};

HermiteResult hermite_with_transform(const IntMatrix& input);

/// Canonical column HNF of the lattice spanned by the columns of `gens`.
/// For a full-rank lattice in Z^n the result is n x n lower triangular with
/// positive diagonal and 0 <= H(i,j) < H(i,i) for j < i.
IntMatrix hermite_basis(const IntMatrix& gens);

/// Z-basis (as columns) of {v in Z^cols : a v = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

Rat determinant(RatMatrix m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Unique solution of a x = b for square invertible a.
std::optional<std::vector<Rat>> solve(const RatMatrix& a, const std::vector<Rat>& b);

/// Least common multiple of the denominators of all entries.
Int common_denominator(const std::vector<Rat>& v);

} // namespace ofdef
