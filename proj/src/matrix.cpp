#include "ofdef/matrix.hpp"

#include <utility>

namespace ofdef {

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rat(m(i, j));
    return r;
}

namespace {

// Replace columns (p, q) of both matrices by the unimodular combination
// [s t; -b/g a/g] so that row `row` of column q becomes zero.
void combine_columns(IntMatrix& w, IntMatrix& u, std::size_t row, std::size_t p, std::size_t q)
{
    const Int a = w(row, p);
    const Int b = w(row, q);
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Int ag = a / g;
    const Int bg = b / g;
    auto apply = [&](IntMatrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const Int x = m(i, p);
            const Int y = m(i, q);
            m(i, p) = s * x + t * y;
            m(i, q) = ag * y - bg * x;
        }
    };
    apply(w);
    apply(u);
}

void axpy_column(IntMatrix& m, std::size_t dst, const Int& factor, std::size_t src)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, dst) -= factor * m(i, src);
}

void negate_column(IntMatrix& m, std::size_t j)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, j) = -m(i, j);
}

} // namespace

HermiteResult hermite_with_transform(const IntMatrix& input)
{
    IntMatrix w = input;
    IntMatrix u = IntMatrix::identity(input.cols());
    HermiteResult out;
    std::size_t pc = 0;
    for (std::size_t row = 0; row < w.rows() && pc < w.cols(); ++row) {
        for (std::size_t j = pc + 1; j < w.cols(); ++j)
            if (w(row, j) != 0)
                combine_columns(w, u, row, pc, j);
        if (w(row, pc) == 0)
            continue;
        if (w(row, pc) < 0) {
            negate_column(w, pc);
            negate_column(u, pc);
        }
        for (std::size_t k = 0; k < pc; ++k) {
            const Int q = floor_div(w(row, k), w(row, pc));
            if (q != 0) {
                axpy_column(w, k, q, pc);
                axpy_column(u, k, q, pc);
            }
        }
        out.pivot_rows.push_back(row);
        ++pc;
    }
    out.rank = pc;
    out.basis = IntMatrix(w.rows(), pc);
    for (std::size_t j = 0; j < pc; ++j)
        out.basis.set_column(j, w.column(j));
    out.transform = std::move(u);
    return out;
}

IntMatrix hermite_basis(const IntMatrix& gens)
{
    // Same elimination without tracking the transform.
    IntMatrix w = gens;
    IntMatrix dummy(0, gens.cols());
    std::size_t pc = 0;
    for (std::size_t row = 0; row < w.rows() && pc < w.cols(); ++row) {
        for (std::size_t j = pc + 1; j < w.cols(); ++j)
            if (w(row, j) != 0)
                combine_columns(w, dummy, row, pc, j);
        if (w(row, pc) == 0)
            continue;
        if (w(row, pc) < 0)
            negate_column(w, pc);
        for (std::size_t k = 0; k < pc; ++k) {
            const Int q = floor_div(w(row, k), w(row, pc));
            if (q != 0)
                axpy_column(w, k, q, pc);
        }
        ++pc;
    }
    IntMatrix h(w.rows(), pc);
    for (std::size_t j = 0; j < pc; ++j)
        h.set_column(j, w.column(j));
    return h;
}

IntMatrix integer_kernel(const IntMatrix& a)
{
    const HermiteResult hr = hermite_with_transform(a);
    IntMatrix k(a.cols(), a.cols() - hr.rank);
    for (std::size_t j = hr.rank; j < a.cols(); ++j)
        k.set_column(j - hr.rank, hr.transform.column(j));
    return k;
}

Rat determinant(RatMatrix m)
{
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(piv, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0)
                continue;
            const Rat f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

std::optional<RatMatrix> inverse(const RatMatrix& input)
{
    const std::size_t n = input.rows();
    RatMatrix m = input;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        const Rat p = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= p;
            inv(c, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0)
                continue;
            const Rat f = m(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

std::optional<std::vector<Rat>> solve(const RatMatrix& a, const std::vector<Rat>& b)
{
    const std::size_t n = a.rows();
    RatMatrix m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = a(i, j);
        m(i, n) = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        if (piv != c)
            for (std::size_t j = 0; j <= n; ++j)
                std::swap(m(piv, j), m(c, j));
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0)
                continue;
            const Rat f = m(r, c) / m(c, c);
            for (std::size_t j = c; j <= n; ++j)
                m(r, j) -= f * m(c, j);
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = m(i, n) / m(i, i);
    return x;
}

Int common_denominator(const std::vector<Rat>& v)
{
    Int d = 1;
    for (const auto& x : v)
        d = lcm(d, x.get_den());
    return d;
}

} // namespace ofdef
