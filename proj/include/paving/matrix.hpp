#pragma once

#include "paving/fq.hpp"
#include "paving/rational.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace paving {

using Index = Eigen::Index;

template <class K>
using Matrix = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;

template <class K>
using Vector = Eigen::Matrix<K, Eigen::Dynamic, 1>;

/// Reduced row-echelon form together with its rank and pivot columns.
template <class K>
struct Echelon {
    Matrix<K> reduced;
    Index rank = 0;
    std::vector<Index> pivots;
};

/// Gauss-Jordan elimination over an exact field. The input is not modified.
template <class K>
Echelon<K> rref(const Matrix<K>& m) {
    Echelon<K> out{m, 0, {}};
    Matrix<K>& a = out.reduced;
    const Index rows = a.rows(), cols = a.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i) {
            if (!is_zero(a(i, c))) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r) a.row(piv).swap(a.row(r));
        const K inv = K(1) / a(r, c);
        for (Index j = c; j < cols; ++j)
            if (!is_zero(a(r, j))) a(r, j) *= inv;
        for (Index i = 0; i < rows; ++i) {
            if (i == r || is_zero(a(i, c))) continue;
            const K f = a(i, c);
            for (Index j = c; j < cols; ++j)
                if (!is_zero(a(r, j))) a(i, j) -= f * a(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

/// Embeds an integer or rational into K. For K = Fq the modulus must be a
/// prime not dividing the denominator; 0 leaves the constant unbound.
template <class K>
K from_rational(const Rational& r, std::uint32_t q = 0) {
    if constexpr (std::is_same_v<K, Fq>) {
        const BigInt mod = q == 0 ? BigInt(1) : BigInt(q);
        if (q == 0) {
            if (!r.is_integer()) throw std::domain_error("from_rational: unbound non-integer");
            return Fq(static_cast<int>(r.numerator()));
        }
        BigInt num = r.numerator() % mod, den = r.denominator() % mod;
        if (den == 0) throw std::domain_error("from_rational: denominator vanishes mod q");
        const Fq n(static_cast<std::int64_t>(num), q), d(static_cast<std::int64_t>(den), q);
        return n / d;
    } else {
        (void)q;
        return K(r);
    }
}

template <class K>
K from_int(long long n, std::uint32_t q = 0) {
    if constexpr (std::is_same_v<K, Fq>) {
        if (q == 0) return Fq(static_cast<int>(n));
        return Fq(static_cast<std::int64_t>(n), q);
    } else {
        (void)q;
        return K(n);
    }
}

/// The prime of an F_q vector (first bound entry), 0 over Q or if unknown.
template <class K>
std::uint32_t field_modulus(const Vector<K>& v) {
    if constexpr (std::is_same_v<K, Fq>) {
        for (Index i = 0; i < v.size(); ++i)
            if (v(i).bound()) return v(i).modulus();
    }
    (void)v;
    return 0;
}

template <class K>
Matrix<K> convert_matrix(const Matrix<Rational>& m, std::uint32_t q = 0) {
    Matrix<K> out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) out(i, j) = from_rational<K>(m(i, j), q);
    return out;
}

template <class K>
Index rank(const Matrix<K>& m) {
    return rref(m).rank;
}

/// Rank of a dense row-major matrix of residues modulo a prime p < 2^31.
/// Word-size arithmetic; the input is taken by value and destroyed.
inline Index rank_mod_p(std::vector<std::uint64_t> a, Index rows, Index cols, std::uint64_t p) {
    auto at = [&](Index i, Index j) -> std::uint64_t& { return a[static_cast<std::size_t>(i * cols + j)]; };
    auto inv = [p](std::uint64_t x) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1U) r = r * x % p;
            x = x * x % p;
            e >>= 1U;
        }
        return r;
    };
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i)
            if (at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (Index j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
        const std::uint64_t iv = inv(at(r, c));
        for (Index j = c; j < cols; ++j) at(r, j) = at(r, j) * iv % p;
        for (Index i = r + 1; i < rows; ++i) {
            const std::uint64_t f = at(i, c);
            if (f == 0) continue;
            for (Index j = c; j < cols; ++j) at(i, j) = (at(i, j) + (p - f) * at(r, j)) % p;
        }
        ++r;
    }
    return r;
}

/// Rank over Q by fraction-free (Bareiss) elimination on integers. Rows are
/// first scaled by their common denominator.
inline Index exact_rank(const Matrix<Rational>& m) {
    const Index rows = m.rows(), cols = m.cols();
    std::vector<std::vector<BigInt>> a(static_cast<std::size_t>(rows), std::vector<BigInt>(static_cast<std::size_t>(cols)));
    for (Index i = 0; i < rows; ++i) {
        BigInt den = 1;
        for (Index j = 0; j < cols; ++j) den = boost::multiprecision::lcm(den, m(i, j).denominator());
        for (Index j = 0; j < cols; ++j)
            a[i][j] = m(i, j).numerator() * (den / m(i, j).denominator());
    }
    BigInt prev = 1;
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        for (Index i = r + 1; i < rows; ++i) {
            for (Index j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Basis of the right kernel {x : m x = 0}; its size is cols - rank.
template <class K>
std::vector<Vector<K>> kernel_basis(const Matrix<K>& m) {
    const auto e = rref(m);
    const Index cols = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<Vector<K>> basis;
    for (Index f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vector<K> v = Vector<K>::Zero(cols);
        v(f) = K(1);
        for (Index r = 0; r < e.rank; ++r) v(e.pivots[static_cast<std::size_t>(r)]) = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Stacks vectors as the rows of a matrix with `cols` columns.
template <class K>
Matrix<K> stack_rows(const std::vector<Vector<K>>& vs, Index cols) {
    Matrix<K> m(static_cast<Index>(vs.size()), cols);
    for (Index i = 0; i < m.rows(); ++i) {
        if (vs[static_cast<std::size_t>(i)].size() != cols)
            throw std::invalid_argument("stack_rows: vector length mismatch");
        m.row(i) = vs[static_cast<std::size_t>(i)].transpose();
    }
    return m;
}

// Block concatenation. Eigen's comma initializer is avoided because its
// scalar overload trips Boost.Multiprecision's converting constructors.
template <class K>
Matrix<K> vstack(const Matrix<K>& top, const Matrix<K>& bottom) {
    if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack: column mismatch");
    Matrix<K> m(top.rows() + bottom.rows(), top.cols());
    m.topRows(top.rows()) = top;
    m.bottomRows(bottom.rows()) = bottom;
    return m;
}

template <class K>
Matrix<K> hstack(const Matrix<K>& left, const Matrix<K>& right) {
    if (left.rows() != right.rows()) throw std::invalid_argument("hstack: row mismatch");
    Matrix<K> m(left.rows(), left.cols() + right.cols());
    m.leftCols(left.cols()) = left;
    m.rightCols(right.cols()) = right;
    return m;
}

template <class K>
Matrix<K> identity(Index n) {
    Matrix<K> m = Matrix<K>::Zero(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
}

template <class K>
bool is_zero_matrix(const Matrix<K>& m) {
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <class K>
bool is_zero_vector(const Vector<K>& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) return false;
    return true;
}

/// Matrix-vector product written out so it never materializes Scalar(0)
/// intermediates beyond what the field type supports.
template <class K>
Vector<K> mul(const Matrix<K>& m, const Vector<K>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("apply: dimension mismatch");
    Vector<K> out = Vector<K>::Zero(m.rows());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!is_zero(m(i, j)) && !is_zero(v(j))) out(i) += m(i, j) * v(j);
    return out;
}

}  // namespace paving
