#pragma once

#include "paving/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace paving {

/// A linear subspace of K^n stored as the nonzero rows of its reduced
/// row-echelon basis, which makes equality a plain comparison.
template <class K>
class Span {
public:
    Span() = default;
    explicit Span(Index ambient) : ambient_(ambient), basis_(0, ambient) {}

    static Span from_rows(const Matrix<K>& rows) {
        Span s(rows.cols());
        const auto e = rref(rows);
        s.basis_ = e.reduced.topRows(e.rank);
        s.pivots_ = e.pivots;
        return s;
    }

    static Span from_vectors(const std::vector<Vector<K>>& vs, Index ambient) {
        return from_rows(stack_rows(vs, ambient));
    }

    static Span full(Index ambient) { return from_rows(identity<K>(ambient)); }

    Index ambient_dim() const { return ambient_; }
    Index dim() const { return basis_.rows(); }
    const Matrix<K>& basis() const { return basis_; }
    const std::vector<Index>& pivots() const { return pivots_; }

    std::vector<Vector<K>> vectors() const {
        std::vector<Vector<K>> out;
        for (Index i = 0; i < dim(); ++i) out.emplace_back(basis_.row(i).transpose());
        return out;
    }

    bool contains(const Vector<K>& v) const {
        if (v.size() != ambient_) throw std::invalid_argument("Span::contains: dimension mismatch");
        // Reduce v against the echelon basis; pivots are normalized to 1.
        Vector<K> r = v;
        for (Index i = 0; i < dim(); ++i) {
            const Index p = pivots_[static_cast<std::size_t>(i)];
            if (is_zero(r(p))) continue;
            const K f = r(p);
            for (Index j = 0; j < ambient_; ++j)
                if (!is_zero(basis_(i, j))) r(j) -= f * basis_(i, j);
        }
        return is_zero_vector(r);
    }

    bool contains(const Span& other) const {
        check_same_ambient(other);
        for (Index i = 0; i < other.dim(); ++i)
            if (!contains(Vector<K>(other.basis_.row(i).transpose()))) return false;
        return true;
    }

    friend bool operator==(const Span& a, const Span& b) {
        if (a.ambient_ != b.ambient_ || a.dim() != b.dim() || a.pivots_ != b.pivots_) return false;
        for (Index i = 0; i < a.dim(); ++i)
            for (Index j = 0; j < a.ambient_; ++j)
                if (a.basis_(i, j) != b.basis_(i, j)) return false;
        return true;
    }

    void check_same_ambient(const Span& other) const {
        if (ambient_ != other.ambient_) throw std::invalid_argument("Span: ambient dimension mismatch");
    }

private:
    Index ambient_ = 0;
    Matrix<K> basis_;
    std::vector<Index> pivots_;
};

template <class K>
Span<K> sum(const Span<K>& a, const Span<K>& b) {
    a.check_same_ambient(b);
    return Span<K>::from_rows(vstack(a.basis(), b.basis()));
}

/// A ∩ B from the kernel of [A^T | -B^T].
template <class K>
Span<K> intersect(const Span<K>& a, const Span<K>& b) {
    a.check_same_ambient(b);
    const Index n = a.ambient_dim();
    if (a.dim() == 0 || b.dim() == 0) return Span<K>(n);
    const Matrix<K> sys = hstack<K>(a.basis().transpose(), -b.basis().transpose());
    std::vector<Vector<K>> common;
    for (const auto& x : kernel_basis(sys)) {
        Vector<K> w = Vector<K>::Zero(n);
        for (Index i = 0; i < a.dim(); ++i)
            if (!is_zero(x(i))) w += x(i) * Vector<K>(a.basis().row(i).transpose());
        common.push_back(std::move(w));
    }
    if (common.empty()) return Span<K>(n);
    return Span<K>::from_vectors(common, n);
}

/// Image of a span under a linear map.
template <class K>
Span<K> image(const Matrix<K>& op, const Span<K>& s) {
    std::vector<Vector<K>> out;
    for (const auto& v : s.vectors()) out.push_back(mul(op, v));
    if (out.empty()) return Span<K>(op.rows());
    return Span<K>::from_vectors(out, op.rows());
}

/// Preimage {x in s : op x in t}.
template <class K>
Span<K> restricted_preimage(const Matrix<K>& op, const Span<K>& s, const Span<K>& t) {
    // Coordinates c on s with op(S c) in t: op S c = T d.
    const Index n = s.ambient_dim();
    if (s.dim() == 0) return Span<K>(n);
    const Matrix<K> sb = s.basis().transpose();  // n x ds
    Matrix<K> img(op.rows(), s.dim());
    for (Index j = 0; j < s.dim(); ++j) img.col(j) = mul(op, Vector<K>(sb.col(j)));
    const Matrix<K> sys = hstack<K>(img, -t.basis().transpose());
    std::vector<Vector<K>> keep;
    for (const auto& x : kernel_basis(sys)) {
        Vector<K> w = Vector<K>::Zero(n);
        for (Index j = 0; j < s.dim(); ++j)
            if (!is_zero(x(j))) w += x(j) * Vector<K>(sb.col(j));
        if (!is_zero_vector(w)) keep.push_back(std::move(w));
    }
    if (keep.empty()) return Span<K>(n);
    return Span<K>::from_vectors(keep, n);
}

}  // namespace paving
