#pragma once

// Shared by flag counting and cell counting.

#include "paving/flag_counting.hpp"
#include "paving/fq.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace paving::detail {

inline void require_prime(int q) {
    if (q < 2 || !is_prime(static_cast<std::uint64_t>(q)))
        throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
}

inline std::uint64_t q_integer(int n, std::uint64_t q) {
    std::uint64_t s = 0, p = 1;
    for (int i = 0; i < n; ++i, p *= q) s += p;
    return s;
}

inline std::uint64_t full_flag_count(int n, std::uint64_t q) {
    std::uint64_t c = 1;
    for (int j = 1; j <= n; ++j) c *= q_integer(j, q);
    return c;
}

inline int mod(long long x, int q) {
    const long long r = x % q;
    return static_cast<int>(r < 0 ? r + q : r);
}

inline FqRow reduce(const Vector<Rational>& v, int q) {
    FqRow out(static_cast<std::size_t>(v.size()));
    for (Index i = 0; i < v.size(); ++i) {
        const auto r = from_rational<Fq>(v(i), static_cast<std::uint32_t>(q));
        out[static_cast<std::size_t>(i)] = static_cast<int>(r.value());
    }
    return out;
}

inline std::vector<std::vector<int>> reduce(const Matrix<Rational>& m, int q) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(m.rows()), std::vector<int>(static_cast<std::size_t>(m.cols())));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<int>(from_rational<Fq>(m(i, j), static_cast<std::uint32_t>(q)).value());
    return out;
}

inline int dot(const FqRow& a, const FqRow& b, int q) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * b[i];
    return mod(s, q);
}

// Least i with x in the span of the first i rows; rows.size() + 1 if never.
inline int first_step_containing(const std::vector<FqRow>& rows, const FqRow& x, int q) {
    const auto n = static_cast<Index>(x.size());
    for (std::size_t i = 1; i <= rows.size(); ++i) {
        std::vector<std::uint64_t> a;
        for (std::size_t r = 0; r < i; ++r)
            for (int v : rows[r]) a.push_back(static_cast<std::uint64_t>(v));
        for (int v : x) a.push_back(static_cast<std::uint64_t>(v));
        if (rank_mod_p(std::move(a), static_cast<Index>(i + 1), n, static_cast<std::uint64_t>(q)) == static_cast<Index>(i))
            return static_cast<int>(i);
    }
    return static_cast<int>(rows.size()) + 1;
}


/// Which lines of P(V_A) a kernel pass covers: all of them, only [1:0]
/// (the cell A_12) or all others (A_21).
enum class LineSet { All, First, Rest };

// Per (B-flag, C-flag) pair, M_a[i][j] = Q_a(v_i, w_j). For L_A = [s:t] the
// pairing is s M0 + t M1. Row i of the H computation can only outlast its
// K-run when L_A kills the first entry pair (m0, m1) != 0 of that row, i.e.
// L_A = [m1 : -m0]. So at most nB lines of P(V_A) are special and the rest
// share the profile with H = K.
class PairKernel {
public:
    PairKernel(const CaseModel& model, int q) : q_(q), nB_(model.dim_B()), nC_(model.dim_C()), inv_(static_cast<std::size_t>(q), 0) {
        for (int x = 1; x < q; ++x)
            for (int y = 1; y < q; ++y)
                if (x * y % q == 1) inv_[static_cast<std::size_t>(x)] = y;
        pencils_[0] = reduce(model.pencil(0), q);
        pencils_[1] = reduce(model.pencil(1), q);
    }

    // Q[a] v_i for every a, i.
    std::vector<std::array<FqRow, 2>> images(const std::vector<FqRow>& flag_b) const {
        std::vector<std::array<FqRow, 2>> out(static_cast<std::size_t>(nB_));
        for (int i = 0; i < nB_; ++i)
            for (int a = 0; a < 2; ++a) {
                FqRow r(static_cast<std::size_t>(nC_));
                for (int c = 0; c < nC_; ++c) r[c] = dot(pencils_[a][c], flag_b[static_cast<std::size_t>(i)], q_);
                out[static_cast<std::size_t>(i)][a] = std::move(r);
            }
        return out;
    }

    // prof carries l_min and m_min in; H and K are overwritten.
    void run(const std::vector<std::array<FqRow, 2>>& img, const std::vector<FqRow>& flag_c, FlagProfile& prof,
             LineSet lines, ProfileHistogram& out) const {
        std::array<std::array<int, 3>, 3> m0{}, m1{};
        std::array<int, 3> zlen{};
        for (int i = 0; i < nB_; ++i) {
            int z = nC_;
            for (int j = 0; j < nC_; ++j) {
                m0[i][j] = dot(img[static_cast<std::size_t>(i)][0], flag_c[static_cast<std::size_t>(j)], q_);
                m1[i][j] = dot(img[static_cast<std::size_t>(i)][1], flag_c[static_cast<std::size_t>(j)], q_);
                if (z == nC_ && (m0[i][j] != 0 || m1[i][j] != 0)) z = j;
            }
            zlen[i] = z;
        }
        int K = nC_;
        for (int i = 0; i < nB_; ++i) {
            K = std::min(K, zlen[i]);
            prof.K[static_cast<std::size_t>(i)] = K;
            prof.H[static_cast<std::size_t>(i)] = K;
        }

        // [s:t] encoded as t/s in [0,q), or q for [0:1]; [1:0] is 0
        auto covered = [&](int id) { return lines == LineSet::All || (lines == LineSet::First) == (id == 0); };
        std::array<int, 3> special{};
        int nspecial = 0;
        for (int i = 0; i < nB_; ++i) {
            if (zlen[i] == nC_) continue;
            const int a = m0[i][zlen[i]], b = m1[i][zlen[i]];
            const int id = b != 0 ? mod(-static_cast<long long>(a) * inv_[static_cast<std::size_t>(b)], q_) : q_;
            if (covered(id) && std::find(special.begin(), special.begin() + nspecial, id) == special.begin() + nspecial)
                special[nspecial++] = id;
        }
        const int size = lines == LineSet::All ? q_ + 1 : lines == LineSet::First ? 1 : q_;
        if (size > nspecial) out.add_slot(out.slot(prof), static_cast<std::uint64_t>(size - nspecial));

        for (int k = 0; k < nspecial; ++k) {
            const int s = special[k] == q_ ? 0 : 1, t = special[k] == q_ ? 1 : special[k];
            int H = nC_;
            for (int i = 0; i < nB_; ++i) {
                int run = 0;
                while (run < nC_ && mod(static_cast<long long>(s) * m0[i][run] + static_cast<long long>(t) * m1[i][run], q_) == 0) ++run;
                H = std::min(H, run);
                prof.H[static_cast<std::size_t>(i)] = H;
            }
            out.add_slot(out.slot(prof), 1);
        }
    }

private:
    int q_, nB_, nC_;
    std::vector<int> inv_;
    std::array<std::vector<std::vector<int>>, 2> pencils_;
};

}  // namespace paving::detail
