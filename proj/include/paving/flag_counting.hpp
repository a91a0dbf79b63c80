#pragma once

#include "paving/subspace.hpp"
#include "paving/unipoly.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace paving {

/// Residues mod q, one vector of a flag basis.
using FqRow = std::vector<int>;

/// A point of P(V_A) x Fl(V_B) x Fl(V_C) over F_q. The flags are given by
/// echelon bases: step i of a flag is the span of its first i rows, each row
/// has leading entry 1 and vanishes at the leading positions of earlier rows.
struct FlagPoint {
    FqRow line_a;
    std::vector<FqRow> flag_b;
    std::vector<FqRow> flag_c;
};

/// |P(V_A) x Fl(V_B) x Fl(V_C)| over F_q.
std::uint64_t flag_total(CaseId id, int q);

/// Points of P^{n-1}(F_q) as vectors with leading entry 1.
std::vector<FqRow> projective_points(int n, int q);

/// All complete flags of F_q^n as echelon bases, in a fixed order.
std::vector<std::vector<FqRow>> full_flags(int n, int q);

/// Calls f on every flag point exactly once. Throws std::invalid_argument
/// unless q is prime.
void for_each_flag(CaseId id, int q, const std::function<void(const FlagPoint&)>& f);
std::vector<FlagPoint> enumerate_flags(CaseId id, int q);

/// Per-flag thresholds. H[i], K[i] are the largest h with
/// Q(L_A x L_B^{i+1} x L_C^h) = 0 and Q(V_A x L_B^{i+1} x L_C^h) = 0;
/// l_min, m_min the least steps containing u0 and v0 (m_min = -1 without v0).
struct FlagProfile {
    std::vector<int> H, K;
    int l_min = 0;
    int m_min = -1;

    friend bool operator==(const FlagProfile&, const FlagProfile&) = default;
};

FlagProfile flag_profile(CaseId id, const FlagPoint& flag, int q);

/// True iff the flag with this profile lies in X_U.
bool admits(const FlagProfile& profile, const SubspaceParams& p);

/// Number of flags per profile at one prime.
class ProfileHistogram {
public:
    ProfileHistogram(CaseId id, int q);

    CaseId id() const { return id_; }
    int q() const { return q_; }
    std::uint64_t total() const;
    void add(const FlagProfile& p, std::uint64_t weight = 1);
    void merge(const ProfileHistogram& other);
    std::uint64_t count(const SubspaceParams& p) const;
    /// Nonzero (profile, multiplicity) pairs in slot order.
    std::vector<std::pair<FlagProfile, std::uint64_t>> entries() const;

    friend bool operator==(const ProfileHistogram& a, const ProfileHistogram& b) {
        return a.id_ == b.id_ && a.q_ == b.q_ && a.slots_ == b.slots_;
    }

    // Slot packing, exposed for the counting kernel.
    std::size_t slot(const FlagProfile& p) const;
    FlagProfile profile(std::size_t slot) const;
    void add_slot(std::size_t slot, std::uint64_t weight) { slots_[slot] += weight; }

private:
    CaseId id_;
    int q_;
    int nB_;
    std::vector<std::uint64_t> slots_;
};

/// One pass over Fl(V_B) x Fl(V_C); the P(V_A) factor is handled in closed
/// form per pair. Workers own private histograms that are summed at the end.
ProfileHistogram build_histogram(CaseId id, int q, int jobs = 1);

/// Same histogram from flag_profile on every flag point. Slow; for checks.
ProfileHistogram naive_histogram(CaseId id, int q);

struct CountRecord {
    SubspaceParams params;
    int q = 0;
    std::uint64_t count = 0;
};

/// Histograms per prime, built on first use and shared by all queries.
class PointCounter {
public:
    explicit PointCounter(CaseId id, int jobs = 1) : id_(id), jobs_(jobs) {}

    CaseId id() const { return id_; }
    const ProfileHistogram& histogram(int q);
    std::uint64_t count(const SubspaceParams& p, int q) { return histogram(q).count(p); }

private:
    CaseId id_;
    int jobs_;
    std::mutex mutex_;
    std::map<int, std::unique_ptr<ProfileHistogram>> cache_;
};

/// Uses one process-wide PointCounter per case.
CountRecord count_points(CaseId id, const SubspaceParams& p, int q);

struct PoincarePolynomial {
    UniPoly poly;
    std::vector<int> samples;
    std::vector<int> holdouts;
    bool consistent = false;             ///< holdout counts reproduced exactly
    bool nonneg_integer_coeffs = false;

    int degree() const { return poly.degree(); }
    /// Number of connected components, assuming a paving.
    Rational constant_term() const { return poly.coefficient(0); }
};

/// Sample primes per case. E7a4 skips 2: its incidence locus reduces badly
/// there (10|21|2|2 picks up a third point over F_2).
const std::vector<int>& default_primes(CaseId id);
inline const std::vector<int> default_holdouts{19};

/// Interpolates counts at `primes` and checks `holdouts`. When fewer than
/// expected_degree + 1 primes are given, holdouts are moved into the sample
/// set until there are enough.
PoincarePolynomial poincare(PointCounter& counter, const SubspaceParams& p, std::span<const int> primes,
                            std::span<const int> holdouts, int expected_degree);
PoincarePolynomial poincare(CaseId id, const SubspaceParams& p);
PoincarePolynomial poincare(CaseId id, const SubspaceParams& p, std::span<const int> primes, std::span<const int> holdouts);

/// |P_U/B0 (F_q)| for a parabolic of the given type.
std::uint64_t levi_flag_count(const CaseModel& model, const std::vector<std::string>& type, int q);

struct YStats {
    int dim_y = 0;
    std::map<int, std::uint64_t> count_y;  ///< per prime
};

/// Counts of Y_U = X_U / (P_U/B0). Throws std::domain_error if X_U is empty
/// and std::logic_error if a count is not divisible by the fibre count.
YStats yu_stats(PointCounter& counter, const Subspace& u, std::span<const int> primes);
YStats yu_stats(PointCounter& counter, const Subspace& u);

}  // namespace paving
