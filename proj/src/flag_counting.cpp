#include "paving/flag_counting.hpp"

#include "paving/fq.hpp"
#include "pair_kernel.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <thread>

namespace paving {

using detail::dot;
using detail::full_flag_count;
using detail::mod;
using detail::first_step_containing;
using detail::reduce;
using detail::require_prime;

namespace {

// Normalized vectors (leading entry 1) of F_q^n vanishing on `blocked`.
void normalized_vectors(int n, int q, const std::vector<int>& blocked, std::vector<FqRow>& out) {
    std::vector<int> free;
    for (int i = 0; i < n; ++i)
        if (std::find(blocked.begin(), blocked.end(), i) == blocked.end()) free.push_back(i);
    for (std::size_t lead = 0; lead < free.size(); ++lead) {
        const std::size_t rest = free.size() - lead - 1;
        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < rest; ++i) combos *= static_cast<std::uint64_t>(q);
        for (std::uint64_t c = 0; c < combos; ++c) {
            FqRow v(static_cast<std::size_t>(n), 0);
            v[static_cast<std::size_t>(free[lead])] = 1;
            std::uint64_t x = c;
            for (std::size_t i = lead + 1; i < free.size(); ++i, x /= static_cast<std::uint64_t>(q))
                v[static_cast<std::size_t>(free[i])] = static_cast<int>(x % static_cast<std::uint64_t>(q));
            out.push_back(std::move(v));
        }
    }
}

int leading(const FqRow& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return static_cast<int>(i);
    return -1;
}

void extend_flags(int n, int q, std::vector<FqRow>& basis, std::vector<int>& pivots,
                  std::vector<std::vector<FqRow>>& out) {
    if (static_cast<int>(basis.size()) == n) {
        out.push_back(basis);
        return;
    }
    std::vector<FqRow> next;
    normalized_vectors(n, q, pivots, next);
    for (auto& v : next) {
        pivots.push_back(leading(v));
        basis.push_back(std::move(v));
        extend_flags(n, q, basis, pivots, out);
        basis.pop_back();
        pivots.pop_back();
    }
}

constexpr int field_bits = 2;

}  // namespace

std::uint64_t flag_total(CaseId id, int q) {
    require_prime(q);
    const auto& model = CaseModel::get(id);
    const auto uq = static_cast<std::uint64_t>(q);
    // P(V_A) is the flag variety of a plane
    return full_flag_count(model.dim_A(), uq) * full_flag_count(model.dim_B(), uq) * full_flag_count(model.dim_C(), uq);
}

std::vector<FqRow> projective_points(int n, int q) {
    require_prime(q);
    std::vector<FqRow> out;
    normalized_vectors(n, q, {}, out);
    return out;
}

std::vector<std::vector<FqRow>> full_flags(int n, int q) {
    require_prime(q);
    std::vector<std::vector<FqRow>> out;
    std::vector<FqRow> basis;
    std::vector<int> pivots;
    extend_flags(n, q, basis, pivots, out);
    return out;
}

void for_each_flag(CaseId id, int q, const std::function<void(const FlagPoint&)>& f) {
    require_prime(q);
    const auto& model = CaseModel::get(id);
    const auto lines = projective_points(model.dim_A(), q);
    const auto fb = full_flags(model.dim_B(), q);
    const auto fc = full_flags(model.dim_C(), q);
    FlagPoint pt;
    for (const auto& a : lines)
        for (const auto& b : fb)
            for (const auto& c : fc) {
                pt.line_a = a;
                pt.flag_b = b;
                pt.flag_c = c;
                f(pt);
            }
}

std::vector<FlagPoint> enumerate_flags(CaseId id, int q) {
    std::vector<FlagPoint> out;
    for_each_flag(id, q, [&](const FlagPoint& p) { out.push_back(p); });
    return out;
}

FlagProfile flag_profile(CaseId id, const FlagPoint& flag, int q) {
    const auto& model = CaseModel::get(id);
    const int nB = model.dim_B(), nC = model.dim_C();
    const auto Q0 = reduce(model.pencil(0), q), Q1 = reduce(model.pencil(1), q);
    // Q_a(v, w) = w^T Q[a] v
    auto pairing = [&](const std::vector<std::vector<int>>& P, const FqRow& v, const FqRow& w) {
        long long s = 0;
        for (int c = 0; c < nC; ++c)
            for (int b = 0; b < nB; ++b) s += static_cast<long long>(w[c]) * P[c][b] * v[b];
        return mod(s, q);
    };
    FlagProfile out;
    int H = nC, K = nC;
    for (int i = 0; i < nB; ++i) {
        const auto& v = flag.flag_b[static_cast<std::size_t>(i)];
        int runH = 0, runK = 0;
        while (runH < nC) {
            const auto& w = flag.flag_c[static_cast<std::size_t>(runH)];
            if (mod(static_cast<long long>(flag.line_a[0]) * pairing(Q0, v, w) + static_cast<long long>(flag.line_a[1]) * pairing(Q1, v, w), q) != 0) break;
            ++runH;
        }
        while (runK < nC) {
            const auto& w = flag.flag_c[static_cast<std::size_t>(runK)];
            if (pairing(Q0, v, w) != 0 || pairing(Q1, v, w) != 0) break;
            ++runK;
        }
        H = std::min(H, runH);
        K = std::min(K, runK);
        out.H.push_back(H);
        out.K.push_back(K);
    }
    out.l_min = first_step_containing(flag.flag_b, reduce(model.u0(), q), q);
    if (model.has_v()) out.m_min = first_step_containing(flag.flag_c, reduce(model.v0(), q), q);
    return out;
}

bool admits(const FlagProfile& profile, const SubspaceParams& p) {
    for (std::size_t i = 0; i < p.h.size(); ++i)
        if (p.h[i] > profile.H[i] || p.k[i] > profile.K[i]) return false;
    if (p.l < profile.l_min) return false;
    if (p.m >= 0 && p.m < profile.m_min) return false;
    return true;
}

ProfileHistogram::ProfileHistogram(CaseId id, int q) : id_(id), q_(q), nB_(CaseModel::get(id).dim_B()) {
    const int fields = 2 * nB_ + 1 + (CaseModel::get(id).has_v() ? 1 : 0);
    slots_.assign(std::size_t{1} << (field_bits * fields), 0);
}

std::size_t ProfileHistogram::slot(const FlagProfile& p) const {
    std::size_t s = 0;
    int shift = 0;
    auto put = [&](int v) {
        s |= static_cast<std::size_t>(v) << shift;
        shift += field_bits;
    };
    for (int v : p.H) put(v);
    for (int v : p.K) put(v);
    put(p.l_min);
    if (p.m_min >= 0) put(p.m_min);
    return s;
}

FlagProfile ProfileHistogram::profile(std::size_t slot) const {
    constexpr std::size_t mask = (std::size_t{1} << field_bits) - 1;
    auto take = [&]() {
        const int v = static_cast<int>(slot & mask);
        slot >>= field_bits;
        return v;
    };
    FlagProfile p;
    for (int i = 0; i < nB_; ++i) p.H.push_back(take());
    for (int i = 0; i < nB_; ++i) p.K.push_back(take());
    p.l_min = take();
    p.m_min = CaseModel::get(id_).has_v() ? take() : -1;
    return p;
}

void ProfileHistogram::add(const FlagProfile& p, std::uint64_t weight) { slots_[slot(p)] += weight; }

void ProfileHistogram::merge(const ProfileHistogram& other) {
    if (other.id_ != id_ || other.q_ != q_) throw std::invalid_argument("merging histograms of different kinds");
    for (std::size_t i = 0; i < slots_.size(); ++i) slots_[i] += other.slots_[i];
}

std::uint64_t ProfileHistogram::total() const {
    std::uint64_t t = 0;
    for (auto w : slots_) t += w;
    return t;
}

std::uint64_t ProfileHistogram::count(const SubspaceParams& p) const {
    if (p.id != id_) throw std::invalid_argument("histogram queried with parameters of another case");
    std::uint64_t c = 0;
    for (std::size_t s = 0; s < slots_.size(); ++s)
        if (slots_[s] != 0 && admits(profile(s), p)) c += slots_[s];
    return c;
}

std::vector<std::pair<FlagProfile, std::uint64_t>> ProfileHistogram::entries() const {
    std::vector<std::pair<FlagProfile, std::uint64_t>> out;
    for (std::size_t s = 0; s < slots_.size(); ++s)
        if (slots_[s] != 0) out.emplace_back(profile(s), slots_[s]);
    return out;
}


ProfileHistogram build_histogram(CaseId id, int q, int jobs) {
    require_prime(q);
    const auto& model = CaseModel::get(id);
    const auto fb = full_flags(model.dim_B(), q);
    const auto fc = full_flags(model.dim_C(), q);
    const FqRow u0 = reduce(model.u0(), q);
    std::vector<int> m_min(fc.size(), -1);
    if (model.has_v()) {
        const FqRow v0 = reduce(model.v0(), q);
        for (std::size_t j = 0; j < fc.size(); ++j) m_min[j] = first_step_containing(fc[j], v0, q);
    }
    const detail::PairKernel kernel(model, q);

    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    std::vector<ProfileHistogram> parts(workers, ProfileHistogram(id, q));
    auto scan = [&](std::size_t w) {
        FlagProfile prof;
        prof.H.assign(static_cast<std::size_t>(model.dim_B()), 0);
        prof.K = prof.H;
        for (std::size_t i = w; i < fb.size(); i += workers) {
            const auto img = kernel.images(fb[i]);
            prof.l_min = first_step_containing(fb[i], u0, q);
            for (std::size_t j = 0; j < fc.size(); ++j) {
                prof.m_min = m_min[j];
                kernel.run(img, fc[j], prof, detail::LineSet::All, parts[w]);
            }
        }
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    }
    for (std::size_t w = 1; w < workers; ++w) parts[0].merge(parts[w]);
    return std::move(parts[0]);
}

ProfileHistogram naive_histogram(CaseId id, int q) {
    ProfileHistogram h(id, q);
    for_each_flag(id, q, [&](const FlagPoint& p) { h.add(flag_profile(id, p, q)); });
    return h;
}

const ProfileHistogram& PointCounter::histogram(int q) {
    std::lock_guard lock(mutex_);
    auto& slot = cache_[q];
    if (!slot) slot = std::make_unique<ProfileHistogram>(build_histogram(id_, q, jobs_));
    return *slot;
}

namespace {

PointCounter& shared_counter(CaseId id) {
    static PointCounter a4(CaseId::E7a4), a5(CaseId::E7a5);
    return id == CaseId::E7a4 ? a4 : a5;
}

}  // namespace

CountRecord count_points(CaseId id, const SubspaceParams& p, int q) {
    return {p, q, shared_counter(id).count(p, q)};
}

PoincarePolynomial poincare(PointCounter& counter, const SubspaceParams& p, std::span<const int> primes,
                            std::span<const int> holdouts, int expected_degree) {
    PoincarePolynomial out;
    out.samples.assign(primes.begin(), primes.end());
    out.holdouts.assign(holdouts.begin(), holdouts.end());
    while (static_cast<int>(out.samples.size()) < expected_degree + 1 && !out.holdouts.empty()) {
        out.samples.push_back(out.holdouts.front());
        out.holdouts.erase(out.holdouts.begin());
    }
    if (static_cast<int>(out.samples.size()) < expected_degree + 1)
        throw std::invalid_argument("poincare: " + std::to_string(out.samples.size()) + " primes cannot pin down degree " +
                                    std::to_string(expected_degree));
    std::vector<Sample> pts;
    for (int q : out.samples) pts.push_back({q, static_cast<std::int64_t>(counter.count(p, q))});
    out.poly = lagrange_interpolate(pts);
    out.consistent = true;
    for (int q : out.holdouts)
        if (out.poly(Rational(q)) != Rational(static_cast<long long>(counter.count(p, q)))) out.consistent = false;
    out.nonneg_integer_coeffs = out.poly.has_nonnegative_integer_coefficients();
    return out;
}

const std::vector<int>& default_primes(CaseId id) {
    static const std::vector<int> a4{3, 5, 7, 11, 13, 17}, a5{2, 3, 5, 7, 11, 13, 17};
    return id == CaseId::E7a4 ? a4 : a5;
}

PoincarePolynomial poincare(CaseId id, const SubspaceParams& p) {
    return poincare(id, p, default_primes(id), default_holdouts);
}

PoincarePolynomial poincare(CaseId id, const SubspaceParams& p, std::span<const int> primes, std::span<const int> holdouts) {
    const auto& model = CaseModel::get(id);
    const auto u = subspace_basis(model, p);
    const int bound = std::max<int>(0, static_cast<int>(u.dim() - model.borel_dim()));
    return poincare(shared_counter(id), p, primes, holdouts, bound);
}

std::uint64_t levi_flag_count(const CaseModel& model, const std::vector<std::string>& type, int q) {
    std::uint64_t total = 1;
    for (Block bl : {Block::A, Block::B, Block::C}) {
        const int n = bl == Block::A ? model.dim_A() : bl == Block::B ? model.dim_B() : model.dim_C();
        int run = 0;
        for (int i = 1; i <= n; ++i) {
            const std::string label = std::string(1, block_name(bl)) + std::to_string(i);
            if (i < n && std::find(type.begin(), type.end(), label) != type.end()) {
                ++run;
            } else {
                total *= full_flag_count(run + 1, static_cast<std::uint64_t>(q));
                run = 0;
            }
        }
    }
    return total;
}

YStats yu_stats(PointCounter& counter, const Subspace& u) { return yu_stats(counter, u, default_primes(u.params.id)); }

YStats yu_stats(PointCounter& counter, const Subspace& u, std::span<const int> primes) {
    const auto& model = CaseModel::get(u.params.id);
    YStats out;
    out.dim_y = static_cast<int>(u.dim() - model.borel_dim()) - u.levi_positive;
    for (int q : primes) {
        const std::uint64_t c = counter.count(u.params, q);
        if (c == 0) throw std::domain_error("yu_stats: X_U is empty for " + u.params.label());
        const std::uint64_t fibre = levi_flag_count(model, u.parabolic_type, q);
        if (c % fibre != 0)
            throw std::logic_error("yu_stats: |X_U| = " + std::to_string(c) + " is not divisible by |P_U/B0| = " +
                                   std::to_string(fibre) + " at q = " + std::to_string(q) + " for " + u.params.label());
        out.count_y[q] = c / fibre;
    }
    return out;
}

}  // namespace paving
