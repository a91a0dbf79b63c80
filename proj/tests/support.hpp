#pragma once

// Oracles shared by the test binaries. Nothing here goes through the
// profile histograms.

#include "paving/flag_counting.hpp"
#include "paving/subspace.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace paving::testing {

inline const std::vector<InventoryEntry>& inventory(CaseId id) {
    static std::map<CaseId, std::vector<InventoryEntry>> cache;
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, build_inventory(id)).first;
    return it->second;
}

inline const InventoryEntry& entry(CaseId id, const std::string& label) {
    for (const auto& e : inventory(id))
        if (e.subspace.params.label() == label) return e;
    throw std::runtime_error("missing " + label);
}

inline int residue(long long x, int q) { return static_cast<int>(((x % q) + q) % q); }

// rank of a small integer matrix mod q, by plain elimination
inline int rank_mod(std::vector<std::vector<int>> m, int q) {
    int r = 0;
    const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(m.size()); ++i)
            if (m[i][c] % q != 0) piv = i;
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        int inv = 1;
        while (inv * m[r][c] % q != 1) ++inv;
        for (int i = 0; i < static_cast<int>(m.size()); ++i) {
            if (i == r) continue;
            const int f = m[i][c] * inv % q;
            for (int j = 0; j < cols; ++j) m[i][j] = residue(m[i][j] - f * m[r][j], q);
        }
        ++r;
    }
    return r;
}

inline bool in_span(const std::vector<FqRow>& rows, std::size_t k, const FqRow& x, int q) {
    if (k >= x.size()) return true;
    std::vector<std::vector<int>> m(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k));
    const int base = rank_mod(m, q);
    m.push_back(x);
    return rank_mod(m, q) == base;
}

// Direct reading of the incidence conditions for one flag point.
inline bool member_oracle(CaseId id, const SubspaceParams& p, const FlagPoint& f, int q) {
    const auto& model = CaseModel::get(id);
    auto pencil = [&](int a, int c, int b) { return static_cast<int>(model.pencil(a)(c, b).numerator()); };
    auto form = [&](int s, int t, const FqRow& v, const FqRow& w) {
        long long sum = 0;
        for (int c = 0; c < model.dim_C(); ++c)
            for (int b = 0; b < model.dim_B(); ++b)
                sum += static_cast<long long>(w[c]) * v[b] * (s * pencil(0, c, b) + t * pencil(1, c, b));
        return residue(sum, q);
    };
    for (int i = 0; i < model.dim_B(); ++i)
        for (int ip = 0; ip <= i; ++ip) {
            const auto& v = f.flag_b[static_cast<std::size_t>(ip)];
            for (int j = 0; j < p.h[static_cast<std::size_t>(i)]; ++j)
                if (form(f.line_a[0], f.line_a[1], v, f.flag_c[static_cast<std::size_t>(j)]) != 0) return false;
            for (int j = 0; j < p.k[static_cast<std::size_t>(i)]; ++j)
                if (form(1, 0, v, f.flag_c[static_cast<std::size_t>(j)]) != 0 || form(0, 1, v, f.flag_c[static_cast<std::size_t>(j)]) != 0)
                    return false;
        }
    auto reduce = [&](const Vector<Rational>& x) {
        FqRow r;
        for (Index i = 0; i < x.size(); ++i) r.push_back(residue(static_cast<long long>(x(i).numerator()), q));
        return r;
    };
    if (p.l == 0 || !in_span(f.flag_b, static_cast<std::size_t>(p.l), reduce(model.u0()), q)) return false;
    if (model.has_v() && (p.m == 0 || !in_span(f.flag_c, static_cast<std::size_t>(p.m), reduce(model.v0()), q))) return false;
    return true;
}

inline std::uint64_t naive_count(CaseId id, const SubspaceParams& p, int q) {
    std::uint64_t n = 0;
    for_each_flag(id, q, [&](const FlagPoint& f) { n += member_oracle(id, p, f, q) ? 1 : 0; });
    return n;
}

}  // namespace paving::testing
