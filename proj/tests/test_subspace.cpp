#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paving/subspace.hpp"

#include <algorithm>
#include <map>

using namespace paving;

namespace {

const std::vector<InventoryEntry>& inventory(CaseId id) {
    static std::map<CaseId, std::vector<InventoryEntry>> cache;
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, build_inventory(id)).first;
    return it->second;
}

const InventoryEntry& entry(CaseId id, const std::string& label) {
    for (const auto& e : inventory(id))
        if (e.subspace.params.label() == label) return e;
    throw std::runtime_error("missing " + label);
}

int delta(CaseId id, const std::string& label) { return entry(id, label).dims.value().dim_y; }
int dimx(CaseId id, const std::string& label) { return entry(id, label).dims.value().dim_x; }

// Independent realization: a coordinate survives iff no listed condition kills it.
std::vector<Index> support_oracle(const CaseModel& m, const SubspaceParams& p) {
    std::vector<Index> keep;
    for (int b = 0; b < m.dim_B(); ++b)
        if (b < p.l) keep.push_back(m.u_index(b));
    if (m.has_v())
        for (int c = 0; c < m.dim_C(); ++c)
            if (c >= m.dim_C() - p.m) keep.push_back(m.v_index(c));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < m.dim_B(); ++b)
            for (int c = 0; c < m.dim_C(); ++c) {
                const int depth = m.dim_C() - c;  // position of e_c in the reverse flag
                const int thr = a == 0 ? p.h[static_cast<std::size_t>(b)] : p.k[static_cast<std::size_t>(b)];
                if (depth > thr) keep.push_back(m.q_index(a, b, c));
            }
    std::sort(keep.begin(), keep.end());
    return keep;
}

}  // namespace

TEST_CASE("labels round-trip") {
    const auto p = SubspaceParams::parse(CaseId::E7a4, "1,0|2,1|2|2");
    CHECK(p.label() == "10|21|2|2");
    CHECK(SubspaceParams::parse(CaseId::E7a4, p.label()) == p);
    CHECK(SubspaceParams::parse(CaseId::E7a5, "100|200|2").m == -1);
    CHECK_THROWS_AS(SubspaceParams::parse(CaseId::E7a5, "010|200|2"), std::invalid_argument);
    CHECK_THROWS_AS(SubspaceParams::parse(CaseId::E7a5, "100|200"), std::invalid_argument);
    CHECK_THROWS_AS(SubspaceParams::parse(CaseId::E7a4, "20|10|2|2"), std::invalid_argument);
}

TEST_CASE("enumeration") {
    const auto a4 = enumerate_params(CaseId::E7a4);
    const auto a5 = enumerate_params(CaseId::E7a5);
    // 50 tensor subspaces x 3 values of l x 4 of m; 175 x 4 values of l
    CHECK(a4.size() == 600);
    CHECK(a5.size() == 700);
    auto has = [](const std::vector<SubspaceParams>& v, CaseId id, const std::string& s) {
        return std::find(v.begin(), v.end(), SubspaceParams::parse(id, s)) != v.end();
    };
    CHECK(has(a4, CaseId::E7a4, "00|00|2|3"));
    CHECK(has(a4, CaseId::E7a4, "10|21|2|2"));
    CHECK(has(a4, CaseId::E7a4, "00|00|0|0"));
    CHECK(has(a5, CaseId::E7a5, "000|100|3"));
}

TEST_CASE("realized bases") {
    const auto& a4 = CaseModel::get(CaseId::E7a4);
    const auto& a5 = CaseModel::get(CaseId::E7a5);
    CHECK(subspace_basis(a4, SubspaceParams::parse(CaseId::E7a4, "00|00|2|3")).dim() == 17);
    CHECK(subspace_basis(a4, SubspaceParams::parse(CaseId::E7a4, "00|10|2|3")).dim() == 16);
    CHECK(subspace_basis(a5, SubspaceParams::parse(CaseId::E7a5, "000|100|3")).dim() == 20);
    CHECK(subspace_basis(a5, SubspaceParams::parse(CaseId::E7a5, "100|210|3")).dim() == 17);

    for (CaseId id : all_cases) {
        const auto& m = CaseModel::get(id);
        for (const auto& e : inventory(id)) {
            const auto& s = e.subspace;
            CHECK(s.dim() == m.g2_dim() - rank(condition_system(m, s.params)));
            const auto keep = support_oracle(m, s.params);
            CHECK(s.dim() == static_cast<Index>(keep.size()));
            for (Index i : keep) {
                Vector<Rational> ei = Vector<Rational>::Zero(m.g2_dim());
                ei(i) = 1;
                CHECK(s.space.contains(ei));
            }
        }
    }
}

TEST_CASE("Borel stability and nesting") {
    for (CaseId id : all_cases) {
        const auto& m = CaseModel::get(id);
        const auto& inv = inventory(id);
        for (const auto& e : inv) CHECK(is_borel_stable(m, e.subspace.space));
        // componentwise larger conditions give smaller subspaces
        for (const auto& x : inv) {
            for (const auto& y : inv) {
                const auto& p = x.subspace.params;
                const auto& r = y.subspace.params;
                bool le = p.l >= r.l && p.m >= r.m;
                for (std::size_t i = 0; i < p.k.size(); ++i) le = le && p.k[i] <= r.k[i] && p.h[i] <= r.h[i];
                if (le) CHECK(x.subspace.space.contains(y.subspace.space));
            }
        }
    }
}

TEST_CASE("parabolic types") {
    const auto& a4 = CaseModel::get(CaseId::E7a4);
    const auto g2 = subspace_basis(a4, SubspaceParams::parse(CaseId::E7a4, "00|00|2|3"));
    CHECK(g2.parabolic_type.size() == 4);
    CHECK(g2.levi_positive == 5);
    CHECK(subspace_basis(a4, SubspaceParams::parse(CaseId::E7a4, "00|10|2|3")).levi_positive == 1);
    const auto& a5 = CaseModel::get(CaseId::E7a5);
    CHECK(subspace_basis(a5, SubspaceParams::parse(CaseId::E7a5, "000|100|3")).levi_positive == 2);
    CHECK(levi_positive_roots(a5, {"B1", "B2", "C1"}) == 4);
    CHECK(levi_positive_roots(a5, {}) == 0);
}

TEST_CASE("open orbit membership") {
    for (CaseId id : all_cases) {
        const auto& m = CaseModel::get(id);
        CHECK(in_open_orbit(m, m.base_point<Rational>()));
        CHECK_FALSE(in_open_orbit(m, Vector<Rational>(Vector<Rational>::Zero(m.g2_dim()))));
    }
    const auto& a5 = CaseModel::get(CaseId::E7a5);
    Vector<Rational> pure_b = Vector<Rational>::Zero(21);
    pure_b(0) = 1, pure_b(1) = 2, pure_b(2) = 3;
    CHECK_FALSE(in_open_orbit(a5, pure_b));

    CHECK(entry(CaseId::E7a4, "00|00|2|3").nonempty);
    CHECK_FALSE(entry(CaseId::E7a4, "00|11|2|1").nonempty);
    CHECK_FALSE(entry(CaseId::E7a5, "000|300|1").nonempty);
}

TEST_CASE("expected dimensions") {
    CHECK(dimx(CaseId::E7a4, "00|00|2|3") == 5);
    CHECK(delta(CaseId::E7a4, "00|00|2|3") == 0);
    CHECK(dimx(CaseId::E7a4, "00|00|1|2") == 3);
    CHECK(delta(CaseId::E7a4, "00|00|1|2") == 1);
    CHECK(delta(CaseId::E7a4, "00|10|2|3") == 3);
    CHECK(dimx(CaseId::E7a5, "000|210|3") == 4);
    CHECK(delta(CaseId::E7a5, "000|210|3") == 4);
    CHECK(dimx(CaseId::E7a5, "100|220|1") == 0);
    CHECK(delta(CaseId::E7a5, "100|220|1") == 0);
    CHECK(delta(CaseId::E7a5, "000|100|3") == 4);
    const auto& e = entry(CaseId::E7a4, "00|11|2|1");
    CHECK_THROWS_AS(expected_dims(CaseModel::get(CaseId::E7a4), e.subspace, false), std::domain_error);
}

TEST_CASE("genericity bounds") {
    for (const auto& e : inventory(CaseId::E7a5)) {
        if (!e.nonempty) continue;
        const auto& p = e.subspace.params;
        CHECK(p.h[1] <= 2);
        CHECK(p.h[2] <= 1);
        CHECK(p.k[0] <= 2);
        CHECK(p.k[1] <= 1);
        CHECK(p.k[2] == 0);
    }
}

TEST_CASE("inventory csv") {
    const auto csv = inventory_csv(inventory(CaseId::E7a4));
    CHECK(csv.rfind("params,dim_u,dim_x,dim_y,parabolic_type,empty\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 601);
    CHECK(csv.find("\n00|00|2|3,17,5,0,A1 B1 C1 C2,no\n") != std::string::npos);
}
