#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paving/schubert_cells.hpp"
#include "support.hpp"

#include <set>

using namespace paving;
using testing::residue;

namespace {

SubspaceParams P(CaseId id, const char* s) { return SubspaceParams::parse(id, s); }

std::uint64_t ipow(std::uint64_t q, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= q;
    return r;
}

// every F_q point of the chart, last variable fastest
template <class F>
void for_each_point(const CellChart& c, int q, F&& f) {
    std::vector<std::uint32_t> pt(static_cast<std::size_t>(c.dim()), 0);
    for (;;) {
        f(pt);
        int i = c.dim() - 1;
        while (i >= 0 && ++pt[static_cast<std::size_t>(i)] == static_cast<std::uint32_t>(q)) pt[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) return;
    }
}

std::vector<FqRow> rref(std::vector<FqRow> m, int q) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] % q == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        int inv = 1;
        while (inv * m[r][c] % q != 1) ++inv;
        for (auto& x : m[r]) x = residue(x * inv, q);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r) {
                const int f = m[i][c];
                for (std::size_t j = 0; j < cols; ++j) m[i][j] = residue(m[i][j] - f * m[r][j], q);
            }
        ++r;
    }
    m.resize(r);
    return m;
}

using FlagKey = std::vector<std::vector<FqRow>>;

// the flag as the list of reduced bases of its steps
FlagKey key(const FlagPoint& f, int q) {
    FlagKey k{rref({f.line_a}, q)};
    for (const auto* flag : {&f.flag_b, &f.flag_c})
        for (std::size_t i = 1; i < flag->size(); ++i) {
            const auto step = rref(std::vector<FqRow>(flag->begin(), flag->begin() + static_cast<std::ptrdiff_t>(i)), q);
            REQUIRE(step.size() == i);
            k.push_back(step);
        }
    return k;
}

std::uint64_t equation_count(CaseId id, const SubspaceParams& p, const CellChart& c, int q) {
    const auto eqs = cell_equations(id, p, c);
    std::uint64_t n = 0;
    for_each_point(c, q, [&](const std::vector<std::uint32_t>& pt) {
        for (const auto& e : eqs)
            if (e.eval_mod(pt, static_cast<std::uint32_t>(q)) != 0) return;
        ++n;
    });
    return n;
}

}  // namespace

TEST_CASE("cells cover the flag variety once") {
    CHECK(enumerate_cells(CaseId::E7a4).size() == 24);
    CHECK(enumerate_cells(CaseId::E7a5).size() == 72);
    for (CaseId id : all_cases) {
        int top = 0;
        for (const auto& c : enumerate_cells(id)) top = std::max(top, c.dim());
        CHECK(top == (id == CaseId::E7a4 ? 5 : 7));
        for (int q : {2, 3}) {
            std::set<FlagKey> seen;
            std::uint64_t points = 0;
            for (const auto& c : enumerate_cells(id)) {
                points += ipow(static_cast<std::uint64_t>(q), c.dim());
                for_each_point(c, q, [&](const std::vector<std::uint32_t>& pt) { seen.insert(key(c.instantiate(pt, q), q)); });
            }
            CHECK(points == flag_total(id, q));
            CHECK(seen.size() == flag_total(id, q));
            std::set<FlagKey> all;
            for (const auto& f : enumerate_flags(id, q)) all.insert(key(f, q));
            CHECK(all == seen);
        }
    }
}

TEST_CASE("equations in coordinates") {
    const auto id = CaseId::E7a4;
    const auto u = P(id, "00|10|2|3");
    auto eqs = [&](const char* a, const char* b, const char* t) {
        std::vector<std::string> out;
        for (const auto& e : cell_equations(id, u, find_cell(id, {a, b, t}))) out.push_back(e.to_string());
        return out;
    };
    CHECK(eqs("12", "21", "123") == std::vector<std::string>{"x + y2"});
    CHECK(eqs("12", "21", "213") == std::vector<std::string>{"1"});
    CHECK(eqs("12", "21", "312").empty());
    CHECK(eqs("21", "21", "123") == std::vector<std::string>{"lambda*x + lambda*y2 + x*y2 + y3"});
    CHECK(eqs("21", "21", "213") == std::vector<std::string>{"lambda + x + y3"});
    CHECK(eqs("21", "12", "123") == std::vector<std::string>{"lambda + y2"});
    CHECK(eqs("12", "12", "123") == std::vector<std::string>{"1"});
    CHECK(eqs("12", "12", "312").empty());

    // e2 in L_C^2 adds y3' = 0 on T_123
    const auto v = cell_equations(id, P(id, "00|10|2|2"), find_cell(id, {"21", "21", "123"}));
    REQUIRE(v.size() == 2);
    CHECK(v[1].to_string() == "-y3'");
}

TEST_CASE("cell counts against the equations") {
    for (int q : {2, 3})
        for (const char* s : {"00|10|2|3", "00|10|2|2", "10|21|2|2", "00|00|1|3", "10|10|2|1"})
            for (const auto& c : enumerate_cells(CaseId::E7a4))
                CHECK(count_cell_intersection(CaseId::E7a4, P(CaseId::E7a4, s), c.index, q) == equation_count(CaseId::E7a4, P(CaseId::E7a4, s), c, q));
    for (const char* s : {"100|200|2", "000|100|3", "210|210|3", "110|110|3"})
        for (const auto& c : enumerate_cells(CaseId::E7a5))
            CHECK(count_cell_intersection(CaseId::E7a5, P(CaseId::E7a5, s), c.index, 3) == equation_count(CaseId::E7a5, P(CaseId::E7a5, s), c, 3));
}

TEST_CASE("the whole space meets each cell in the cell") {
    for (CaseId id : all_cases) {
        const auto top = id == CaseId::E7a4 ? P(id, "00|00|2|3") : P(id, "000|000|3");
        for (const auto& c : enumerate_cells(id)) {
            CHECK(count_cell_intersection(id, top, c.index, 5) == ipow(5, c.dim()));
            CHECK(cell_equations(id, top, c).empty());
        }
    }
}

TEST_CASE("the dim Y = 3 cases are paved") {
    const std::vector<int> primes{2, 3, 5, 7};
    const auto id = CaseId::E7a4;
    for (const char* s : {"00|10|2|3", "00|10|2|2"}) {
        const auto reports = check_affine_paving(id, P(id, s), primes);
        CHECK(reports.size() == 24);
        for (const auto& r : reports) {
            CHECK(r.cls != CellClass::NotAffine);
            CHECK_FALSE(r.witness);
            CHECK(r.elimination.outcome != Elimination::Outcome::Unresolved);
            if (r.cls == CellClass::Empty) CHECK(r.elimination.outcome == Elimination::Outcome::Empty);
            if (r.cls == CellClass::Affine) {
                CHECK(r.elimination.outcome == Elimination::Outcome::Affine);
                CHECK(r.elimination.dim == r.affine_dim);
                for (auto [q, n] : r.counts) CHECK(n == ipow(static_cast<std::uint64_t>(q), r.affine_dim));
            }
        }
    }
    // e2 in L_C^2 fails on T_132 and T_312
    for (const auto& r : check_affine_paving(id, P(id, "00|10|2|2"), primes))
        if (r.index.t == "132" || r.index.t == "312") CHECK(r.cls == CellClass::Empty);
}

TEST_CASE("blow-up counts") {
    for (std::uint64_t q : {2, 3, 5}) {
        CHECK(blowup_count(2, 0, q) == q * q + q);
        for (int n = 1; n <= 4; ++n)
            for (int m = 0; m < n; ++m) {
                // the tautological line bundle over A^m x P^{n-m-1}
                std::uint64_t proj = 0;
                for (int i = 0; i < n - m; ++i) proj += ipow(q, i);
                CHECK(blowup_count(n, m, q) == ipow(q, m + 1) * proj);
            }
    }
    CHECK_THROWS_AS(blowup_count(2, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(blowup_count(2, -1, 3), std::invalid_argument);
}

TEST_CASE("the blow-up case") {
    const std::vector<int> primes{2, 3, 5};
    const auto rep = verify_blowup_case(primes);
    CHECK(rep.params.label() == "100|200|2");
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].x == 63);
    CHECK(rep.rows[0].z == 57);
    CHECK(rep.rows[0].l == 3);
    for (const auto& row : rep.rows) {
        const auto q = static_cast<std::uint64_t>(row.q);
        CHECK(row.x == row.z + q * row.l);
        CHECK(row.x == count_points(CaseId::E7a5, rep.params, row.q).count);
        CHECK(row.cell_a12_t132 == q * q + q);
        CHECK(row.cell_a21_t123 == q * q * q + q * q);
        CHECK(row.cell_a21_t132 == 0);
        CHECK(row.cell_a21_s231_t123 == q * q);
    }
    CHECK(rep.cells_match);
    CHECK_FALSE(rep.not_affine_witness);

    const auto el = symbolic_eliminate(CaseId::E7a5, rep.params, find_cell(CaseId::E7a5, {"21", "231", "123"}));
    CHECK(el.outcome == Elimination::Outcome::Affine);
    CHECK(el.dim == 2);
}
