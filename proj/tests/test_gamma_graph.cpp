#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paving/flag_counting.hpp"
#include "paving/gamma_graph.hpp"
#include "support.hpp"

#include <algorithm>
#include <set>

using namespace paving;
using testing::entry;
using testing::inventory;

namespace {

const GammaGraph& graph(CaseId id) {
    static std::map<CaseId, GammaGraph> cache;
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, build_graph(inventory(id))).first;
    return it->second;
}

std::set<std::string> component_labels(const GammaGraph& g, std::size_t c) {
    std::set<std::string> out;
    for (auto v : g.components[c]) out.insert(g.vertices[v].params.label());
    return out;
}

// Every generator sends a coordinate vector to a multiple of another one, so
// U'' of a coordinate subspace is cut out by discarding coordinates.
std::size_t support_fixed_point(const CaseModel& m, const Span<Rational>& u, const std::string& alpha) {
    std::set<Index> keep;
    for (Index i = 0; i < m.g2_dim(); ++i) {
        Vector<Rational> e = Vector<Rational>::Zero(m.g2_dim());
        e(i) = 1;
        if (u.contains(e)) keep.insert(i);
    }
    std::vector<const Matrix<Rational>*> ops;
    for (const auto& g : m.positive_generators()) ops.push_back(&g.op);
    ops.push_back(&m.negative_simple(alpha).op);
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = keep.begin(); it != keep.end();) {
            bool ok = true;
            for (const auto* op : ops)
                for (Index r = 0; r < op->rows(); ++r)
                    if (!is_zero((*op)(r, *it)) && !keep.count(r)) ok = false;
            if (ok) {
                ++it;
            } else {
                it = keep.erase(it);
                changed = true;
            }
        }
    }
    return keep.size();
}

}  // namespace

TEST_CASE("u double prime") {
    const auto& m = CaseModel::get(CaseId::E7a4);
    const auto& top = entry(CaseId::E7a4, "00|00|2|3").subspace;
    for (const auto& alpha : m.simple_root_labels()) CHECK(u_double_prime(m, top.space, alpha).dim() == top.dim());

    // f_alpha U in U: the iteration stops at once
    const auto& u = entry(CaseId::E7a4, "00|10|2|3").subspace;
    for (const auto& alpha : u.parabolic_type) CHECK(u_double_prime(m, u.space, alpha).dim() == u.dim());

    for (CaseId id : all_cases) {
        const auto& mm = CaseModel::get(id);
        for (const auto& e : inventory(id))
            for (const auto& alpha : mm.simple_root_labels())
                CHECK(static_cast<std::size_t>(u_double_prime(mm, e.subspace.space, alpha).dim()) ==
                      support_fixed_point(mm, e.subspace.space, alpha));
    }
}

TEST_CASE("edges") {
    const auto& m = CaseModel::get(CaseId::E7a4);
    const auto& u = entry(CaseId::E7a4, "00|10|2|3").subspace;
    const auto& top = entry(CaseId::E7a4, "00|00|2|3").subspace;
    CHECK_FALSE(is_edge(m, u, u));
    CHECK_FALSE(is_edge(m, entry(CaseId::E7a4, "00|20|2|3").subspace, top));

    // adjacent rows 0010 and 0000 of the first component
    const auto alpha = is_edge(m, u, top);
    REQUIRE(alpha);
    CHECK(u_double_prime(m, u.space, *alpha).dim() == u.dim() - 1);
    CHECK(std::find(top.parabolic_type.begin(), top.parabolic_type.end(), *alpha) != top.parabolic_type.end());
    CHECK(std::find(u.parabolic_type.begin(), u.parabolic_type.end(), *alpha) == u.parabolic_type.end());

    for (const auto& e : graph(CaseId::E7a4).edges) {
        const auto& g = graph(CaseId::E7a4);
        CHECK(g.vertices[e.to].dim_u == g.vertices[e.from].dim_u + 1);
    }
}

TEST_CASE("E7a4 components") {
    const auto& g = graph(CaseId::E7a4);
    CHECK(g.vertices.size() == 600);
    CHECK(g.mixed_edges == 0);
    REQUIRE(g.components.size() == 2);
    CHECK(g.components[0].size() == 40);
    CHECK(component_labels(g, 1) == std::set<std::string>{"10|21|2|2"});
    CHECK(component_labels(g, 0).count("00|00|2|3") == 1);
    CHECK(component_labels(g, 0).count("10|21|2|3") == 1);
}

TEST_CASE("E7a5 components") {
    const auto& g = graph(CaseId::E7a5);
    CHECK(g.mixed_edges == 0);
    REQUIRE(g.components.size() == 3);
    CHECK(g.components[0].size() == 27);
    CHECK(g.components[1].size() == 49);
    CHECK(g.components[2].size() == 11);
    CHECK(component_labels(g, 0).count("100|210|1") == 1);
    CHECK(component_labels(g, 1).count("000|111|3") == 1);
    CHECK(component_labels(g, 1).count("110|110|3") == 1);
    CHECK(component_labels(g, 2).count("210|210|3") == 1);
    const auto v = g.find(SubspaceParams::parse(CaseId::E7a5, "210|210|3"));
    REQUIRE(v);
    CHECK(g.vertices[*v].dims->dim_x == 1);
    CHECK(g.vertices[*v].dims->dim_y == 0);
    CHECK(g.component_of(*v) == std::optional<std::size_t>{2});
}

TEST_CASE("parallel build matches") {
    const auto g = build_graph(inventory(CaseId::E7a4), 3);
    const auto& h = graph(CaseId::E7a4);
    REQUIRE(g.edges.size() == h.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        CHECK(g.edges[i].from == h.edges[i].from);
        CHECK(g.edges[i].to == h.edges[i].to);
        CHECK(g.edges[i].root == h.edges[i].root);
    }
    CHECK(g.components == h.components);
}

TEST_CASE("edge invariants on E7a4") {
    const auto& g = graph(CaseId::E7a4);
    std::map<std::size_t, PoincarePolynomial> poly;
    auto get = [&](std::size_t v) -> const PoincarePolynomial& {
        auto it = poly.find(v);
        if (it == poly.end())
            it = poly.emplace(v, poincare(CaseId::E7a4, g.vertices[v].params)).first;
        return it->second;
    };
    int checked = 0;
    for (const auto& e : g.edges) {
        if (!g.vertices[e.from].nonempty) continue;
        const auto& a = get(e.from);
        const auto& b = get(e.to);
        CHECK(b.degree() == a.degree() + 1);
        CHECK(b.constant_term() == a.constant_term());
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("exports") {
    const auto& g = graph(CaseId::E7a4);
    const auto dot = graph_dot(g);
    CHECK(dot.rfind("graph gamma_E7a4 {", 0) == 0);
    CHECK(dot.find("subgraph cluster_1") != std::string::npos);
    CHECK(dot.find("subgraph cluster_2") == std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
    CHECK(dot.find("10|21|2|2 [0,0]") != std::string::npos);
    const auto js = graph_json(g);
    CHECK(js.find("\"schema_version\": 1") != std::string::npos);
    CHECK(js.find("\"mixed_edges\": 0") != std::string::npos);
}
