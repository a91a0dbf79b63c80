#include "paving/gamma_graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace paving {

Span<Rational> u_double_prime(const CaseModel& model, const Span<Rational>& u, const std::string& alpha) {
    std::vector<const Matrix<Rational>*> ops;
    for (const auto& g : model.positive_generators()) ops.push_back(&g.op);
    ops.push_back(&model.negative_simple(alpha).op);

    Span<Rational> w = u;
    for (Index step = 0; step <= model.g2_dim(); ++step) {
        Span<Rational> next = w;
        for (const auto* op : ops) {
            next = restricted_preimage(*op, next, w);
            if (next.dim() == 0) break;
        }
        if (next.dim() == w.dim()) return w;
        w = std::move(next);
    }
    throw std::logic_error("u_double_prime: no fixed point within dim g2 steps");
}

std::optional<std::string> is_edge(const CaseModel& model, const Subspace& u, const Subspace& u2) {
    if (u2.dim() != u.dim() + 1) return std::nullopt;
    if (!u2.space.contains(u.space)) return std::nullopt;
    for (const auto& alpha : model.simple_root_labels()) {
        if (!u2.contains_root(alpha) || u.contains_root(alpha)) continue;
        if (u_double_prime(model, u.space, alpha).dim() == u.dim() - 1) return alpha;
    }
    return std::nullopt;
}

std::optional<std::size_t> GammaGraph::find(const SubspaceParams& p) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].params == p) return i;
    return std::nullopt;
}

std::optional<std::size_t> GammaGraph::component_of(std::size_t vertex) const {
    for (std::size_t c = 0; c < components.size(); ++c)
        if (std::binary_search(components[c].begin(), components[c].end(), vertex)) return c;
    return std::nullopt;
}

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t root(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) { parent[root(a)] = root(b); }
};

}  // namespace

GammaGraph build_graph(const std::vector<InventoryEntry>& inventory, int jobs) {
    if (inventory.empty()) throw std::invalid_argument("build_graph: empty inventory");
    GammaGraph g;
    g.id = inventory.front().subspace.params.id;
    const auto& model = CaseModel::get(g.id);
    const std::size_t n = inventory.size();
    for (const auto& e : inventory) g.vertices.push_back({e.subspace.params, e.subspace.dim(), e.nonempty, e.dims});

    // Each worker scans the hyperplanes U = i with i = w mod jobs.
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    std::vector<std::vector<GraphEdge>> found(workers);
    auto scan = [&](std::size_t w) {
        for (std::size_t i = w; i < n; i += workers)
            for (std::size_t j = 0; j < n; ++j)
                if (auto alpha = is_edge(model, inventory[i].subspace, inventory[j].subspace))
                    found[w].push_back({i, j, *alpha});
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    }
    for (auto& part : found) g.edges.insert(g.edges.end(), part.begin(), part.end());
    std::sort(g.edges.begin(), g.edges.end(),
              [](const GraphEdge& a, const GraphEdge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });

    DisjointSets sets(n);
    for (const auto& e : g.edges) {
        const bool a = g.vertices[e.from].nonempty, b = g.vertices[e.to].nonempty;
        if (a != b)
            ++g.mixed_edges;
        else if (a)
            sets.join(e.from, e.to);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i)
        if (g.vertices[i].nonempty) groups[sets.root(i)].push_back(i);
    for (auto& [root, members] : groups) g.components.push_back(std::move(members));

    auto top = [&](const std::vector<std::size_t>& c) {
        Index d = 0;
        for (auto v : c) d = std::max(d, g.vertices[v].dim_u);
        return d;
    };
    std::stable_sort(g.components.begin(), g.components.end(),
                     [&](const auto& a, const auto& b) { return top(a) > top(b) || (top(a) == top(b) && a.front() < b.front()); });
    return g;
}

GammaGraph build_graph(CaseId id, const OrbitSearch& opts, int jobs) {
    return build_graph(build_inventory(id, opts), jobs);
}

namespace {

std::string vertex_label(const GraphVertex& v) {
    std::string s = v.params.label();
    if (v.dims) s += " [" + std::to_string(v.dims->dim_x) + "," + std::to_string(v.dims->dim_y) + "]";
    return s;
}

}  // namespace

std::string graph_dot(const GammaGraph& g) {
    static const char* palette[] = {"lightblue", "lightsalmon", "palegreen", "khaki", "plum", "lightgrey"};
    std::ostringstream os;
    os << "graph gamma_" << to_string(g.id) << " {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t c = 0; c < g.components.size(); ++c) {
        os << "  subgraph cluster_" << c << " {\n    label=\"component " << c + 1 << "\";\n";
        for (auto v : g.components[c])
            os << "    v" << v << " [label=\"" << vertex_label(g.vertices[v]) << "\", style=filled, fillcolor="
               << palette[c % std::size(palette)] << "];\n";
        os << "  }\n";
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (!g.vertices[v].nonempty) os << "  v" << v << " [label=\"" << vertex_label(g.vertices[v]) << "\", style=dashed];\n";
    for (const auto& e : g.edges) os << "  v" << e.from << " -- v" << e.to << " [label=\"" << e.root << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string graph_json(const GammaGraph& g) {
    using nlohmann::json;
    json out;
    out["schema_version"] = 1;
    out["case"] = to_string(g.id);
    json vs = json::array();
    for (const auto& v : g.vertices) {
        json j{{"params", v.params.label()}, {"dim_u", v.dim_u}, {"nonempty", v.nonempty}};
        if (v.dims) {
            j["dim_x"] = v.dims->dim_x;
            j["dim_y"] = v.dims->dim_y;
        }
        vs.push_back(std::move(j));
    }
    out["vertices"] = std::move(vs);
    json es = json::array();
    for (const auto& e : g.edges)
        es.push_back({{"from", g.vertices[e.from].params.label()}, {"to", g.vertices[e.to].params.label()}, {"root", e.root}});
    out["edges"] = std::move(es);
    json cs = json::array();
    for (const auto& c : g.components) {
        json members = json::array();
        for (auto v : c) members.push_back(g.vertices[v].params.label());
        cs.push_back(std::move(members));
    }
    out["components"] = std::move(cs);
    out["mixed_edges"] = g.mixed_edges;
    return out.dump(2) + "\n";
}

}  // namespace paving
