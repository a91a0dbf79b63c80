#pragma once

#include "paving/subspace.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace paving {

/// Largest subspace of u stable under every positive generator and f_alpha.
/// Throws std::logic_error if the iteration does not settle within dim g2 steps.
Span<Rational> u_double_prime(const CaseModel& model, const Span<Rational>& u, const std::string& alpha);

/// Witness root for the edge u -> u2 of Gamma, first in simple-root order.
std::optional<std::string> is_edge(const CaseModel& model, const Subspace& u, const Subspace& u2);

struct GraphVertex {
    SubspaceParams params;
    Index dim_u = 0;
    bool nonempty = false;
    std::optional<ExpectedDims> dims;
};

struct GraphEdge {
    std::size_t from = 0;  ///< the hyperplane U
    std::size_t to = 0;    ///< U'
    std::string root;
};

struct GammaGraph {
    CaseId id = CaseId::E7a4;
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;
    /// Components of Gamma*, by descending max dim U, each sorted by vertex index.
    std::vector<std::vector<std::size_t>> components;
    /// Edges joining an empty and a nonempty vertex. Zero when Gamma* is a
    /// union of components of Gamma.
    std::size_t mixed_edges = 0;

    std::optional<std::size_t> find(const SubspaceParams& p) const;
    /// Component index of a nonempty vertex, none for empty vertices.
    std::optional<std::size_t> component_of(std::size_t vertex) const;
};

/// Gamma over the whole inventory. Edge tests are spread over `jobs` threads;
/// the result does not depend on the thread count.
GammaGraph build_graph(const std::vector<InventoryEntry>& inventory, int jobs = 1);
GammaGraph build_graph(CaseId id, const OrbitSearch& opts = {}, int jobs = 1);

/// Graphviz source: one cluster per component, empty vertices dashed.
std::string graph_dot(const GammaGraph& g);
/// JSON text with schema_version, vertices, edges and components.
std::string graph_json(const GammaGraph& g);

}  // namespace paving
