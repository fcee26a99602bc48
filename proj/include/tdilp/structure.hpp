#pragma once

#include "tdilp/instance.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tdilp {

/// Simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int num_vertices() const { return static_cast<int>(adjacency_.size()); }
    std::size_t num_edges() const;

    /// Ignores loops and duplicates.
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    /// Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> edges() const;

    /// Connected components, each sorted, ordered by smallest vertex.
    std::vector<std::vector<int>> components() const;
    Graph induced(const std::vector<int>& vertices) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<int>> adjacency_;  // sorted
};

inline constexpr int kRoot = -1;

/// Rooted forest over the vertices of a graph; parent[v] == kRoot marks a root.
struct TreedepthDecomposition {
    std::vector<int> parent;

    int size() const { return static_cast<int>(parent.size()); }
    /// Number of vertices on the longest root-to-node path; 0 if empty.
    /// Throws std::invalid_argument if parent does not describe a forest.
    int height() const;
    bool is_forest() const;
    std::vector<std::vector<int>> children() const;
    std::vector<int> roots() const;
    /// Depth of every node (roots have depth 1).
    std::vector<int> depths() const;
    bool is_ancestor(int ancestor, int v) const;
    /// Vertices of the subtree rooted at v, in preorder.
    std::vector<int> subtree(int v) const;
    /// Path from the root down to v.
    std::vector<int> root_path(int v) const;

    friend bool operator==(const TreedepthDecomposition&, const TreedepthDecomposition&) = default;
};

/// Tree decomposition: `tree` is a parent array over bag nodes (exactly one
/// root when non-empty), `bags[t]` the vertex set of node t.
struct TreeDecompositionWitness {
    std::vector<int> tree;
    std::vector<std::vector<int>> bags;

    int width() const;
};

class VertexCapExceeded : public std::runtime_error {
public:
    VertexCapExceeded(int n, int cap);
};

inline constexpr int kDefaultExactCap = 25;

/// Vertex i corresponds to instance.variables()[i].
Graph build_primal_graph(const IlpInstance& instance);

/// Exact treedepth by memoized search over connected vertex subsets.
std::pair<int, TreedepthDecomposition> compute_treedepth_exact(const Graph& g,
                                                               int cap = kDefaultExactCap);

/// DFS forest, smallest unvisited vertex first, neighbors in ascending order.
TreedepthDecomposition dfs_treedepth_heuristic(const Graph& g);

/// Exact on every component of at most `component_cap` vertices, DFS otherwise.
TreedepthDecomposition decompose(const Graph& g, int component_cap = 20);

/// Throws std::invalid_argument if the node set does not match V(G).
bool verify_treedepth_decomposition(const Graph& g, const TreedepthDecomposition& t);

TreeDecompositionWitness treedepth_to_tree_decomposition(const TreedepthDecomposition& t);
bool verify_tree_decomposition(const Graph& g, const TreeDecompositionWitness& w);

/// Reads the `n` + `u v` (1-indexed) edge-list format.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

}  // namespace tdilp
