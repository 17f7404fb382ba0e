#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace linerec {

/// Undirected edge, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;
    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
    int other(int w) const { return w == u ? v : u; }
};

/// Finite simple graph on dense vertex indices 0..n-1.
class Graph {
public:
    Graph() = default;
    Graph(int vertex_count, std::vector<Edge> edges)
        : n_(vertex_count), edges_(std::move(edges)) {
        if (n_ < 0) throw std::invalid_argument("negative vertex count");
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            if (e.u < 0 || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
            if (e.u == e.v) throw std::invalid_argument("self-loop in simple graph");
            if (i > 0 && edges_[i] == edges_[i - 1])
                throw std::invalid_argument("duplicate edge in simple graph");
        }
        adj_.assign(n_, {});
        for (int i = 0; i < edge_count(); ++i) {
            adj_[edges_[i].u].push_back(i);
            adj_[edges_[i].v].push_back(i);
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_[i]; }

    /// Indices into edges() of the edges incident to v.
    const std::vector<int>& incident(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(int a, int b) const { return edge_index(a, b) >= 0; }

    /// Index of edge {a,b}, or -1 if absent.
    int edge_index(int a, int b) const {
        Edge e(a, b);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it != edges_.end() && *it == e) return static_cast<int>(it - edges_.begin());
        return -1;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

/// Multigraph: loops and parallel edges allowed. Used only where the model
/// requires them (kernel contraction, configuration pairing).
class MultiGraph {
public:
    MultiGraph() = default;
    MultiGraph(int vertex_count, std::vector<std::pair<int, int>> edges)
        : n_(vertex_count), edges_(std::move(edges)) {
        for (auto& [a, b] : edges_) {
            if (a < 0 || a >= n_ || b < 0 || b >= n_)
                throw std::invalid_argument("multigraph endpoint out of range");
            if (a > b) std::swap(a, b);
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int degree(int v) const {
        int d = 0;
        for (const auto& [a, b] : edges_) {
            if (a == v) ++d;
            if (b == v) ++d;  // a loop contributes 2
        }
        return d;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

/// Component id per vertex; ids are assigned in order of the smallest vertex
/// index of each component.
inline std::vector<int> component_ids(const Graph& g) {
    std::vector<int> id(g.vertex_count(), -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (id[s] >= 0) continue;
        id[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int ei : g.incident(v)) {
                int w = g.edge(ei).other(v);
                if (id[w] < 0) {
                    id[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return id;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<int> id = component_ids(g);
    int count = id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
    std::vector<std::vector<int>> comps(count);
    for (int v = 0; v < g.vertex_count(); ++v) comps[id[v]].push_back(v);
    return comps;
}

inline int component_count(const Graph& g) {
    std::vector<int> id = component_ids(g);
    return id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
}

inline bool is_connected(const Graph& g) { return component_count(g) <= 1; }

/// Edge indices of a BFS spanning forest, plus parent structure.
struct SpanningForest {
    std::vector<int> parent;       // parent vertex, -1 at roots
    std::vector<int> parent_edge;  // edge index to parent, -1 at roots
    std::vector<int> order;        // vertices in BFS discovery order
    std::vector<int> tree_edges;   // edge indices in the forest
};

inline SpanningForest spanning_forest(const Graph& g) {
    SpanningForest f;
    f.parent.assign(g.vertex_count(), -2);
    f.parent_edge.assign(g.vertex_count(), -1);
    std::vector<int> queue;
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (f.parent[s] != -2) continue;
        f.parent[s] = -1;
        queue.clear();
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            f.order.push_back(v);
            for (int ei : g.incident(v)) {
                int w = g.edge(ei).other(v);
                if (f.parent[w] == -2) {
                    f.parent[w] = v;
                    f.parent_edge[w] = ei;
                    f.tree_edges.push_back(ei);
                    queue.push_back(w);
                }
            }
        }
    }
    return f;
}

/// Fundamental cycle basis from a spanning forest: one vertex cycle per
/// non-tree edge (closed walk x_1..x_r with x_1 adjacent to x_r).
/// Basis size is |E| - |V| + #components.
inline std::vector<std::vector<int>> cycle_basis(const Graph& g) {
    SpanningForest f = spanning_forest(g);
    std::vector<bool> in_tree(g.edge_count(), false);
    for (int ei : f.tree_edges) in_tree[ei] = true;
    std::vector<int> depth(g.vertex_count(), 0);
    for (int v : f.order)
        if (f.parent[v] >= 0) depth[v] = depth[f.parent[v]] + 1;

    std::vector<std::vector<int>> basis;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        if (in_tree[ei]) continue;
        int a = g.edge(ei).u, b = g.edge(ei).v;
        std::vector<int> up_a{a}, up_b{b};
        while (depth[a] > depth[b]) up_a.push_back(a = f.parent[a]);
        while (depth[b] > depth[a]) up_b.push_back(b = f.parent[b]);
        while (a != b) {
            up_a.push_back(a = f.parent[a]);
            up_b.push_back(b = f.parent[b]);
        }
        // up_a ends at the meet point; append the b-side reversed, dropping
        // the duplicated meet vertex.
        std::vector<int> cycle = up_a;
        for (auto it = up_b.rbegin() + 1; it != up_b.rend(); ++it) cycle.push_back(*it);
        basis.push_back(std::move(cycle));
    }
    return basis;
}

/// Induced subgraph on `vertices` (order defines the new indices).
/// Fills old index -> new index into `index_map` when given.
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices,
                              std::vector<int>* index_map = nullptr) {
    std::vector<int> local(g.vertex_count(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (local[e.u] >= 0 && local[e.v] >= 0) edges.emplace_back(local[e.u], local[e.v]);
    if (index_map) *index_map = local;
    return Graph(static_cast<int>(vertices.size()), std::move(edges));
}

/// Biconnected components (blocks). Every edge lies in exactly one block; a
/// block is either a single bridge edge or a maximal 2-connected subgraph.
/// Cut vertices are exactly the vertices lying in two or more blocks.
struct BlockDecomposition {
    std::vector<std::vector<int>> block_vertices;  // sorted
    std::vector<std::vector<int>> block_edges;     // edge indices
    std::vector<char> is_cut;
};

inline BlockDecomposition biconnected_components(const Graph& g) {
    const int n = g.vertex_count();
    BlockDecomposition bd;
    bd.is_cut.assign(n, 0);
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> estack;
    std::vector<int> sv, spe, sit;
    int timer = 0;
    for (int s = 0; s < n; ++s) {
        if (disc[s] >= 0) continue;
        sv.assign(1, s);
        spe.assign(1, -1);
        sit.assign(1, 0);
        disc[s] = low[s] = timer++;
        while (!sv.empty()) {
            int v = sv.back();
            if (sit.back() < static_cast<int>(g.incident(v).size())) {
                int ei = g.incident(v)[sit.back()++];
                if (ei == spe.back()) continue;
                int w = g.edge(ei).other(v);
                if (disc[w] < 0) {
                    estack.push_back(ei);
                    disc[w] = low[w] = timer++;
                    sv.push_back(w);
                    spe.push_back(ei);
                    sit.push_back(0);
                } else if (disc[w] < disc[v]) {
                    estack.push_back(ei);
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                int pe = spe.back();
                sv.pop_back();
                spe.pop_back();
                sit.pop_back();
                if (!sv.empty()) {
                    int p = sv.back();
                    low[p] = std::min(low[p], low[v]);
                    if (low[v] >= disc[p]) {
                        std::vector<int> edges;
                        while (!estack.empty()) {
                            int e = estack.back();
                            estack.pop_back();
                            edges.push_back(e);
                            if (e == pe) break;
                        }
                        std::vector<int> vs;
                        for (int e : edges) {
                            vs.push_back(g.edge(e).u);
                            vs.push_back(g.edge(e).v);
                        }
                        std::sort(vs.begin(), vs.end());
                        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
                        bd.block_edges.push_back(std::move(edges));
                        bd.block_vertices.push_back(std::move(vs));
                    }
                }
            }
        }
    }
    std::vector<int> block_count(n, 0);
    for (const auto& vs : bd.block_vertices)
        for (int v : vs) ++block_count[v];
    for (int v = 0; v < n; ++v) bd.is_cut[v] = block_count[v] >= 2;
    return bd;
}

/// Length of a shortest cycle, or -1 for a forest. BFS from every vertex.
inline int girth(const Graph& g) {
    int best = -1;
    std::vector<int> dist(g.vertex_count());
    std::vector<int> par(g.vertex_count());
    for (int s = 0; s < g.vertex_count(); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(par.begin(), par.end(), -1);
        dist[s] = 0;
        std::vector<int> queue{s};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (int ei : g.incident(v)) {
                int w = g.edge(ei).other(v);
                if (w == par[v]) continue;  // the unique tree edge back
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    par[w] = v;
                    queue.push_back(w);
                } else {
                    int len = dist[v] + dist[w] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    return best;
}

inline int min_degree(const Graph& g) {
    int d = g.vertex_count() == 0 ? 0 : g.degree(0);
    for (int v = 1; v < g.vertex_count(); ++v) d = std::min(d, g.degree(v));
    return d;
}

inline int max_degree(const Graph& g) {
    int d = 0;
    for (int v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
    return d;
}

}  // namespace linerec
