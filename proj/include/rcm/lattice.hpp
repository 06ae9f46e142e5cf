#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace rcm {

using Coord = std::vector<int>;

struct Edge {
    int32_t a = -1;  // vertex ids, a < b
    int32_t b = -1;
};

enum class Bc { Free, MaxWired };

std::string to_string(Bc bc);
Bc bc_from_string(const std::string& s);

/// Finite subgraph of the hypercubic lattice Z^d together with its vertex
/// boundary and boundary edges. Vertex ids: interior vertices come first
/// (sorted lexicographically by coordinates), boundary vertices after.
/// Edge ids: interior edges first, boundary edges after, each block sorted
/// by (a,b). Immutable after construction.
class Graph {
  public:
    static Graph box(int d, int radius, const Coord& center);
    static Graph box(int d, int radius);
    static Graph from_vertices(int d, std::vector<Coord> vertices);

    int dim() const { return d_; }
    int32_t n_interior() const { return n_interior_; }
    int32_t n_total() const { return static_cast<int32_t>(coords_.size() / d_); }
    int32_t n_boundary() const { return n_total() - n_interior_; }
    bool is_interior(int32_t v) const { return v < n_interior_; }

    int32_t n_interior_edges() const { return n_interior_edges_; }
    int32_t n_total_edges() const { return static_cast<int32_t>(edges_.size()); }
    int32_t n_boundary_edges() const { return n_total_edges() - n_interior_edges_; }
    bool is_interior_edge(int32_t e) const { return e < n_interior_edges_; }
    const Edge& edge(int32_t e) const { return edges_[e]; }
    std::span<const Edge> edges() const { return edges_; }

    Coord coords(int32_t v) const;
    /// id of the vertex with these coordinates, -1 if not in V u dV
    int32_t find_vertex(const Coord& c) const;

    struct Half {
        int32_t nbr;
        int32_t edge;
    };
    std::span<const Half> neighbors(int32_t v) const;

    int64_t dist2(int32_t a, int32_t b) const;  // squared Euclidean
    int l1_dist(int32_t a, int32_t b) const;

    /// Annulus surrogate for the Euclidean sphere of radius n around center:
    /// {y in V u dV : n-1 < |y-center|_2 <= n}. May be empty.
    std::vector<int32_t> euclidean_shell(int32_t center, double n) const;

  private:
    Graph() = default;
    void build(int d, std::vector<Coord> vertices);

    int d_ = 0;
    int32_t n_interior_ = 0;
    int32_t n_interior_edges_ = 0;
    std::vector<int> coords_;  // flat, stride d_
    std::vector<Edge> edges_;
    std::vector<Half> adj_;
    std::vector<int32_t> adj_start_;  // size n_total()+1
    std::map<Coord, int32_t> index_;
};

/// Edge configuration over E u dE. bits[e] is 1 iff edge e is open.
struct Configuration {
    std::vector<uint8_t> bits;

    bool open(int32_t e) const { return bits[e] != 0; }
    int64_t open_count() const;
};

/// Build a configuration from a bitmask over the interior edges; boundary
/// edges are pinned by the boundary condition (free: closed, max-wired: open).
Configuration make_configuration(const Graph& g, uint64_t interior_mask, Bc bc);

bool admissible(const Graph& g, const Configuration& w, Bc bc);

struct Cluster {
    std::vector<int32_t> vertices;  // ascending
    bool touches_boundary = false;
};

/// Partition of V u dV into the connected components of the open subgraph,
/// isolated vertices as singletons. Cluster ids are assigned in order of the
/// smallest vertex id they contain.
struct ClusterPartition {
    std::vector<int32_t> comp;  // per vertex cluster id
    std::vector<Cluster> clusters;
};

class UnionFind {
  public:
    explicit UnionFind(int32_t n) { reset(n); }
    void reset(int32_t n);
    int32_t find(int32_t v);
    /// union by size; equal sizes keep the smaller root
    void unite(int32_t a, int32_t b);
    int32_t n_sets() const { return n_sets_; }

  private:
    std::vector<int32_t> parent_;
    std::vector<int32_t> size_;
    int32_t n_sets_ = 0;
};

ClusterPartition clusters(const Graph& g, const Configuration& w);
bool connected(const Graph& g, const Configuration& w, int32_t x, int32_t y);

}  // namespace rcm
