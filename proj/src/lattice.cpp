#include "rcm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rcm {

std::string to_string(Bc bc) { return bc == Bc::Free ? "free" : "maxwired"; }

Bc bc_from_string(const std::string& s) {
    if (s == "free") return Bc::Free;
    if (s == "maxwired" || s == "max-wired" || s == "wired") return Bc::MaxWired;
    throw std::invalid_argument("unknown boundary condition: " + s);
}

Graph Graph::box(int d, int radius, const Coord& center) {
    if (d < 2) throw std::invalid_argument("box dimension must be >= 2");
    if (radius < 0) throw std::invalid_argument("box radius must be >= 0");
    if (static_cast<int>(center.size()) != d)
        throw std::invalid_argument("center has wrong dimension");

    std::vector<Coord> verts;
    Coord c(d);
    for (int i = 0; i < d; ++i) c[i] = center[i] - radius;
    const int side = 2 * radius + 1;
    int64_t total = 1;
    for (int i = 0; i < d; ++i) total *= side;
    verts.reserve(total);
    while (true) {
        verts.push_back(c);
        int i = d - 1;
        while (i >= 0 && c[i] == center[i] + radius) {
            c[i] = center[i] - radius;
            --i;
        }
        if (i < 0) break;
        ++c[i];
    }
    Graph g;
    g.build(d, std::move(verts));
    return g;
}

Graph Graph::box(int d, int radius) { return box(d, radius, Coord(d, 0)); }

Graph Graph::from_vertices(int d, std::vector<Coord> vertices) {
    if (d < 2) throw std::invalid_argument("graph dimension must be >= 2");
    for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != d)
            throw std::invalid_argument("vertex has wrong dimension");
    Graph g;
    g.build(d, std::move(vertices));
    return g;
}

void Graph::build(int d, std::vector<Coord> vertices) {
    d_ = d;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.empty()) throw std::invalid_argument("graph has no vertices");

    n_interior_ = static_cast<int32_t>(vertices.size());
    for (int32_t i = 0; i < n_interior_; ++i) index_[vertices[i]] = i;

    // boundary vertices: lattice neighbors of V outside V
    std::vector<Coord> bverts;
    for (const auto& v : vertices) {
        Coord u = v;
        for (int i = 0; i < d_; ++i) {
            for (int s : {-1, +1}) {
                u[i] = v[i] + s;
                if (!index_.count(u)) bverts.push_back(u);
                u[i] = v[i];
            }
        }
    }
    std::sort(bverts.begin(), bverts.end());
    bverts.erase(std::unique(bverts.begin(), bverts.end()), bverts.end());
    for (const auto& v : bverts) index_[v] = static_cast<int32_t>(index_.size());

    coords_.reserve((vertices.size() + bverts.size()) * d_);
    for (const auto& v : vertices) coords_.insert(coords_.end(), v.begin(), v.end());
    for (const auto& v : bverts) coords_.insert(coords_.end(), v.begin(), v.end());

    std::vector<Edge> interior, boundary;
    for (int32_t a = 0; a < n_interior_; ++a) {
        Coord u = vertices[a];
        for (int i = 0; i < d_; ++i) {
            for (int s : {-1, +1}) {
                u[i] += s;
                auto it = index_.find(u);
                u[i] -= s;
                if (it == index_.end()) continue;
                int32_t b = it->second;
                if (b < n_interior_) {
                    if (a < b) interior.push_back({a, b});
                } else {
                    boundary.push_back({a, b});
                }
            }
        }
    }
    auto by_pair = [](const Edge& x, const Edge& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    };
    std::sort(interior.begin(), interior.end(), by_pair);
    std::sort(boundary.begin(), boundary.end(), by_pair);
    n_interior_edges_ = static_cast<int32_t>(interior.size());
    edges_ = std::move(interior);
    edges_.insert(edges_.end(), boundary.begin(), boundary.end());

    const int32_t n = n_total();
    std::vector<int32_t> deg(n, 0);
    for (const auto& e : edges_) {
        ++deg[e.a];
        ++deg[e.b];
    }
    adj_start_.assign(n + 1, 0);
    for (int32_t v = 0; v < n; ++v) adj_start_[v + 1] = adj_start_[v] + deg[v];
    adj_.resize(adj_start_[n]);
    std::vector<int32_t> fill(adj_start_.begin(), adj_start_.end() - 1);
    for (int32_t e = 0; e < n_total_edges(); ++e) {
        adj_[fill[edges_[e].a]++] = {edges_[e].b, e};
        adj_[fill[edges_[e].b]++] = {edges_[e].a, e};
    }
}

Coord Graph::coords(int32_t v) const {
    return Coord(coords_.begin() + static_cast<size_t>(v) * d_,
                 coords_.begin() + static_cast<size_t>(v + 1) * d_);
}

int32_t Graph::find_vertex(const Coord& c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
}

std::span<const Graph::Half> Graph::neighbors(int32_t v) const {
    return {adj_.data() + adj_start_[v],
            static_cast<size_t>(adj_start_[v + 1] - adj_start_[v])};
}

int64_t Graph::dist2(int32_t a, int32_t b) const {
    int64_t s = 0;
    for (int i = 0; i < d_; ++i) {
        int64_t dx = coords_[static_cast<size_t>(a) * d_ + i] -
                     coords_[static_cast<size_t>(b) * d_ + i];
        s += dx * dx;
    }
    return s;
}

int Graph::l1_dist(int32_t a, int32_t b) const {
    int s = 0;
    for (int i = 0; i < d_; ++i)
        s += std::abs(coords_[static_cast<size_t>(a) * d_ + i] -
                      coords_[static_cast<size_t>(b) * d_ + i]);
    return s;
}

std::vector<int32_t> Graph::euclidean_shell(int32_t center, double n) const {
    if (center < 0 || center >= n_interior_)
        throw std::invalid_argument("shell center must be an interior vertex");
    std::vector<int32_t> out;
    const double lo = n - 1.0, hi = n;
    for (int32_t v = 0; v < n_total(); ++v) {
        double r = std::sqrt(static_cast<double>(dist2(center, v)));
        if (r > lo && r <= hi) out.push_back(v);
    }
    return out;
}

int64_t Configuration::open_count() const {
    return std::count(bits.begin(), bits.end(), uint8_t{1});
}

Configuration make_configuration(const Graph& g, uint64_t interior_mask, Bc bc) {
    if (g.n_interior_edges() < 64 && interior_mask >> g.n_interior_edges())
        throw std::invalid_argument("interior mask has bits beyond |E|");
    Configuration w;
    w.bits.assign(g.n_total_edges(), 0);
    for (int32_t e = 0; e < g.n_interior_edges(); ++e)
        w.bits[e] = (interior_mask >> e) & 1u;
    const uint8_t pin = bc == Bc::MaxWired ? 1 : 0;
    for (int32_t e = g.n_interior_edges(); e < g.n_total_edges(); ++e) w.bits[e] = pin;
    return w;
}

bool admissible(const Graph& g, const Configuration& w, Bc bc) {
    if (static_cast<int32_t>(w.bits.size()) != g.n_total_edges()) return false;
    const uint8_t pin = bc == Bc::MaxWired ? 1 : 0;
    for (int32_t e = g.n_interior_edges(); e < g.n_total_edges(); ++e)
        if (w.bits[e] != pin) return false;
    return true;
}

void UnionFind::reset(int32_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(n, 1);
    n_sets_ = n;
}

int32_t UnionFind::find(int32_t v) {
    int32_t root = v;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[v] != root) {
        int32_t next = parent_[v];
        parent_[v] = root;
        v = next;
    }
    return root;
}

void UnionFind::unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    if (size_[a] == size_[b] && b < a) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --n_sets_;
}

ClusterPartition clusters(const Graph& g, const Configuration& w) {
    if (static_cast<int32_t>(w.bits.size()) != g.n_total_edges())
        throw std::invalid_argument("configuration size does not match graph");
    const int32_t n = g.n_total();
    UnionFind uf(n);
    for (int32_t e = 0; e < g.n_total_edges(); ++e)
        if (w.bits[e]) uf.unite(g.edge(e).a, g.edge(e).b);

    ClusterPartition part;
    part.comp.assign(n, -1);
    std::vector<int32_t> root_to_id(n, -1);
    for (int32_t v = 0; v < n; ++v) {
        int32_t r = uf.find(v);
        if (root_to_id[r] < 0) {
            root_to_id[r] = static_cast<int32_t>(part.clusters.size());
            part.clusters.emplace_back();
        }
        int32_t id = root_to_id[r];
        part.comp[v] = id;
        part.clusters[id].vertices.push_back(v);
        if (!g.is_interior(v)) part.clusters[id].touches_boundary = true;
    }
    return part;
}

bool connected(const Graph& g, const Configuration& w, int32_t x, int32_t y) {
    if (x == y) return true;
    auto part = clusters(g, w);
    return part.comp[x] == part.comp[y];
}

}  // namespace rcm
