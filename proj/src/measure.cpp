#include "rcm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rcm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// Workspace for repeated cluster-weight evaluation over many configurations.
struct ClusterAccumulator {
    int q = 0;
    std::vector<double> sums;  // per cluster, q color sums
    std::vector<double> smax;  // per cluster, sum of h_max
    std::vector<uint8_t> touches;
    std::vector<double> lse_buf;

    void accumulate(const Graph& g, const ExternalField& h, const ClusterPartition& part) {
        q = h.q();
        const size_t nc = part.clusters.size();
        sums.assign(nc * q, 0.0);
        smax.assign(nc, 0.0);
        touches.assign(nc, 0);
        for (int32_t v = 0; v < g.n_total(); ++v) {
            const int32_t c = part.comp[v];
            auto site = h.site(v);
            for (int m = 0; m < q; ++m) sums[static_cast<size_t>(c) * q + m] += site[m];
            smax[c] += h.hmax(v);
            if (!g.is_interior(v)) touches[c] = 1;
        }
    }

    double log_theta_free(double beta, size_t c) {
        lse_buf.resize(q);
        for (int m = 0; m < q; ++m) lse_buf[m] = beta * sums[c * q + m];
        return logsumexp(lse_buf);
    }
};

}  // namespace

double log_edge_factor(double beta, int q, double j) {
    const double x = static_cast<double>(q) * beta * j;
    if (x == 0.0) return kNegInf;
    if (x > 36.0) return x + std::log1p(-std::exp(-x));
    return std::log(std::expm1(x));
}

double log_cluster_weight_free(double beta, const ExternalField& h,
                               std::span<const int32_t> cluster) {
    std::vector<double> xs(h.q(), 0.0);
    for (int32_t v : cluster) {
        auto site = h.site(v);
        for (int m = 0; m < h.q(); ++m) xs[m] += site[m];
    }
    for (double& x : xs) x *= beta;
    return logsumexp(xs);
}

double log_cluster_weight_wired_boundary(double beta, const ExternalField& h,
                                         std::span<const int32_t> cluster) {
    double s = 0.0;
    for (int32_t v : cluster) s += h.hmax(v);
    return beta * s;
}

double log_cluster_weight(const ModelParams& p, std::span<const int32_t> cluster,
                          bool touches_boundary) {
    if (p.bc == Bc::MaxWired && touches_boundary)
        return log_cluster_weight_wired_boundary(p.beta, *p.field, cluster);
    return log_cluster_weight_free(p.beta, *p.field, cluster);
}

double cluster_weight(const ModelParams& p, std::span<const int32_t> cluster,
                      bool touches_boundary) {
    const double lw = log_cluster_weight(p, cluster, touches_boundary);
    if (lw >= std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error(
            "cluster weight overflows double; lower beta or work in log space");
    return std::exp(lw);
}

double log_config_weight(const Graph& g, const ModelParams& p, const Configuration& w) {
    if (!admissible(g, w, p.bc))
        throw std::invalid_argument("configuration violates the boundary condition");
    double lw = 0.0;
    for (int32_t e = 0; e < g.n_interior_edges(); ++e) {
        if (!w.open(e)) continue;
        const double lf = log_edge_factor(p.beta, p.q, p.couplings.value(e));
        if (lf == kNegInf) return kNegInf;
        lw += lf;
    }
    auto part = clusters(g, w);
    for (const auto& c : part.clusters) {
        if (p.bc == Bc::Free) {
            // free cluster product runs over components of (V, eta(w))
            if (c.touches_boundary) continue;  // dV singletons under free bc
            lw += log_cluster_weight_free(p.beta, *p.field, c.vertices);
        } else {
            lw += log_cluster_weight(p, c.vertices, c.touches_boundary);
        }
    }
    return lw;
}

double config_weight(const Graph& g, const ModelParams& p, const Configuration& w) {
    const double lw = log_config_weight(g, p, w);
    if (lw == kNegInf) return 0.0;
    if (lw >= std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error(
            "configuration weight overflows double; lower beta or use the table");
    return std::exp(lw);
}

MeasureTable enumerate_measure(std::shared_ptr<const Graph> g, ModelParams p,
                               int edge_cap) {
    validate_params(*g, p);
    const int32_t m = g->n_interior_edges();
    if (m > edge_cap)
        throw std::invalid_argument("enumeration refused: |E| = " + std::to_string(m) +
                                    " exceeds the cap of " + std::to_string(edge_cap));

    MeasureTable t;
    t.graph = g;
    t.params = p;
    const uint64_t n = uint64_t{1} << m;
    t.log_weight.resize(n);
    t.prob.resize(n);

    std::vector<double> lam(m);
    for (int32_t e = 0; e < m; ++e)
        lam[e] = log_edge_factor(p.beta, p.q, p.couplings.value(e));

    Configuration w = make_configuration(*g, 0, p.bc);
    ClusterAccumulator acc;
    for (uint64_t mask = 0; mask < n; ++mask) {
        double lw = 0.0;
        for (int32_t e = 0; e < m; ++e) {
            const bool open = (mask >> e) & 1u;
            w.bits[e] = open ? 1 : 0;
            if (open) lw += lam[e];
        }
        if (lw != kNegInf) {
            auto part = clusters(*g, w);
            acc.accumulate(*g, *p.field, part);
            for (size_t c = 0; c < part.clusters.size(); ++c) {
                if (p.bc == Bc::Free) {
                    if (acc.touches[c]) continue;
                    lw += acc.log_theta_free(p.beta, c);
                } else {
                    lw += acc.touches[c] ? p.beta * acc.smax[c]
                                         : acc.log_theta_free(p.beta, c);
                }
            }
        }
        t.log_weight[mask] = lw;
    }

    t.log_z = logsumexp(t.log_weight);
    double total = 0.0;
    for (uint64_t i = 0; i < n; ++i) {
        t.prob[i] = std::exp(t.log_weight[i] - t.log_z);
        total += t.prob[i];
    }
    for (uint64_t i = 0; i < n; ++i) t.prob[i] /= total;
    return t;
}

MeasureTable bernoulli_table(std::shared_ptr<const Graph> g, double beta, int q,
                             const Couplings& j, Bc bc, int edge_cap) {
    const int32_t m = g->n_interior_edges();
    if (m > edge_cap)
        throw std::invalid_argument("enumeration refused: |E| = " + std::to_string(m) +
                                    " exceeds the cap of " + std::to_string(edge_cap));
    MeasureTable t;
    t.graph = g;
    t.params.beta = beta;
    t.params.q = q;
    t.params.couplings = j;
    t.params.field = std::make_shared<ExternalField>(ExternalField::zero(*g, std::max(q, 1)));
    t.params.bc = bc;

    std::vector<double> lp(m), lq(m);
    for (int32_t e = 0; e < m; ++e) {
        const double p_open = -std::expm1(-static_cast<double>(q) * beta * j.value(e));
        lp[e] = p_open > 0 ? std::log(p_open) : kNegInf;
        lq[e] = p_open < 1 ? std::log1p(-p_open) : kNegInf;
    }
    const uint64_t n = uint64_t{1} << m;
    t.log_weight.resize(n);
    t.prob.resize(n);
    for (uint64_t mask = 0; mask < n; ++mask) {
        double lw = 0.0;
        for (int32_t e = 0; e < m; ++e) lw += ((mask >> e) & 1u) ? lp[e] : lq[e];
        t.log_weight[mask] = lw;
        t.prob[mask] = std::exp(lw);
    }
    t.log_z = 0.0;
    return t;
}

double exact_expectation(const MeasureTable& t,
                         const std::function<double(const Configuration&)>& f) {
    double s = 0.0;
    Configuration w = make_configuration(*t.graph, 0, t.params.bc);
    const int32_t m = t.graph->n_interior_edges();
    for (uint64_t mask = 0; mask < t.size(); ++mask) {
        if (t.prob[mask] == 0.0) continue;
        for (int32_t e = 0; e < m; ++e) w.bits[e] = (mask >> e) & 1u;
        s += f(w) * t.prob[mask];
    }
    return s;
}

double exact_connectivity(const MeasureTable& t, int32_t x, int32_t y) {
    if (x == y) return 1.0;
    return exact_expectation(t, [&](const Configuration& w) {
        return connected(*t.graph, w, x, y) ? 1.0 : 0.0;
    });
}

ConnectivityStats connectivity_stats(const MeasureTable& t) {
    const Graph& g = *t.graph;
    ConnectivityStats st;
    st.n = g.n_total();
    st.pair.assign(static_cast<size_t>(st.n) * st.n, 0.0);
    st.mean_cluster_size.assign(st.n, 0.0);

    Configuration w = make_configuration(g, 0, t.params.bc);
    const int32_t m = g.n_interior_edges();
    for (uint64_t mask = 0; mask < t.size(); ++mask) {
        const double p = t.prob[mask];
        if (p == 0.0) continue;
        for (int32_t e = 0; e < m; ++e) w.bits[e] = (mask >> e) & 1u;
        auto part = clusters(g, w);
        for (const auto& c : part.clusters) {
            const double sz = static_cast<double>(c.vertices.size());
            for (int32_t v : c.vertices) {
                st.mean_cluster_size[v] += p * sz;
                for (int32_t u : c.vertices)
                    st.pair[static_cast<size_t>(v) * st.n + u] += p;
            }
        }
    }
    return st;
}

}  // namespace rcm
