#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "rcm/field.hpp"
#include "rcm/lattice.hpp"

namespace rcm {

/// log(exp(q beta J) - 1); -inf when q beta J == 0
double log_edge_factor(double beta, int q, double j);

/// log of the free cluster weight: log sum_m exp(beta sum_{x in C} h_{x,m})
double log_cluster_weight_free(double beta, const ExternalField& h,
                               std::span<const int32_t> cluster);
/// log of the max-wired boundary-touching weight: beta sum_{x in C} h_{x,max}
double log_cluster_weight_wired_boundary(double beta, const ExternalField& h,
                                         std::span<const int32_t> cluster);
/// dispatch on bc and the touches-boundary flag
double log_cluster_weight(const ModelParams& p, std::span<const int32_t> cluster,
                          bool touches_boundary);
/// linear-scale value; throws when exp overflows (lower beta to avoid)
double cluster_weight(const ModelParams& p, std::span<const int32_t> cluster,
                      bool touches_boundary);

/// log of the unnormalized configuration weight of Eq.-style
/// prod_open (e^{q beta J}-1) * prod_clusters Theta. Under free bc the cluster
/// product runs over components of (V, open interior edges) including
/// singletons; under max-wired over components of (V u dV, open edges).
double log_config_weight(const Graph& g, const ModelParams& p, const Configuration& w);
double config_weight(const Graph& g, const ModelParams& p, const Configuration& w);

/// Exact probability table over all 2^|E| admissible configurations of a
/// small graph (boundary edges pinned by the bc). Entry i corresponds to the
/// interior mask i, edge bit order = interior edge index order.
struct MeasureTable {
    std::shared_ptr<const Graph> graph;
    ModelParams params;
    std::vector<double> log_weight;
    std::vector<double> prob;
    double log_z = 0.0;

    size_t size() const { return prob.size(); }
    Configuration config_at(uint64_t mask) const {
        return make_configuration(*graph, mask, params.bc);
    }
};

inline constexpr int kDefaultEnumerationCap = 22;

MeasureTable enumerate_measure(std::shared_ptr<const Graph> g, ModelParams p,
                               int edge_cap = kDefaultEnumerationCap);

/// The Bernoulli product reference measure with p_e = 1 - exp(-q beta J_e) on
/// the interior edges, boundary edges pinned by bc. Same table layout as
/// enumerate_measure; probabilities are computed directly from the product
/// form, not through configuration weights.
MeasureTable bernoulli_table(std::shared_ptr<const Graph> g, double beta, int q,
                             const Couplings& j, Bc bc,
                             int edge_cap = kDefaultEnumerationCap);

double exact_expectation(const MeasureTable& t,
                         const std::function<double(const Configuration&)>& f);

/// P(x <-> y) under the table's measure
double exact_connectivity(const MeasureTable& t, int32_t x, int32_t y);

/// One pass over the table: pairwise connection probabilities and expected
/// cluster sizes for every vertex of V u dV.
struct ConnectivityStats {
    int32_t n = 0;
    std::vector<double> pair;               // row-major n*n, P(x<->y)
    std::vector<double> mean_cluster_size;  // E|C_x|

    double connectivity(int32_t x, int32_t y) const {
        return pair[static_cast<size_t>(x) * n + y];
    }
};
ConnectivityStats connectivity_stats(const MeasureTable& t);

}  // namespace rcm
