#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "rcm/field.hpp"
#include "rcm/lattice.hpp"

namespace rcm {

uint64_t splitmix64(uint64_t& state);

/// Deterministic 64-bit generator. Uniform doubles are built from the top 53
/// bits so streams are identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    static constexpr const char* kName = "mt19937_64";

    /// child seed for worker k, derived by iterating splitmix64 from master
    static uint64_t child_seed(uint64_t master, uint64_t k);

    uint64_t bits() { return eng_(); }
    double uniform() { return (bits() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
    int64_t below(int64_t n) { return static_cast<int64_t>(uniform() * n) % n; }

  private:
    std::mt19937_64 eng_;
};

/// Independent draw with p_e = 1 - exp(-q beta J_e) on interior edges;
/// boundary edges closed (the product measure lives on {0,1}^E).
Configuration bernoulli_sample(const Graph& g, double beta, int q, const Couplings& j,
                               Rng& rng);

/// Single-bond heat-bath chain targeting the random-cluster measure. One
/// sweep resamples every interior edge from its exact conditional, in edge
/// index order (or uniformly at random with random_scan).
class HeatBathChain {
  public:
    HeatBathChain(std::shared_ptr<const Graph> g, ModelParams p, uint64_t seed);

    void step(int32_t edge);
    void sweep();

    const Configuration& config() const { return w_; }
    const Graph& graph() const { return *g_; }
    const ModelParams& params() const { return params_; }
    int64_t sweeps() const { return sweeps_; }
    uint64_t seed() const { return seed_; }
    ClusterPartition partition() const { return clusters(*g_, w_); }

    /// P(edge open | rest of the configuration); pure, used by the detailed
    /// balance checks as well as by step()
    double open_probability(int32_t edge);

    bool random_scan = false;

  private:
    // components of the two endpoints with `edge` removed; early exit when
    // they meet
    bool split_components(int32_t edge);

    std::shared_ptr<const Graph> g_;
    ModelParams params_;
    uint64_t seed_;
    Rng rng_;
    Configuration w_;
    int64_t sweeps_ = 0;
    std::vector<double> log_lambda_;  // per interior edge

    // scratch for split_components
    std::vector<int32_t> stamp_;
    int32_t epoch_ = 0;
    std::vector<int32_t> queue_;
    std::vector<double> sum_a_, sum_b_;
    double smax_a_ = 0, smax_b_ = 0;
    bool touch_a_ = false, touch_b_ = false;
};

struct Observable {
    std::string name;
    std::function<double(const Graph&, const Configuration&)> eval;
};

struct ChainSettings {
    int64_t burnin = 0;
    int64_t samples = 0;
    int64_t thin = 1;
    uint64_t seed = 0;
    bool random_scan = false;
};

struct ObservableSummary {
    std::string name;
    double mean = 0.0;
    double stderr_naive = 0.0;  // sd/sqrt(n); thinned samples treated as iid
    int64_t n = 0;
};

struct ChainResult {
    uint64_t seed = 0;
    std::string rng = Rng::kName;
    int64_t sweeps = 0;
    std::vector<std::vector<double>> samples;  // [observable][sample]
    std::vector<ObservableSummary> summaries;
};

ChainResult run_chain(std::shared_ptr<const Graph> g, ModelParams p,
                      const ChainSettings& cfg, const std::vector<Observable>& obs);

}  // namespace rcm
