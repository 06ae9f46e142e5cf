#include "rcm/sampler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rcm/measure.hpp"

namespace rcm {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp2(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}
}  // namespace

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t Rng::child_seed(uint64_t master, uint64_t k) {
    uint64_t s = master;
    uint64_t z = 0;
    for (uint64_t i = 0; i <= k; ++i) z = splitmix64(s);
    return z;
}

Configuration bernoulli_sample(const Graph& g, double beta, int q, const Couplings& j,
                               Rng& rng) {
    Configuration w = make_configuration(g, 0, Bc::Free);
    for (int32_t e = 0; e < g.n_interior_edges(); ++e) {
        const double p = -std::expm1(-static_cast<double>(q) * beta * j.value(e));
        w.bits[e] = rng.bernoulli(p) ? 1 : 0;
    }
    return w;
}

HeatBathChain::HeatBathChain(std::shared_ptr<const Graph> g, ModelParams p, uint64_t seed)
    : g_(std::move(g)), params_(std::move(p)), seed_(seed), rng_(seed) {
    validate_params(*g_, params_);
    w_ = make_configuration(*g_, 0, params_.bc);
    log_lambda_.resize(g_->n_interior_edges());
    for (int32_t e = 0; e < g_->n_interior_edges(); ++e)
        log_lambda_[e] = log_edge_factor(params_.beta, params_.q, params_.couplings.value(e));
    stamp_.assign(g_->n_total(), 0);
    sum_a_.resize(params_.q);
    sum_b_.resize(params_.q);
}

bool HeatBathChain::split_components(int32_t edge) {
    const ExternalField& h = *params_.field;
    const int q = params_.q;
    const bool zero_field = h.is_zero();
    const int32_t x = g_->edge(edge).a;
    const int32_t y = g_->edge(edge).b;

    std::fill(sum_a_.begin(), sum_a_.end(), 0.0);
    std::fill(sum_b_.begin(), sum_b_.end(), 0.0);
    smax_a_ = smax_b_ = 0.0;
    touch_a_ = touch_b_ = false;

    // component of x, edge excluded
    ++epoch_;
    const int32_t mark_a = 2 * epoch_;
    queue_.clear();
    queue_.push_back(x);
    stamp_[x] = mark_a;
    for (size_t head = 0; head < queue_.size(); ++head) {
        const int32_t v = queue_[head];
        if (v == y) return false;  // still connected without the edge
        if (!zero_field) {
            auto site = h.site(v);
            for (int m = 0; m < q; ++m) sum_a_[m] += site[m];
            smax_a_ += h.hmax(v);
        }
        if (!g_->is_interior(v)) touch_a_ = true;
        for (const auto& half : g_->neighbors(v)) {
            if (half.edge == edge || !w_.open(half.edge)) continue;
            if (stamp_[half.nbr] != mark_a) {
                stamp_[half.nbr] = mark_a;
                queue_.push_back(half.nbr);
            }
        }
    }

    // disconnected: walk the component of y
    const int32_t mark_b = mark_a + 1;
    queue_.clear();
    queue_.push_back(y);
    stamp_[y] = mark_b;
    for (size_t head = 0; head < queue_.size(); ++head) {
        const int32_t v = queue_[head];
        if (!zero_field) {
            auto site = h.site(v);
            for (int m = 0; m < q; ++m) sum_b_[m] += site[m];
            smax_b_ += h.hmax(v);
        }
        if (!g_->is_interior(v)) touch_b_ = true;
        for (const auto& half : g_->neighbors(v)) {
            if (half.edge == edge || !w_.open(half.edge)) continue;
            if (stamp_[half.nbr] != mark_b) {
                stamp_[half.nbr] = mark_b;
                queue_.push_back(half.nbr);
            }
        }
    }
    return true;
}

double HeatBathChain::open_probability(int32_t edge) {
    if (!g_->is_interior_edge(edge))
        throw std::invalid_argument("heat bath only updates interior edges");
    double log_odds = log_lambda_[edge];
    if (log_odds == kNegInf) return 0.0;

    if (split_components(edge)) {
        // odds pick up Theta(A u B) / (Theta(A) Theta(B))
        const int q = params_.q;
        const double beta = params_.beta;
        const bool wired = params_.bc == Bc::MaxWired;
        const bool zero_field = params_.field->is_zero();
        if (wired && touch_a_ && touch_b_) {
            // merged weight factorizes exactly; no correction
        } else if (wired && touch_a_) {
            if (zero_field)
                log_odds -= std::log(static_cast<double>(q));
            else {
                std::vector<double> xs(q);
                for (int m = 0; m < q; ++m) xs[m] = beta * sum_b_[m];
                log_odds += beta * smax_b_ - logsumexp2(xs);
            }
        } else if (wired && touch_b_) {
            if (zero_field)
                log_odds -= std::log(static_cast<double>(q));
            else {
                std::vector<double> xs(q);
                for (int m = 0; m < q; ++m) xs[m] = beta * sum_a_[m];
                log_odds += beta * smax_a_ - logsumexp2(xs);
            }
        } else {
            if (zero_field)
                log_odds -= std::log(static_cast<double>(q));
            else {
                std::vector<double> merged(q), xa(q), xb(q);
                for (int m = 0; m < q; ++m) {
                    xa[m] = beta * sum_a_[m];
                    xb[m] = beta * sum_b_[m];
                    merged[m] = xa[m] + xb[m];
                }
                log_odds += logsumexp2(merged) - logsumexp2(xa) - logsumexp2(xb);
            }
        }
    }
    // p = sigmoid(log_odds)
    if (log_odds >= 0) return 1.0 / (1.0 + std::exp(-log_odds));
    const double e = std::exp(log_odds);
    return e / (1.0 + e);
}

void HeatBathChain::step(int32_t edge) {
    const double p = open_probability(edge);
    w_.bits[edge] = rng_.bernoulli(p) ? 1 : 0;
}

void HeatBathChain::sweep() {
    const int32_t m = g_->n_interior_edges();
    if (random_scan) {
        for (int32_t i = 0; i < m; ++i) step(static_cast<int32_t>(rng_.below(m)));
    } else {
        for (int32_t e = 0; e < m; ++e) step(e);
    }
    ++sweeps_;
}

ChainResult run_chain(std::shared_ptr<const Graph> g, ModelParams p,
                      const ChainSettings& cfg, const std::vector<Observable>& obs) {
    if (cfg.burnin < 0 || cfg.samples < 0 || cfg.thin < 0)
        throw std::invalid_argument("chain settings must be >= 0");
    HeatBathChain chain(g, std::move(p), cfg.seed);
    chain.random_scan = cfg.random_scan;

    ChainResult res;
    res.seed = cfg.seed;
    res.samples.resize(obs.size());
    for (int64_t i = 0; i < cfg.burnin; ++i) chain.sweep();
    for (int64_t s = 0; s < cfg.samples; ++s) {
        for (int64_t k = 0; k < std::max<int64_t>(cfg.thin, 1); ++k) chain.sweep();
        for (size_t j = 0; j < obs.size(); ++j)
            res.samples[j].push_back(obs[j].eval(*g, chain.config()));
    }
    res.sweeps = chain.sweeps();

    for (size_t j = 0; j < obs.size(); ++j) {
        ObservableSummary sum;
        sum.name = obs[j].name;
        sum.n = static_cast<int64_t>(res.samples[j].size());
        if (sum.n > 0) {
            double mean = 0.0;
            for (double v : res.samples[j]) mean += v;
            mean /= sum.n;
            double var = 0.0;
            for (double v : res.samples[j]) var += (v - mean) * (v - mean);
            var = sum.n > 1 ? var / (sum.n - 1) : 0.0;
            sum.mean = mean;
            sum.stderr_naive = std::sqrt(var / sum.n);
        }
        res.summaries.push_back(std::move(sum));
    }
    return res;
}

}  // namespace rcm
