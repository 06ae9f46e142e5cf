#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rcm/lattice.hpp"

namespace rcm {

/// Per-site, per-color external field h_{x,m} on V u dV. Colors are indexed
/// 0..q-1. Values are stored exactly as given; maximizer sets use exact
/// floating-point equality.
class ExternalField {
  public:
    static ExternalField zero(const Graph& g, int q);
    /// values are site-major: values[v*q + m]. With summable_positive set,
    /// construction fails unless every entry is > 0.
    static ExternalField from_values(const Graph& g, int q, std::vector<double> values,
                                     bool summable_positive = false);

    int q() const { return q_; }
    int32_t n_sites() const { return static_cast<int32_t>(values_.size() / q_); }
    bool summable_positive() const { return summable_positive_; }
    bool is_zero() const { return all_zero_; }

    double value(int32_t v, int m) const { return values_[static_cast<size_t>(v) * q_ + m]; }
    double hmax(int32_t v) const { return hmax_[v]; }
    std::span<const double> site(int32_t v) const {
        return {values_.data() + static_cast<size_t>(v) * q_, static_cast<size_t>(q_)};
    }

    /// colors achieving max_m h_{v,m} (exact ties)
    std::vector<int> q_max(int32_t v) const;

  private:
    int q_ = 0;
    bool summable_positive_ = false;
    bool all_zero_ = true;
    std::vector<double> values_;
    std::vector<double> hmax_;
};

struct CompatibilityResult {
    bool ok = false;
    std::vector<int> witness;      // common maximizing colors
    int32_t failed_at = -1;        // vertex where the running intersection emptied
    int32_t conflicting = -1;      // earlier vertex whose maximizer set is disjoint
                                   // from the failing one, -1 if none pairwise
};

/// Intersection of Q_{x,max} over the given vertices.
CompatibilityResult check_compatibility(const ExternalField& h,
                                        std::span<const int32_t> vertices);
/// Over the interior vertex set of g.
CompatibilityResult check_compatibility(const ExternalField& h, const Graph& g);

/// Partial order on fields: for every site x and every color pair (k,l) with
/// h_{x,k}-h_{x,l} > 0, require h_{x,k}-h_{x,l} <= h'_{x,k}-h'_{x,l}.
/// With strict_pairs the constraint applies to all ordered pairs.
bool field_leq(const ExternalField& h, const ExternalField& hp, bool strict_pairs = false);

double l1_norm(const ExternalField& h);

/// Nonnegative coupling constants on the interior edges.
class Couplings {
  public:
    static Couplings uniform(double j);
    static Couplings per_edge(const Graph& g, std::vector<double> values);

    bool is_uniform() const { return uniform_; }
    double value(int32_t e) const { return uniform_ ? j_ : values_[e]; }
    double uniform_value() const { return j_; }
    int32_t n_edges() const { return static_cast<int32_t>(values_.size()); }

    Couplings scaled(double factor) const;

  private:
    bool uniform_ = true;
    double j_ = 0.0;
    std::vector<double> values_;
};

/// Componentwise J <= J'. Both must live on the same edge set.
bool couplings_leq(const Graph& g, const Couplings& j, const Couplings& jp);

/// One point of the model family: (beta, q, J, h, boundary condition).
/// q = 1 is the Bernoulli reference; model runs require q >= 2.
struct ModelParams {
    double beta = 0.0;
    int q = 2;
    Couplings couplings = Couplings::uniform(1.0);
    std::shared_ptr<const ExternalField> field;
    Bc bc = Bc::Free;
};

ModelParams make_params(const Graph& g, double beta, int q, double j, Bc bc);
ModelParams make_params(const Graph& g, double beta, int q, double j, Bc bc,
                        ExternalField field);

/// Checks the field/graph/coupling shapes and, under max-wired, the common
/// maximizer condition. Throws std::invalid_argument on violation.
void validate_params(const Graph& g, const ModelParams& p);

}  // namespace rcm
