#include "rcm/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rcm {

ExternalField ExternalField::zero(const Graph& g, int q) {
    return from_values(g, q, std::vector<double>(static_cast<size_t>(g.n_total()) * q, 0.0));
}

ExternalField ExternalField::from_values(const Graph& g, int q, std::vector<double> values,
                                         bool summable_positive) {
    if (q < 1) throw std::invalid_argument("field needs q >= 1 colors");
    if (values.size() != static_cast<size_t>(g.n_total()) * q)
        throw std::invalid_argument("field must cover every vertex of V u dV");
    ExternalField h;
    h.q_ = q;
    h.summable_positive_ = summable_positive;
    h.values_ = std::move(values);
    h.hmax_.resize(h.values_.size() / q);
    for (size_t v = 0; v < h.hmax_.size(); ++v) {
        double m = h.values_[v * q];
        for (int k = 1; k < q; ++k) m = std::max(m, h.values_[v * q + k]);
        h.hmax_[v] = m;
    }
    for (double x : h.values_) {
        if (x != 0.0) h.all_zero_ = false;
        if (summable_positive && !(x > 0.0))
            throw std::invalid_argument("summable-positive field requires every entry > 0");
        if (!std::isfinite(x)) throw std::invalid_argument("field entries must be finite");
    }
    return h;
}

std::vector<int> ExternalField::q_max(int32_t v) const {
    std::vector<int> out;
    for (int m = 0; m < q_; ++m)
        if (value(v, m) == hmax_[v]) out.push_back(m);
    return out;
}

CompatibilityResult check_compatibility(const ExternalField& h,
                                        std::span<const int32_t> vertices) {
    CompatibilityResult r;
    if (vertices.empty()) {
        r.ok = true;
        for (int m = 0; m < h.q(); ++m) r.witness.push_back(m);
        return r;
    }
    std::vector<int> inter = h.q_max(vertices[0]);
    std::vector<int32_t> seen{vertices[0]};
    for (size_t i = 1; i < vertices.size(); ++i) {
        std::vector<int> qm = h.q_max(vertices[i]);
        std::vector<int> next;
        std::set_intersection(inter.begin(), inter.end(), qm.begin(), qm.end(),
                              std::back_inserter(next));
        if (next.empty()) {
            r.ok = false;
            r.failed_at = vertices[i];
            for (int32_t s : seen) {
                std::vector<int> sm = h.q_max(s);
                std::vector<int> pairwise;
                std::set_intersection(sm.begin(), sm.end(), qm.begin(), qm.end(),
                                      std::back_inserter(pairwise));
                if (pairwise.empty()) {
                    r.conflicting = s;
                    break;
                }
            }
            return r;
        }
        inter = std::move(next);
        seen.push_back(vertices[i]);
    }
    r.ok = true;
    r.witness = std::move(inter);
    return r;
}

CompatibilityResult check_compatibility(const ExternalField& h, const Graph& g) {
    std::vector<int32_t> verts(g.n_interior());
    for (int32_t v = 0; v < g.n_interior(); ++v) verts[v] = v;
    return check_compatibility(h, verts);
}

bool field_leq(const ExternalField& h, const ExternalField& hp, bool strict_pairs) {
    if (h.q() != hp.q() || h.n_sites() != hp.n_sites())
        throw std::invalid_argument("field order requires matching q and vertex domain");
    for (int32_t v = 0; v < h.n_sites(); ++v) {
        for (int k = 0; k < h.q(); ++k) {
            for (int l = 0; l < h.q(); ++l) {
                const double gap = h.value(v, k) - h.value(v, l);
                if (!strict_pairs && !(gap > 0.0)) continue;
                if (gap > hp.value(v, k) - hp.value(v, l)) return false;
            }
        }
    }
    return true;
}

double l1_norm(const ExternalField& h) {
    double s = 0.0;
    for (int32_t v = 0; v < h.n_sites(); ++v)
        for (int m = 0; m < h.q(); ++m) s += std::abs(h.value(v, m));
    return s;
}

Couplings Couplings::uniform(double j) {
    if (j < 0) throw std::invalid_argument("couplings must be >= 0");
    Couplings c;
    c.uniform_ = true;
    c.j_ = j;
    return c;
}

Couplings Couplings::per_edge(const Graph& g, std::vector<double> values) {
    if (values.size() != static_cast<size_t>(g.n_interior_edges()))
        throw std::invalid_argument("per-edge couplings must cover the interior edge set");
    for (double j : values)
        if (j < 0) throw std::invalid_argument("couplings must be >= 0");
    Couplings c;
    c.uniform_ = false;
    c.values_ = std::move(values);
    return c;
}

Couplings Couplings::scaled(double factor) const {
    if (factor < 0) throw std::invalid_argument("coupling scale must be >= 0");
    Couplings c = *this;
    if (c.uniform_) {
        c.j_ *= factor;
    } else {
        for (double& j : c.values_) j *= factor;
    }
    return c;
}

bool couplings_leq(const Graph& g, const Couplings& j, const Couplings& jp) {
    if (!j.is_uniform() && j.n_edges() != g.n_interior_edges())
        throw std::invalid_argument("couplings edge domain mismatch");
    if (!jp.is_uniform() && jp.n_edges() != g.n_interior_edges())
        throw std::invalid_argument("couplings edge domain mismatch");
    for (int32_t e = 0; e < g.n_interior_edges(); ++e)
        if (j.value(e) > jp.value(e)) return false;
    return true;
}

ModelParams make_params(const Graph& g, double beta, int q, double j, Bc bc) {
    return make_params(g, beta, q, j, bc, ExternalField::zero(g, q));
}

ModelParams make_params(const Graph& g, double beta, int q, double j, Bc bc,
                        ExternalField field) {
    ModelParams p;
    p.beta = beta;
    p.q = q;
    p.couplings = Couplings::uniform(j);
    p.field = std::make_shared<ExternalField>(std::move(field));
    p.bc = bc;
    validate_params(g, p);
    return p;
}

void validate_params(const Graph& g, const ModelParams& p) {
    if (p.beta < 0) throw std::invalid_argument("beta must be >= 0");
    if (p.q < 1) throw std::invalid_argument("q must be >= 1");
    if (!p.field) throw std::invalid_argument("params carry no field");
    if (p.field->q() != p.q) throw std::invalid_argument("field has wrong color count");
    if (p.field->n_sites() != g.n_total())
        throw std::invalid_argument("field does not cover V u dV of this graph");
    if (!p.couplings.is_uniform() && p.couplings.n_edges() != g.n_interior_edges())
        throw std::invalid_argument("couplings do not cover the interior edge set");
    if (p.bc == Bc::MaxWired) {
        auto compat = check_compatibility(*p.field, g);
        if (!compat.ok) {
            std::string msg =
                "max-wired refused: no common maximizing color over V; intersection "
                "emptied at vertex " +
                std::to_string(compat.failed_at);
            if (compat.conflicting >= 0)
                msg += " (conflicts with vertex " + std::to_string(compat.conflicting) + ")";
            throw std::invalid_argument(msg);
        }
    }
}

}  // namespace rcm
