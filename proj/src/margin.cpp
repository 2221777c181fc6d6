#include "lvqkit/margin.hpp"

#include "lvqkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lvqkit {

namespace {

std::vector<double> metric_distances(const VectorRef& x, const Codebook& cb, const AdaptiveMetric& metric) {
    std::vector<double> d(static_cast<std::size_t>(cb.size()));
    for (Index j = 0; j < cb.size(); ++j) d[static_cast<std::size_t>(j)] = metric.distance(x, cb.row(j), j);
    return d;
}

struct HarmonicParts {
    double d_plus = 0.0;
    double d_minus = 0.0;
    Index n_plus = 0;
    Index n_minus = 0;
};

HarmonicParts harmonic_parts(std::vector<double>& d, const LabelVector& labels, Label y) {
    HarmonicParts h;
    double inv_plus = 0.0, inv_minus = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) {
        d[j] = std::max(d[j], kDistanceFloor);
        if (labels[j] == y) {
            inv_plus += 1.0 / d[j];
            ++h.n_plus;
        } else {
            inv_minus += 1.0 / d[j];
            ++h.n_minus;
        }
    }
    if (h.n_plus == 0) throw ContractError("no prototype carries the sample's class " + std::to_string(y));
    if (h.n_minus == 0) throw ContractError("no prototype carries a class other than " + std::to_string(y));
    h.d_plus = static_cast<double>(h.n_plus) / inv_plus;
    h.d_minus = static_cast<double>(h.n_minus) / inv_minus;
    return h;
}

void update_relevance(RelevanceVector& r, const Vector& grad, double rate) {
    r = RelevanceVector::normalized(r.weights() - rate * grad);
}

void update_omega(MetricMatrix& m, const Matrix& grad, OmegaRates rates) {
    Matrix next = m.omega();
    for (Index c = 0; c < next.cols(); ++c) {
        for (Index r = 0; r < next.rows(); ++r) {
            next(r, c) -= (r == c ? rates.diagonal : rates.off_diagonal) * grad(r, c);
        }
    }
    m = MetricMatrix::normalized(next);
}

}  // namespace

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double sigmoid_prime(double z) {
    const double p = sigmoid(z);
    return p * (1.0 - p);
}

double mu(double d_plus, double d_minus) {
    const double s = d_plus + d_minus;
    if (!(s > 0.0)) throw ContractError("relative distance difference undefined: both distances are zero");
    return (d_plus - d_minus) / s;
}

MarginTerms margin_terms(double d_plus, double d_minus) {
    MarginTerms t;
    const double s = d_plus + d_minus;
    if (!(s > 0.0)) return MarginTerms{0.0, 0.5, 0.25, 0.0, 0.0};
    t.mu = (d_plus - d_minus) / s;
    t.phi = sigmoid(t.mu);
    t.phi_prime = t.phi * (1.0 - t.phi);
    t.mu_plus = 2.0 * d_minus / (s * s);
    t.mu_minus = 2.0 * d_plus / (s * s);
    return t;
}

double glvq_sample_cost(const VectorRef& x, Label y, const Codebook& cb, const AdaptiveMetric& metric) {
    auto d = metric_distances(x, cb, metric);
    const Winners w = require_winners(d, cb.labels, y);
    return sigmoid(mu(w.d_plus, w.d_minus));
}

double glvq_cost(const LabeledDataset& data, const Codebook& cb, const AdaptiveMetric& metric) {
    double total = 0.0;
    for (Index i = 0; i < data.size(); ++i) {
        total += glvq_sample_cost(data.features.row(i).transpose(), data.labels[static_cast<std::size_t>(i)], cb,
                                  metric);
    }
    return total;
}

double glvq_cost(const LabeledDataset& data, const Codebook& cb) {
    return glvq_cost(data, cb, AdaptiveMetric::euclidean());
}

double h2mlvq_sample_cost(const VectorRef& x, Label y, const Codebook& cb) {
    auto d = prototype_distances(x, cb);
    const HarmonicParts h = harmonic_parts(d, cb.labels, y);
    return sigmoid(mu(h.d_plus, h.d_minus));
}

double h2mlvq_cost(const LabeledDataset& data, const Codebook& cb) {
    double total = 0.0;
    for (Index i = 0; i < data.size(); ++i) {
        total += h2mlvq_sample_cost(data.features.row(i).transpose(), data.labels[static_cast<std::size_t>(i)], cb);
    }
    return total;
}

MarginGradient margin_gradient(const VectorRef& x, Label y, const Codebook& cb, const AdaptiveMetric& metric) {
    MarginGradient g;
    auto d = metric_distances(x, cb, metric);
    g.winners = require_winners(d, cb.labels, y);
    g.terms = margin_terms(g.winners.d_plus, g.winners.d_minus);
    const Index p = g.winners.plus, m = g.winners.minus;
    const Vector u_plus = x - cb.row(p);
    const Vector u_minus = x - cb.row(m);
    const double cp = g.terms.phi_prime * g.terms.mu_plus;
    const double cm = g.terms.phi_prime * g.terms.mu_minus;

    g.prototypes = RowMatrix::Zero(cb.size(), cb.dim());
    g.prototypes.row(p) = (-2.0 * cp * metric.apply_lambda(u_plus, p)).transpose();
    g.prototypes.row(m) = (2.0 * cm * metric.apply_lambda(u_minus, m)).transpose();

    if (metric.uses_relevance()) {
        g.relevance_plus = cp * u_plus.array().square().matrix();
        g.relevance_minus = -cm * u_minus.array().square().matrix();
    }
    if (metric.uses_matrix()) {
        const Vector a_plus = metric.omegas[metric.slot(p)].omega() * u_plus;
        const Vector a_minus = metric.omegas[metric.slot(m)].omega() * u_minus;
        g.omega_plus = 2.0 * cp * a_plus * u_plus.transpose();
        g.omega_minus = -2.0 * cm * a_minus * u_minus.transpose();
    }
    return g;
}

MarginTerms margin_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, const MarginRates& rates) {
    const MarginGradient g = margin_gradient(x, y, cb, metric);
    const Index p = g.winners.plus, m = g.winners.minus;
    cb.row(p) -= rates.prototypes * g.prototypes.row(p).transpose();
    cb.row(m) -= rates.prototypes * g.prototypes.row(m).transpose();

    if (metric.uses_relevance() && rates.relevance != 0.0) {
        if (metric.local()) {
            update_relevance(metric.relevances[metric.slot(p)], g.relevance_plus, rates.relevance);
            update_relevance(metric.relevances[metric.slot(m)], g.relevance_minus, rates.relevance);
        } else {
            update_relevance(metric.relevances[0], g.relevance_plus + g.relevance_minus, rates.relevance);
        }
    }
    const bool omega_moves = rates.omega.diagonal != 0.0 || rates.omega.off_diagonal != 0.0;
    if (metric.uses_matrix() && omega_moves) {
        if (metric.local()) {
            update_omega(metric.omegas[metric.slot(p)], g.omega_plus, rates.omega);
            update_omega(metric.omegas[metric.slot(m)], g.omega_minus, rates.omega);
        } else {
            update_omega(metric.omegas[0], g.omega_plus + g.omega_minus, rates.omega);
        }
    }
    return g.terms;
}

MarginTerms glvq_step(Codebook& cb, const VectorRef& x, Label y, double eps) {
    AdaptiveMetric euclid;
    return margin_step(cb, euclid, x, y, MarginRates{eps, 0.0, {}});
}

MarginTerms grlvq_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                       double eps_lambda) {
    if (metric.kind != MetricKind::relevance) throw ContractError("grlvq needs a global relevance vector");
    return margin_step(cb, metric, x, y, MarginRates{eps_w, eps_lambda, {}});
}

MarginTerms gmlvq_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                       OmegaRates eps_omega) {
    if (metric.kind != MetricKind::matrix) throw ContractError("gmlvq needs a global metric matrix");
    return margin_step(cb, metric, x, y, MarginRates{eps_w, 0.0, eps_omega});
}

MarginTerms local_metric_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                              double eps_metric, OmegaRates eps_omega) {
    if (!metric.local()) throw ContractError("local metric step needs per-prototype parameters");
    metric.validate(cb.size(), cb.dim());
    return margin_step(cb, metric, x, y, MarginRates{eps_w, eps_metric, eps_omega});
}

double sng_range(Index class_prototypes, double progress) {
    const double start = std::max(0.5 * static_cast<double>(class_prototypes), 0.01);
    const double end = 0.01;
    const double p = std::clamp(progress, 0.0, 1.0);
    return start * std::pow(end / start, p);
}

void sng_step(Codebook& cb, const VectorRef& x, Label y, double eps, double neigh_range) {
    if (!(neigh_range > 0.0)) throw ContractError("neighborhood range must be positive");
    auto d = prototype_distances(x, cb);
    const Winners w = require_winners(d, cb.labels, y);

    std::vector<Index> same;
    for (Index j = 0; j < cb.size(); ++j) {
        if (cb.labels[static_cast<std::size_t>(j)] == y) same.push_back(j);
    }
    std::stable_sort(same.begin(), same.end(), [&](Index a, Index b) {
        return d[static_cast<std::size_t>(a)] < d[static_cast<std::size_t>(b)];
    });

    const MarginTerms t = margin_terms(w.d_plus, w.d_minus);
    const Vector push = x - cb.row(w.minus);
    for (std::size_t rank = 0; rank < same.size(); ++rank) {
        const Index j = same[rank];
        const double h = std::exp(-static_cast<double>(rank) / neigh_range);
        if (h == 0.0) continue;
        const MarginTerms tj = margin_terms(d[static_cast<std::size_t>(j)], w.d_minus);
        cb.row(j) += (2.0 * eps * h * tj.phi_prime * tj.mu_plus) * (x - cb.row(j));
    }
    cb.row(w.minus) -= (2.0 * eps * t.phi_prime * t.mu_minus) * push;
}

HarmonicGradient h2mlvq_gradient(const VectorRef& x, Label y, const Codebook& cb) {
    HarmonicGradient g;
    auto d = prototype_distances(x, cb);
    const HarmonicParts h = harmonic_parts(d, cb.labels, y);
    g.d_plus = h.d_plus;
    g.d_minus = h.d_minus;
    g.terms = margin_terms(h.d_plus, h.d_minus);
    g.prototypes.resize(cb.size(), cb.dim());
    const double cp = g.terms.phi_prime * g.terms.mu_plus;
    const double cm = g.terms.phi_prime * g.terms.mu_minus;
    for (Index j = 0; j < cb.size(); ++j) {
        const double dj = d[static_cast<std::size_t>(j)];
        const bool same = cb.labels[static_cast<std::size_t>(j)] == y;
        const double dh = same ? h.d_plus : h.d_minus;
        const double chain = (dh / dj) * (dh / dj) / static_cast<double>(same ? h.n_plus : h.n_minus);
        // d phi / d w_j = phi' * (dmu/dd_h) * chain * (-2 (x - w_j))
        const double coef = same ? -2.0 * cp * chain : 2.0 * cm * chain;
        g.prototypes.row(j) = coef * (x - cb.row(j)).transpose();
    }
    return g;
}

void h2mlvq_step(Codebook& cb, const VectorRef& x, Label y, double eps) {
    const HarmonicGradient g = h2mlvq_gradient(x, y, cb);
    cb.prototypes -= eps * g.prototypes;
}

MarginTerms kglvq_step(KernelCodebook& cb, Index i, Label y, double eps) {
    std::vector<double> d;
    cb.distances(i, d);
    for (auto& v : d) v = std::max(v, 0.0);
    const Winners w = require_winners(d, cb.labels(), y);
    const MarginTerms t = margin_terms(w.d_plus, w.d_minus);
    cb.blend(w.plus, eps * t.phi_prime * t.mu_plus, i);
    cb.blend(w.minus, -eps * t.phi_prime * t.mu_minus, i);
    return t;
}

MarginTerms rglvq_step(RelationalCodebook& cb, Index i, Label y, double eps) {
    std::vector<double> d;
    cb.distances(i, d);
    const Winners w = require_winners(d, cb.labels(), y);
    const MarginTerms t = margin_terms(w.d_plus, w.d_minus);
    const Vector dir_plus = cb.direction(i, w.plus);
    const Vector dir_minus = cb.direction(i, w.minus);
    cb.add(w.plus, -eps * t.phi_prime * t.mu_plus * dir_plus);
    cb.add(w.minus, eps * t.phi_prime * t.mu_minus * dir_minus);
    return t;
}

}  // namespace lvqkit
