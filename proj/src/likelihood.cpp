#include "lvqkit/likelihood.hpp"

#include "lvqkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lvqkit {

namespace {

double capped(double coef, double cap) {
    if (cap <= 0.0) return coef;
    return std::clamp(coef, -cap, cap);
}

std::vector<double> metric_distances(const VectorRef& x, const Codebook& cb, const AdaptiveMetric& metric) {
    std::vector<double> d(static_cast<std::size_t>(cb.size()));
    for (Index j = 0; j < cb.size(); ++j) d[static_cast<std::size_t>(j)] = metric.distance(x, cb.row(j), j);
    return d;
}

void check_metric(const AdaptiveMetric& metric) {
    if (metric.kind != MetricKind::euclidean && metric.kind != MetricKind::matrix) {
        throw ContractError("likelihood variants support the euclidean and global matrix metrics only");
    }
}

}  // namespace

void SoftConfig::validate(Index prototypes) const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ContractError("softness sigma must be positive");
    if (priors.empty()) return;
    if (static_cast<Index>(priors.size()) != prototypes) throw ContractError("one prior per prototype required");
    double s = 0.0;
    for (double p : priors) {
        if (!(p > 0.0)) throw ContractError("priors must be positive");
        s += p;
    }
    if (std::abs(s - 1.0) > 1e-9) throw ContractError("priors must sum to 1");
}

Posteriors assignment_probs(std::span<const double> distances, std::span<const Label> labels, Label y,
                            const SoftConfig& soft) {
    const std::size_t m = distances.size();
    const double scale = -1.0 / (2.0 * soft.sigma * soft.sigma);
    std::vector<double> f(m);
    double f_max = -std::numeric_limits<double>::infinity();
    double f_max_same = -std::numeric_limits<double>::infinity();
    bool has_same = false;
    for (std::size_t j = 0; j < m; ++j) {
        f[j] = scale * distances[j];
        if (!soft.priors.empty()) f[j] += std::log(soft.priors[j]);
        f_max = std::max(f_max, f[j]);
        if (labels[j] == y) {
            has_same = true;
            f_max_same = std::max(f_max_same, f[j]);
        }
    }
    if (!has_same) throw ContractError("no prototype carries the sample's class " + std::to_string(y));

    Posteriors p;
    p.same.assign(m, 0.0);
    p.all.assign(m, 0.0);
    double z_all = 0.0, z_same = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        p.all[j] = std::exp(f[j] - f_max);
        z_all += p.all[j];
        if (labels[j] == y) {
            p.same[j] = std::exp(f[j] - f_max_same);
            z_same += p.same[j];
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        p.all[j] /= z_all;
        p.same[j] /= z_same;
    }
    // log sum_y e^f - log sum e^f
    p.log_ratio = std::min(0.0, (f_max_same + std::log(z_same)) - (f_max + std::log(z_all)));
    return p;
}

double rslvq_sample_cost(const VectorRef& x, Label y, const Codebook& cb, const AdaptiveMetric& metric,
                         const SoftConfig& soft) {
    auto d = metric_distances(x, cb, metric);
    return assignment_probs(d, cb.labels, y, soft).log_ratio;
}

double rslvq_cost(const LabeledDataset& data, const Codebook& cb, const AdaptiveMetric& metric,
                  const SoftConfig& soft) {
    double total = 0.0;
    for (Index i = 0; i < data.size(); ++i) {
        total += rslvq_sample_cost(data.features.row(i).transpose(), data.labels[static_cast<std::size_t>(i)], cb,
                                   metric, soft);
    }
    return total;
}

double rslvq_cost(const LabeledDataset& data, const Codebook& cb, const SoftConfig& soft) {
    return rslvq_cost(data, cb, AdaptiveMetric::euclidean(), soft);
}

LikelihoodGradient likelihood_gradient(const VectorRef& x, Label y, const Codebook& cb, const AdaptiveMetric& metric,
                                       const SoftConfig& soft) {
    check_metric(metric);
    LikelihoodGradient g;
    auto d = metric_distances(x, cb, metric);
    g.posteriors = assignment_probs(d, cb.labels, y, soft);
    const double inv_s2 = 1.0 / (soft.sigma * soft.sigma);
    g.prototypes.resize(cb.size(), cb.dim());
    if (metric.uses_matrix()) g.omega = Matrix::Zero(cb.dim(), cb.dim());
    for (Index j = 0; j < cb.size(); ++j) {
        const auto js = static_cast<std::size_t>(j);
        const double gate = g.posteriors.gate(js, cb.labels[js] == y);
        const Vector u = x - cb.row(j);
        // df_j/dw_j = Lambda u / sigma^2, df_j/dOmega = -(Omega u) u^T / sigma^2
        g.prototypes.row(j) = (gate * inv_s2 * metric.apply_lambda(u, j)).transpose();
        if (metric.uses_matrix() && gate != 0.0) {
            g.omega -= (gate * inv_s2) * (metric.omegas[0].omega() * u) * u.transpose();
        }
    }
    return g;
}

Posteriors likelihood_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                           OmegaRates eps_omega, const SoftConfig& soft) {
    check_metric(metric);
    auto d = metric_distances(x, cb, metric);
    Posteriors p = assignment_probs(d, cb.labels, y, soft);
    const double inv_s2 = 1.0 / (soft.sigma * soft.sigma);
    const bool omega_moves = metric.uses_matrix() && (eps_omega.diagonal != 0.0 || eps_omega.off_diagonal != 0.0);

    Matrix grad_omega;
    if (omega_moves) grad_omega = Matrix::Zero(cb.dim(), cb.dim());
    std::vector<Vector> deltas(static_cast<std::size_t>(cb.size()));
    for (Index j = 0; j < cb.size(); ++j) {
        const auto js = static_cast<std::size_t>(j);
        const double gate = p.gate(js, cb.labels[js] == y);
        if (gate == 0.0) continue;
        const Vector u = x - cb.row(j);
        const double coef = capped(eps_w * gate * inv_s2, soft.max_step);
        deltas[js] = coef * metric.apply_lambda(u, j);
        if (omega_moves) grad_omega -= (gate * inv_s2) * (metric.omegas[0].omega() * u) * u.transpose();
    }
    for (Index j = 0; j < cb.size(); ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (deltas[js].size() > 0) cb.row(j) += deltas[js];
    }
    if (omega_moves) {
        Matrix next = metric.omegas[0].omega();
        for (Index c = 0; c < next.cols(); ++c) {
            for (Index r = 0; r < next.rows(); ++r) {
                next(r, c) += (r == c ? eps_omega.diagonal : eps_omega.off_diagonal) * grad_omega(r, c);
            }
        }
        metric.omegas[0] = MetricMatrix::normalized(next);
    }
    return p;
}

Posteriors rslvq_step(Codebook& cb, const VectorRef& x, Label y, double eps, const SoftConfig& soft) {
    AdaptiveMetric euclid;
    return likelihood_step(cb, euclid, x, y, eps, {}, soft);
}

Posteriors mrslvq_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                       OmegaRates eps_omega, const SoftConfig& soft) {
    if (metric.kind != MetricKind::matrix) throw ContractError("mrslvq needs a global metric matrix");
    return likelihood_step(cb, metric, x, y, eps_w, eps_omega, soft);
}

Posteriors krslvq_step(KernelCodebook& cb, Index i, Label y, double eps, const SoftConfig& soft) {
    std::vector<double> d;
    cb.distances(i, d);
    for (auto& v : d) v = std::max(v, 0.0);
    Posteriors p = assignment_probs(d, cb.labels(), y, soft);
    const double inv_s2 = 1.0 / (soft.sigma * soft.sigma);
    for (Index j = 0; j < cb.size(); ++j) {
        const auto js = static_cast<std::size_t>(j);
        const double gate = p.gate(js, cb.labels()[js] == y);
        if (gate != 0.0) cb.blend(j, capped(eps * gate * inv_s2, soft.max_step), i);
    }
    return p;
}

Posteriors rrslvq_step(RelationalCodebook& cb, Index i, Label y, double eps, const SoftConfig& soft) {
    std::vector<double> d;
    cb.distances(i, d);
    Posteriors p = assignment_probs(d, cb.labels(), y, soft);
    const double half_inv_s2 = 0.5 / (soft.sigma * soft.sigma);
    std::vector<Vector> deltas(static_cast<std::size_t>(cb.size()));
    for (Index j = 0; j < cb.size(); ++j) {
        const auto js = static_cast<std::size_t>(j);
        const double gate = p.gate(js, cb.labels()[js] == y);
        if (gate != 0.0) deltas[js] = -capped(eps * gate * half_inv_s2, soft.max_step) * cb.direction(i, j);
    }
    for (Index j = 0; j < cb.size(); ++j) {
        const auto js = static_cast<std::size_t>(j);
        if (deltas[js].size() > 0) cb.add(j, deltas[js]);
    }
    return p;
}

}  // namespace lvqkit
