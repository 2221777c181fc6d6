#pragma once

#include "lvqkit/adaptive.hpp"
#include "lvqkit/codebook.hpp"
#include "lvqkit/dataset.hpp"
#include "lvqkit/implicit.hpp"

#include <span>
#include <vector>

namespace lvqkit {

struct SoftConfig {
    double sigma = 1.0;
    /// Mixture priors, one per prototype. Empty means uniform.
    std::vector<double> priors;
    /// Cap on the magnitude of a prototype's per-step coefficient
    /// eps * gate / sigma^2 (relational: eps * gate / (2 sigma^2)). With small
    /// sigma the raw coefficient can exceed 1 and overshoot past x. 0 disables.
    double max_step = 1.0;

    void validate(Index prototypes) const;
};

/// Softmax posteriors of f_j = -d_j / (2 sigma^2).
struct Posteriors {
    /// P_y(j|x): restricted to class-y prototypes, 0 elsewhere.
    std::vector<double> same;
    /// P(j|x) over all prototypes.
    std::vector<double> all;
    /// log(p(x, y|W) / p(x|W)).
    double log_ratio = 0.0;

    /// P_y - P for class-y prototypes, -P for the others.
    double gate(std::size_t j, bool same_class) const { return same_class ? same[j] - all[j] : -all[j]; }
};

Posteriors assignment_probs(std::span<const double> distances, std::span<const Label> labels, Label y,
                            const SoftConfig& soft);

double rslvq_sample_cost(const VectorRef& x, Label y, const Codebook& cb, const AdaptiveMetric& metric,
                         const SoftConfig& soft);
/// Sum of per-sample log likelihood ratios; always <= 0.
double rslvq_cost(const LabeledDataset& data, const Codebook& cb, const SoftConfig& soft);
double rslvq_cost(const LabeledDataset& data, const Codebook& cb, const AdaptiveMetric& metric,
                  const SoftConfig& soft);

/// Gradient of the per-sample log ratio (to be ascended).
struct LikelihoodGradient {
    Posteriors posteriors;
    RowMatrix prototypes;
    Matrix omega;
};

LikelihoodGradient likelihood_gradient(const VectorRef& x, Label y, const Codebook& cb, const AdaptiveMetric& metric,
                                       const SoftConfig& soft);

/// One ascent step. `metric` must be euclidean or a global matrix.
Posteriors likelihood_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                           OmegaRates eps_omega, const SoftConfig& soft);

Posteriors rslvq_step(Codebook& cb, const VectorRef& x, Label y, double eps, const SoftConfig& soft);
Posteriors mrslvq_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                       OmegaRates eps_omega, const SoftConfig& soft);
Posteriors krslvq_step(KernelCodebook& cb, Index i, Label y, double eps, const SoftConfig& soft);
Posteriors rrslvq_step(RelationalCodebook& cb, Index i, Label y, double eps, const SoftConfig& soft);

}  // namespace lvqkit
