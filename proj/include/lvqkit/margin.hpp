#pragma once

#include "lvqkit/adaptive.hpp"
#include "lvqkit/codebook.hpp"
#include "lvqkit/dataset.hpp"
#include "lvqkit/implicit.hpp"

#include <functional>
#include <span>

namespace lvqkit {

double sigmoid(double z);
/// phi'(z) = phi(z) (1 - phi(z)).
double sigmoid_prime(double z);

/// (d+ - d-) / (d+ + d-). Throws ContractError when both are zero.
double mu(double d_plus, double d_minus);

/// Everything the margin updates need from one (d+, d-) pair.
struct MarginTerms {
    double mu = 0.0;
    double phi = 0.5;
    double phi_prime = 0.25;
    /// d mu / d d+ = 2 d- / (d+ + d-)^2
    double mu_plus = 0.0;
    /// -(d mu / d d-) = 2 d+ / (d+ + d-)^2
    double mu_minus = 0.0;
};

MarginTerms margin_terms(double d_plus, double d_minus);

/// Sum over samples of phi(mu) with Euclidean winners.
double glvq_cost(const LabeledDataset& data, const Codebook& cb);
/// Same with an adaptive metric.
double glvq_cost(const LabeledDataset& data, const Codebook& cb, const AdaptiveMetric& metric);
/// Same with harmonic-mean d+ and d-.
double h2mlvq_cost(const LabeledDataset& data, const Codebook& cb);

/// phi(mu) for one sample.
double glvq_sample_cost(const VectorRef& x, Label y, const Codebook& cb, const AdaptiveMetric& metric);
double h2mlvq_sample_cost(const VectorRef& x, Label y, const Codebook& cb);

/// Gradient of phi(mu(x)) with respect to every adaptive quantity. Only the
/// winner rows of `prototypes` are non-zero. The metric gradient is split
/// into the contribution through d+ and through d- so local variants can
/// route each to its owner.
struct MarginGradient {
    Winners winners;
    MarginTerms terms;
    RowMatrix prototypes;
    Vector relevance_plus;
    Vector relevance_minus;
    Matrix omega_plus;
    Matrix omega_minus;
};

MarginGradient margin_gradient(const VectorRef& x, Label y, const Codebook& cb, const AdaptiveMetric& metric);

/// Gradient of phi(mu) with harmonic d+, d- with respect to all prototypes.
struct HarmonicGradient {
    MarginTerms terms;
    double d_plus = 0.0;
    double d_minus = 0.0;
    RowMatrix prototypes;
};

HarmonicGradient h2mlvq_gradient(const VectorRef& x, Label y, const Codebook& cb);

struct MarginRates {
    double prototypes = 0.0;
    double relevance = 0.0;
    OmegaRates omega;
};

/// One gradient-descent step on phi(mu): both winners move, then the metric
/// parameters of the winners (local) or the shared ones (global) are updated
/// and renormalized. Returns the terms at the pre-step state.
MarginTerms margin_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, const MarginRates& rates);

MarginTerms glvq_step(Codebook& cb, const VectorRef& x, Label y, double eps);
MarginTerms grlvq_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                       double eps_lambda);
MarginTerms gmlvq_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                       OmegaRates eps_omega);
/// Local relevance or local matrix step depending on metric.kind.
MarginTerms local_metric_step(Codebook& cb, AdaptiveMetric& metric, const VectorRef& x, Label y, double eps_w,
                              double eps_metric, OmegaRates eps_omega = {});

/// Every same-class prototype moves with weight exp(-rank / neigh_range);
/// the closest other-class prototype is pushed as in GLVQ.
void sng_step(Codebook& cb, const VectorRef& x, Label y, double eps, double neigh_range);

/// All prototypes move through the harmonic-mean chain rule.
void h2mlvq_step(Codebook& cb, const VectorRef& x, Label y, double eps);

/// Implicit kernel variant; sample i of the Gram matrix.
MarginTerms kglvq_step(KernelCodebook& cb, Index i, Label y, double eps);
/// Implicit relational variant; sample i of the dissimilarity matrix.
MarginTerms rglvq_step(RelationalCodebook& cb, Index i, Label y, double eps);

/// Neighborhood range at training progress p in [0,1]: decays
/// multiplicatively from class_prototypes/2 to 0.01.
double sng_range(Index class_prototypes, double progress);

}  // namespace lvqkit
