#pragma once

#include "lvqkit/metric.hpp"
#include "lvqkit/types.hpp"

#include <string>
#include <vector>

namespace lvqkit {

enum class MetricKind { euclidean, relevance, matrix, local_relevance, local_matrix, kernel, relational };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& text);

/// Learning rates for the entries of Omega: diagonal and off-diagonal
/// entries may move at different speeds.
struct OmegaRates {
    double diagonal = 0.0;
    double off_diagonal = 0.0;

    static OmegaRates uniform(double rate) { return {rate, rate}; }
};

/// Distance used by the explicit (vector) prototype models. Global variants
/// carry one parameter set, local variants one per prototype.
struct AdaptiveMetric {
    MetricKind kind = MetricKind::euclidean;
    std::vector<RelevanceVector> relevances;
    std::vector<MetricMatrix> omegas;

    static AdaptiveMetric euclidean();
    static AdaptiveMetric relevance(Index dim);
    static AdaptiveMetric matrix(Index dim);
    static AdaptiveMetric local_relevance(Index dim, Index prototypes);
    static AdaptiveMetric local_matrix(Index dim, Index prototypes);

    bool local() const { return kind == MetricKind::local_relevance || kind == MetricKind::local_matrix; }
    bool uses_relevance() const { return kind == MetricKind::relevance || kind == MetricKind::local_relevance; }
    bool uses_matrix() const { return kind == MetricKind::matrix || kind == MetricKind::local_matrix; }

    /// Index of the parameter set that prototype j uses.
    std::size_t slot(Index j) const { return local() ? static_cast<std::size_t>(j) : 0; }

    double distance(const VectorRef& x, const VectorRef& w, Index j) const;
    /// Lambda_j u, the factor in d/dw of the distance (d/dw d = -2 Lambda_j u).
    Vector apply_lambda(const Vector& u, Index j) const;

    /// Parameter count and dimensions agree with a codebook of `prototypes`
    /// rows in `dim` features. Throws ContractError.
    void validate(Index prototypes, Index dim) const;
    /// Normalization constraints hold within `tol`. Throws InvariantError.
    void check_normalized(double tol = 1e-9) const;
    /// Appends one parameter slot (local variants) copied from slot `from`.
    void add_slot(Index from);
};

}  // namespace lvqkit
