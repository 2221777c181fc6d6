#include "lvqkit/adaptive.hpp"

#include "lvqkit/error.hpp"

#include <cmath>

namespace lvqkit {

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::relevance: return "relevance";
        case MetricKind::matrix: return "matrix";
        case MetricKind::local_relevance: return "local_relevance";
        case MetricKind::local_matrix: return "local_matrix";
        case MetricKind::kernel: return "kernel";
        case MetricKind::relational: return "relational";
    }
    return "euclidean";
}

MetricKind metric_kind_from_string(const std::string& text) {
    for (auto k : {MetricKind::euclidean, MetricKind::relevance, MetricKind::matrix, MetricKind::local_relevance,
                   MetricKind::local_matrix, MetricKind::kernel, MetricKind::relational}) {
        if (to_string(k) == text) return k;
    }
    throw ParseError("unknown metric kind '" + text + "'");
}

AdaptiveMetric AdaptiveMetric::euclidean() { return {}; }

AdaptiveMetric AdaptiveMetric::relevance(Index dim) {
    AdaptiveMetric m;
    m.kind = MetricKind::relevance;
    m.relevances.push_back(RelevanceVector::uniform(dim));
    return m;
}

AdaptiveMetric AdaptiveMetric::matrix(Index dim) {
    AdaptiveMetric m;
    m.kind = MetricKind::matrix;
    m.omegas.push_back(MetricMatrix::identity(dim));
    return m;
}

AdaptiveMetric AdaptiveMetric::local_relevance(Index dim, Index prototypes) {
    AdaptiveMetric m;
    m.kind = MetricKind::local_relevance;
    m.relevances.assign(static_cast<std::size_t>(prototypes), RelevanceVector::uniform(dim));
    return m;
}

AdaptiveMetric AdaptiveMetric::local_matrix(Index dim, Index prototypes) {
    AdaptiveMetric m;
    m.kind = MetricKind::local_matrix;
    m.omegas.assign(static_cast<std::size_t>(prototypes), MetricMatrix::identity(dim));
    return m;
}

double AdaptiveMetric::distance(const VectorRef& x, const VectorRef& w, Index j) const {
    switch (kind) {
        case MetricKind::euclidean: return (x - w).squaredNorm();
        case MetricKind::relevance:
        case MetricKind::local_relevance:
            return (relevances[slot(j)].weights().array() * (x - w).array().square()).sum();
        case MetricKind::matrix:
        case MetricKind::local_matrix: return (omegas[slot(j)].omega() * (x - w)).squaredNorm();
        default: throw ContractError("metric kind " + to_string(kind) + " has no vector distance");
    }
}

Vector AdaptiveMetric::apply_lambda(const Vector& u, Index j) const {
    switch (kind) {
        case MetricKind::euclidean: return u;
        case MetricKind::relevance:
        case MetricKind::local_relevance: return relevances[slot(j)].weights().cwiseProduct(u);
        case MetricKind::matrix:
        case MetricKind::local_matrix: {
            const Matrix& om = omegas[slot(j)].omega();
            return om.transpose() * (om * u);
        }
        default: throw ContractError("metric kind " + to_string(kind) + " has no vector distance");
    }
}

void AdaptiveMetric::validate(Index prototypes, Index dim) const {
    const std::size_t want = local() ? static_cast<std::size_t>(prototypes) : 1;
    if (uses_relevance()) {
        if (relevances.size() != want) throw ContractError("relevance parameter count does not match the codebook");
        for (const auto& r : relevances) {
            if (r.dim() != dim) throw ContractError("relevance vector dimension mismatch");
        }
    }
    if (uses_matrix()) {
        if (omegas.size() != want) throw ContractError("metric matrix count does not match the codebook");
        for (const auto& m : omegas) {
            if (m.dim() != dim || m.omega().rows() != dim) throw ContractError("metric matrix dimension mismatch");
        }
    }
}

void AdaptiveMetric::check_normalized(double tol) const {
    for (const auto& r : relevances) {
        if (!r.weights().allFinite() || std::abs(r.weights().sum() - 1.0) > tol || r.weights().minCoeff() < 0.0) {
            throw InvariantError("relevance vector left the simplex");
        }
    }
    for (const auto& m : omegas) {
        if (!m.omega().allFinite() || std::abs(m.omega().squaredNorm() - 1.0) > tol) {
            throw InvariantError("metric matrix trace drifted from 1");
        }
    }
}

void AdaptiveMetric::add_slot(Index from) {
    if (!local()) return;
    const auto s = static_cast<std::size_t>(from);
    if (kind == MetricKind::local_relevance) relevances.push_back(relevances.at(s));
    if (kind == MetricKind::local_matrix) omegas.push_back(omegas.at(s));
}

}  // namespace lvqkit
