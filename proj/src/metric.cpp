#include "lvqkit/metric.hpp"

#include "lvqkit/dataset.hpp"
#include "lvqkit/error.hpp"

#include <cmath>
#include <string>

namespace lvqkit {

namespace {

void require_same_dim(const VectorRef& x, const VectorRef& w) {
    if (x.size() != w.size()) {
        throw ContractError("dimension mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(w.size()));
    }
}

}  // namespace

double d_euclid2(const VectorRef& x, const VectorRef& w) {
    require_same_dim(x, w);
    return (x - w).squaredNorm();
}

RelevanceVector RelevanceVector::uniform(Index dim) {
    if (dim < 1) throw ContractError("relevance vector needs at least one feature");
    return RelevanceVector(Vector::Constant(dim, 1.0 / static_cast<double>(dim)));
}

RelevanceVector RelevanceVector::normalized(const Vector& raw) {
    Vector clipped = raw.cwiseMax(0.0);
    const double sum = clipped.sum();
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw ContractError("relevance vector degenerates to all zeros after clipping");
    }
    return RelevanceVector(clipped / sum);
}

RelevanceVector RelevanceVector::checked(const Vector& lambda, double tol) {
    if (lambda.size() < 1 || !lambda.allFinite() || lambda.minCoeff() < 0.0 || std::abs(lambda.sum() - 1.0) > tol) {
        throw ContractError("relevance vector must be non-negative and sum to 1");
    }
    return RelevanceVector(lambda);
}

double d_relevance(const VectorRef& x, const VectorRef& w, const RelevanceVector& r) {
    require_same_dim(x, w);
    if (r.dim() != x.size()) throw ContractError("relevance vector dimension mismatch");
    return (r.weights().array() * (x - w).array().square()).sum();
}

MetricMatrix MetricMatrix::identity(Index dim) {
    if (dim < 1) throw ContractError("metric matrix needs at least one feature");
    return MetricMatrix(Matrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));
}

MetricMatrix MetricMatrix::normalized(const Matrix& raw) {
    if (raw.rows() != raw.cols() || raw.rows() < 1) throw ContractError("metric matrix must be square");
    // trace(Omega^T Omega) is the squared Frobenius norm.
    const double trace = raw.squaredNorm();
    if (!(trace > 0.0) || !std::isfinite(trace)) {
        throw ContractError("metric matrix degenerates to zero (or is non-finite)");
    }
    return MetricMatrix(raw / std::sqrt(trace));
}

MetricMatrix MetricMatrix::checked(const Matrix& omega, double tol) {
    if (omega.rows() != omega.cols() || omega.rows() < 1) throw ContractError("metric matrix must be square");
    if (!omega.allFinite() || std::abs(omega.squaredNorm() - 1.0) > tol) {
        throw ContractError("metric matrix must have trace(Omega^T Omega) = 1");
    }
    return MetricMatrix(omega);
}

MetricMatrix MetricMatrix::from_relevance(const RelevanceVector& r) {
    return MetricMatrix(r.weights().cwiseSqrt().asDiagonal().toDenseMatrix());
}

double d_matrix(const VectorRef& x, const VectorRef& w, const MetricMatrix& m) {
    require_same_dim(x, w);
    if (m.dim() != x.size()) throw ContractError("metric matrix dimension mismatch");
    return (m.omega() * (x - w)).squaredNorm();
}

double gaussian_kernel(const VectorRef& x, const VectorRef& y, double sigma_k) {
    return std::exp(-d_euclid2(x, y) / (2.0 * sigma_k * sigma_k));
}

KernelGram build_gram(const RowMatrix& samples, double sigma_k) {
    if (!(sigma_k > 0.0)) throw ContractError("kernel width must be positive");
    const Index n = samples.rows();
    KernelGram g;
    g.sigma_k = sigma_k;
    g.gram.resize(n, n);
    const double scale = -1.0 / (2.0 * sigma_k * sigma_k);
    for (Index j = 0; j < n; ++j) {
        g.gram(j, j) = 1.0;
        for (Index i = j + 1; i < n; ++i) {
            double v = std::exp(scale * (samples.row(i) - samples.row(j)).squaredNorm());
            g.gram(i, j) = v;
            g.gram(j, i) = v;
        }
    }
    return g;
}

KernelGram build_gram(const LabeledDataset& data, double sigma_k) { return build_gram(data.features, sigma_k); }

double d_feature2(Index i, const VectorRef& coeffs, const KernelGram& gram) {
    const Index n = gram.size();
    if (i < 0 || i >= n) throw ContractError("sample index " + std::to_string(i) + " out of range");
    if (coeffs.size() != n) throw ContractError("coefficient row length does not match the Gram matrix");
    return gram.gram(i, i) - 2.0 * gram.gram.row(i).dot(coeffs.transpose()) + coeffs.dot(gram.gram * coeffs);
}

double d_relational(Index i, const VectorRef& coeffs, const Matrix& dissimilarities) {
    const Index n = dissimilarities.rows();
    if (i < 0 || i >= n) throw ContractError("sample index " + std::to_string(i) + " out of range");
    if (coeffs.size() != n) throw ContractError("coefficient row length does not match the dissimilarity matrix");
    if (std::abs(coeffs.sum() - 1.0) > 1e-9) throw ContractError("relational coefficients must sum to 1");
    return dissimilarities.row(i).dot(coeffs.transpose()) - 0.5 * coeffs.dot(dissimilarities * coeffs);
}

double d_relational(Index i, const VectorRef& coeffs, const DissimilarityData& data) {
    return d_relational(i, coeffs, data.matrix);
}

double harmonic_distance(std::span<const double> distances) {
    if (distances.empty()) throw ContractError("harmonic distance of an empty list");
    double inv = 0.0;
    for (double d : distances) {
        if (!(d > 0.0)) throw ContractError("harmonic distance needs positive distances (exact prototype hit)");
        inv += 1.0 / d;
    }
    return static_cast<double>(distances.size()) / inv;
}

}  // namespace lvqkit
