#pragma once

#include "lvqkit/types.hpp"

#include <span>

namespace lvqkit {

struct LabeledDataset;
struct DissimilarityData;

// All distances in this library are squared distances.

double d_euclid2(const VectorRef& x, const VectorRef& w);

/// Non-negative feature weights summing to one.
class RelevanceVector {
public:
    /// 1/D on every feature.
    static RelevanceVector uniform(Index dim);
    /// Clips negatives to 0 and divides by the sum. Throws ContractError when
    /// nothing positive remains.
    static RelevanceVector normalized(const Vector& raw);
    /// Takes `lambda` as is after checking it is on the simplex within `tol`.
    static RelevanceVector checked(const Vector& lambda, double tol = 1e-9);

    const Vector& weights() const { return lambda_; }
    Index dim() const { return lambda_.size(); }
    double operator[](Index i) const { return lambda_(i); }

private:
    explicit RelevanceVector(Vector lambda) : lambda_(std::move(lambda)) {}
    Vector lambda_;
};

double d_relevance(const VectorRef& x, const VectorRef& w, const RelevanceVector& r);

/// Metric factor Omega; the induced Lambda = Omega^T Omega is PSD with unit trace.
class MetricMatrix {
public:
    /// Omega = I / sqrt(D).
    static MetricMatrix identity(Index dim);
    /// Omega scaled by 1 / sqrt(trace(Omega^T Omega)). Throws ContractError on
    /// an all-zero or non-finite input.
    static MetricMatrix normalized(const Matrix& raw);
    /// Takes `omega` as is after checking its trace constraint within `tol`.
    static MetricMatrix checked(const Matrix& omega, double tol = 1e-9);
    /// Omega = diag(sqrt(lambda)); induces the same distance as `r`.
    static MetricMatrix from_relevance(const RelevanceVector& r);

    const Matrix& omega() const { return omega_; }
    Matrix lambda() const { return omega_.transpose() * omega_; }
    Index dim() const { return omega_.cols(); }

private:
    explicit MetricMatrix(Matrix omega) : omega_(std::move(omega)) {}
    Matrix omega_;
};

/// (x-w)^T Omega^T Omega (x-w), evaluated as ||Omega (x-w)||^2.
double d_matrix(const VectorRef& x, const VectorRef& w, const MetricMatrix& m);

double gaussian_kernel(const VectorRef& x, const VectorRef& y, double sigma_k);

/// Gaussian Gram matrix of a sample set.
struct KernelGram {
    Matrix gram;
    double sigma_k = 1.0;

    Index size() const { return gram.rows(); }
};

KernelGram build_gram(const RowMatrix& samples, double sigma_k);
KernelGram build_gram(const LabeledDataset& data, double sigma_k);

/// Squared feature-space distance between the image of sample i and the
/// implicit prototype sum_m coeffs_m Phi(x_m):
/// K_ii - 2 sum_m coeffs_m K_im + coeffs^T K coeffs.
double d_feature2(Index i, const VectorRef& coeffs, const KernelGram& gram);

/// Distance between sample i and the implicit prototype sum_m coeffs_m x_m
/// computed from dissimilarities only: [D coeffs]_i - 1/2 coeffs^T D coeffs.
/// Coefficients must sum to one (within 1e-9).
double d_relational(Index i, const VectorRef& coeffs, const Matrix& dissimilarities);
double d_relational(Index i, const VectorRef& coeffs, const DissimilarityData& data);

/// M / sum_j (1/d_j). Throws ContractError on an empty list or a
/// non-positive entry; callers floor exact hits before calling.
double harmonic_distance(std::span<const double> distances);

/// Distance floor used for exact prototype hits in harmonic aggregation.
inline constexpr double kDistanceFloor = 1e-12;

}  // namespace lvqkit
