#pragma once

#include "lvqkit/metric.hpp"
#include "lvqkit/types.hpp"

#include <memory>

namespace lvqkit {

/// Prototypes w_j = sum_m gamma_jm Phi(x_m) over the training samples.
/// Keeps K gamma_j and gamma_j^T K gamma_j cached so a distance costs O(1)
/// and a blend update O(N).
class KernelCodebook {
public:
    KernelCodebook(std::shared_ptr<const KernelGram> gram, RowMatrix coeffs, LabelVector labels);

    Index size() const { return coeffs_.rows(); }
    Index samples() const { return coeffs_.cols(); }
    const RowMatrix& coeffs() const { return coeffs_; }
    const LabelVector& labels() const { return labels_; }
    const KernelGram& gram() const { return *gram_; }
    const Vector& self_terms() const { return self_; }

    /// Squared feature-space distance between sample i and prototype j.
    double distance(Index i, Index j) const;
    void distances(Index i, std::vector<double>& out) const;

    /// gamma_j <- (1 - a) gamma_j + a e_i. Row sums are preserved.
    void blend(Index j, double a, Index i);
    /// Recomputes the caches of every row from scratch.
    void refresh();

private:
    void refresh_row(Index j);

    std::shared_ptr<const KernelGram> gram_;
    RowMatrix coeffs_;
    LabelVector labels_;
    RowMatrix k_coeffs_;
    Vector self_;
};

/// Prototypes w_j = sum_m alpha_jm x_m known only through dissimilarities.
/// Rows always sum to one.
class RelationalCodebook {
public:
    RelationalCodebook(std::shared_ptr<const Matrix> dissimilarities, RowMatrix coeffs, LabelVector labels);

    Index size() const { return coeffs_.rows(); }
    Index samples() const { return coeffs_.cols(); }
    const RowMatrix& coeffs() const { return coeffs_; }
    const LabelVector& labels() const { return labels_; }
    const Matrix& dissimilarities() const { return *dis_; }
    /// 1/2 alpha_j^T D alpha_j.
    const Vector& half_self_terms() const { return half_self_; }

    double distance(Index i, Index j) const;
    void distances(Index i, std::vector<double>& out) const;

    /// d_im - [D alpha_j]_m for every m: the direction shared by the relational
    /// update rules.
    Vector direction(Index i, Index j) const;
    /// alpha_j <- alpha_j + delta, renormalized to sum one.
    void add(Index j, const Vector& delta);

private:
    void refresh_row(Index j);

    std::shared_ptr<const Matrix> dis_;
    RowMatrix coeffs_;
    LabelVector labels_;
    RowMatrix d_coeffs_;
    Vector half_self_;
};

/// Divides each row by its sum. Throws InvariantError when a sum vanishes.
void normalize_rows(RowMatrix& coeffs);

}  // namespace lvqkit
