#include "lvqkit/implicit.hpp"

#include "lvqkit/error.hpp"

#include <cmath>
#include <string>

namespace lvqkit {

namespace {

void check_shape(const RowMatrix& coeffs, const LabelVector& labels, Index n) {
    if (coeffs.rows() < 1) throw ContractError("implicit codebook is empty");
    if (coeffs.cols() != n) {
        throw ContractError("coefficient rows have " + std::to_string(coeffs.cols()) + " entries, expected " +
                            std::to_string(n));
    }
    if (static_cast<Index>(labels.size()) != coeffs.rows()) throw ContractError("label count does not match rows");
}

}  // namespace

void normalize_rows(RowMatrix& coeffs) {
    for (Index j = 0; j < coeffs.rows(); ++j) {
        const double s = coeffs.row(j).sum();
        if (!std::isfinite(s) || std::abs(s) < 1e-300) throw InvariantError("coefficient row sum vanished");
        coeffs.row(j) /= s;
    }
}

KernelCodebook::KernelCodebook(std::shared_ptr<const KernelGram> gram, RowMatrix coeffs, LabelVector labels)
    : gram_(std::move(gram)), coeffs_(std::move(coeffs)), labels_(std::move(labels)) {
    if (!gram_) throw ContractError("kernel codebook needs a Gram matrix");
    check_shape(coeffs_, labels_, gram_->size());
    refresh();
}

double KernelCodebook::distance(Index i, Index j) const {
    return gram_->gram(i, i) - 2.0 * k_coeffs_(j, i) + self_(j);
}

void KernelCodebook::distances(Index i, std::vector<double>& out) const {
    out.resize(static_cast<std::size_t>(size()));
    for (Index j = 0; j < size(); ++j) out[static_cast<std::size_t>(j)] = distance(i, j);
}

void KernelCodebook::blend(Index j, double a, Index i) {
    if (a == 0.0) return;
    const double b = 1.0 - a;
    const Matrix& k = gram_->gram;
    self_(j) = b * b * self_(j) + 2.0 * a * b * k_coeffs_(j, i) + a * a * k(i, i);
    coeffs_.row(j) *= b;
    coeffs_(j, i) += a;
    k_coeffs_.row(j) = b * k_coeffs_.row(j) + a * k.col(i).transpose();
}

void KernelCodebook::refresh_row(Index j) {
    k_coeffs_.row(j) = (gram_->gram * coeffs_.row(j).transpose()).transpose();
    self_(j) = coeffs_.row(j).dot(k_coeffs_.row(j));
}

void KernelCodebook::refresh() {
    k_coeffs_.resize(size(), samples());
    self_.resize(size());
    for (Index j = 0; j < size(); ++j) refresh_row(j);
}

RelationalCodebook::RelationalCodebook(std::shared_ptr<const Matrix> dissimilarities, RowMatrix coeffs,
                                       LabelVector labels)
    : dis_(std::move(dissimilarities)), coeffs_(std::move(coeffs)), labels_(std::move(labels)) {
    if (!dis_) throw ContractError("relational codebook needs a dissimilarity matrix");
    check_shape(coeffs_, labels_, dis_->rows());
    normalize_rows(coeffs_);
    d_coeffs_.resize(size(), samples());
    half_self_.resize(size());
    for (Index j = 0; j < size(); ++j) refresh_row(j);
}

double RelationalCodebook::distance(Index i, Index j) const { return d_coeffs_(j, i) - half_self_(j); }

void RelationalCodebook::distances(Index i, std::vector<double>& out) const {
    out.resize(static_cast<std::size_t>(size()));
    for (Index j = 0; j < size(); ++j) out[static_cast<std::size_t>(j)] = distance(i, j);
}

Vector RelationalCodebook::direction(Index i, Index j) const {
    return dis_->row(i).transpose() - d_coeffs_.row(j).transpose();
}

void RelationalCodebook::add(Index j, const Vector& delta) {
    coeffs_.row(j) += delta.transpose();
    const double s = coeffs_.row(j).sum();
    if (!std::isfinite(s) || std::abs(s) < 1e-300) throw InvariantError("relational coefficient row sum vanished");
    coeffs_.row(j) /= s;
    refresh_row(j);
}

void RelationalCodebook::refresh_row(Index j) {
    d_coeffs_.row(j) = ((*dis_) * coeffs_.row(j).transpose()).transpose();
    half_self_(j) = 0.5 * coeffs_.row(j).dot(d_coeffs_.row(j));
}

}  // namespace lvqkit
