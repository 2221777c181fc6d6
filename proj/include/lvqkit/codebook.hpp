#pragma once

#include "lvqkit/metric.hpp"
#include "lvqkit/types.hpp"

#include <limits>
#include <span>
#include <vector>

namespace lvqkit {

/// M labeled prototypes, one per row. Implicit (kernel/relational) models keep
/// coefficient rows over the N training samples here instead of vectors.
struct Codebook {
    RowMatrix prototypes;
    LabelVector labels;

    Index size() const { return prototypes.rows(); }
    Index dim() const { return prototypes.cols(); }
    auto row(Index j) const { return prototypes.row(j).transpose(); }
    auto row(Index j) { return prototypes.row(j).transpose(); }

    /// Non-empty, one label per prototype, labels in 1..class_count, every
    /// class present, finite entries. Throws ContractError.
    void validate(int class_count) const;
    /// Throws InvariantError if any entry is non-finite.
    void check_finite() const;
};

/// Nearest same-class (`plus`) and nearest other-class (`minus`) prototype.
/// Ties go to the lowest index. -1 marks a missing side.
struct Winners {
    Index plus = -1;
    Index minus = -1;
    double d_plus = std::numeric_limits<double>::infinity();
    double d_minus = std::numeric_limits<double>::infinity();

    bool complete() const { return plus >= 0 && minus >= 0; }
};

Winners find_winners(std::span<const double> distances, std::span<const Label> labels, Label y);

/// Same as find_winners but throws ContractError when a side is missing.
Winners require_winners(std::span<const double> distances, std::span<const Label> labels, Label y);

/// Index of the smallest distance; lowest index on ties. NaN never wins.
Index nearest_index(std::span<const double> distances);

/// Distances from x to every prototype under `dist(x, w)`.
template <class Distance>
std::vector<double> prototype_distances(const VectorRef& x, const Codebook& cb, Distance&& dist) {
    std::vector<double> out(static_cast<std::size_t>(cb.size()));
    for (Index j = 0; j < cb.size(); ++j) out[static_cast<std::size_t>(j)] = dist(x, cb.row(j));
    return out;
}

inline std::vector<double> prototype_distances(const VectorRef& x, const Codebook& cb) {
    return prototype_distances(x, cb, [](const VectorRef& a, const VectorRef& b) { return d_euclid2(a, b); });
}

/// Winner-take-all label of x.
template <class Distance>
Label classify(const VectorRef& x, const Codebook& cb, Distance&& dist) {
    auto d = prototype_distances(x, cb, std::forward<Distance>(dist));
    return cb.labels[static_cast<std::size_t>(nearest_index(d))];
}

inline Label classify(const VectorRef& x, const Codebook& cb) {
    return classify(x, cb, [](const VectorRef& a, const VectorRef& b) { return d_euclid2(a, b); });
}

}  // namespace lvqkit
