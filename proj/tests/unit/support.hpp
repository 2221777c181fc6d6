#pragma once

#include "lvqkit/codebook.hpp"
#include "lvqkit/dataset.hpp"
#include "lvqkit/random.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace testing {

using namespace lvqkit;

inline RowMatrix random_matrix(Rng& rng, Index rows, Index cols, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    RowMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = n(rng);
    return m;
}

inline Vector random_vector(Rng& rng, Index n, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = d(rng);
    return v;
}

inline Matrix random_square(Rng& rng, Index n) {
    Matrix m(n, n);
    std::normal_distribution<double> d(0.0, 1.0);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) m(i, j) = d(rng);
    return m;
}

// Random point on the simplex, bounded away from its faces.
inline Vector random_simplex(Rng& rng, Index n) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = u(rng);
    return v / v.sum();
}

// Two Gaussian blobs in D dims, `per_class` samples each.
inline LabeledDataset two_blobs(Seed seed, Index per_class, Index dim, double separation, double spread = 1.0) {
    Rng rng = make_rng(seed, {0x7e57});
    std::normal_distribution<double> n(0.0, spread);
    LabeledDataset d;
    d.features.resize(2 * per_class, dim);
    d.labels.resize(static_cast<std::size_t>(2 * per_class));
    for (Index i = 0; i < 2 * per_class; ++i) {
        const int c = i < per_class ? 1 : 2;
        for (Index k = 0; k < dim; ++k) d.features(i, k) = n(rng);
        d.features(i, 0) += c == 1 ? -separation / 2 : separation / 2;
        d.labels[static_cast<std::size_t>(i)] = c;
    }
    d.class_count = 2;
    d.class_names = {"1", "2"};
    return d;
}

inline Codebook make_codebook(std::initializer_list<std::initializer_list<double>> rows, LabelVector labels) {
    Codebook cb;
    cb.prototypes.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
    Index r = 0;
    for (const auto& row : rows) {
        Index c = 0;
        for (double v : row) cb.prototypes(r, c++) = v;
        ++r;
    }
    cb.labels = std::move(labels);
    return cb;
}

// Central difference of f at every entry of `at`.
template <class Params>
Params central_difference(const std::function<double(const Params&)>& f, const Params& at, double h = 1e-6) {
    Params grad = Params::Zero(at.rows(), at.cols());
    Params p = at;
    for (Index i = 0; i < at.rows(); ++i) {
        for (Index j = 0; j < at.cols(); ++j) {
            const double keep = p(i, j);
            p(i, j) = keep + h;
            const double up = f(p);
            p(i, j) = keep - h;
            const double down = f(p);
            p(i, j) = keep;
            grad(i, j) = (up - down) / (2 * h);
        }
    }
    return grad;
}

// ||a - b|| / max(||a||, ||b||, floor).
template <class A, class B>
double relative_error(const A& a, const B& b, double floor = 1e-8) {
    const double scale = std::max({a.norm(), b.norm(), floor});
    return (a - b).norm() / scale;
}

}  // namespace testing
