#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace lvqkit {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
// Samples and prototypes are stored one per row.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

// Class labels are contiguous integers 1..C.
using Label = int;
using LabelVector = std::vector<Label>;

using Seed = std::uint64_t;

}  // namespace lvqkit
