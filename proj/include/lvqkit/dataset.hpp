#pragma once

#include "lvqkit/types.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lvqkit {

/// N samples x D features with labels in 1..C.
///
/// `class_names[c - 1]` keeps the original label token that was remapped to
/// class `c` when the data came from a file.
struct LabeledDataset {
    RowMatrix features;
    LabelVector labels;
    int class_count = 0;
    std::vector<std::string> class_names;

    Index size() const { return features.rows(); }
    Index dim() const { return features.cols(); }

    /// Throws ContractError when the invariants do not hold: N >= 1, labels
    /// in 1..C, every class present, finite features.
    void validate() const;

    /// Rows `indices` in the given order. Class count and names are kept.
    LabeledDataset subset(std::span<const Index> indices) const;

    std::vector<Index> class_sizes() const;
};

/// Symmetric N x N dissimilarities with zero diagonal plus labels.
struct DissimilarityData {
    Matrix matrix;
    LabelVector labels;
    int class_count = 0;
    std::vector<std::string> class_names;

    Index size() const { return matrix.rows(); }

    /// Symmetric within 1e-9, exact zero diagonal, finite non-negative entries.
    void validate() const;

    DissimilarityData subset(std::span<const Index> indices) const;
};

struct FoldSplit {
    std::vector<Index> train_indices;
    std::vector<Index> test_indices;
    int fold_id = 0;
};

/// Label column selector for CSV input: a header name or a 0-based index.
/// A default-constructed selector picks the last column.
struct LabelColumn {
    std::optional<std::string> name;
    std::optional<int> index;

    static LabelColumn last() { return {}; }
    static LabelColumn by_name(std::string n) { return {std::move(n), std::nullopt}; }
    static LabelColumn by_index(int i) { return {std::nullopt, i}; }
};

/// Comma-separated values with an optional header row. Labels are remapped to
/// 1..C: numerically sorted when every label parses as a number, otherwise
/// lexicographically. Row order is preserved.
LabeledDataset load_csv(const std::filesystem::path& path, const LabelColumn& column = {});
LabeledDataset parse_csv(const std::string& text, const LabelColumn& column = {});

/// Writes features then a `label` column, 17 significant digits, with header.
void write_csv(const LabeledDataset& data, const std::filesystem::path& path);
std::string to_csv(const LabeledDataset& data);

/// UCI `segmentation.test` layout: header lines, then `CLASS,v1..v19` rows.
/// Attributes 3-5 (1-based) are dropped. Expects 2100 rows and 7 classes.
LabeledDataset load_image_segmentation(const std::filesystem::path& path);
LabeledDataset parse_image_segmentation(const std::string& text);

/// USPS digits in the pre-extracted text format (`digit v1 .. v256` per line,
/// whitespace separated). Several files are concatenated in order.
LabeledDataset load_usps(std::span<const std::filesystem::path> paths);

/// Stratified random subset of `count` rows (class proportions kept within one
/// sample), rows kept in their original order.
LabeledDataset stratified_subset(const LabeledDataset& data, Index count, Seed seed);

/// Dissimilarity matrix CSV (N x N, no header) plus a label CSV (one label per row).
DissimilarityData load_dissimilarity(const std::filesystem::path& matrix_path,
                                     const std::filesystem::path& labels_path);

/// Three 2-D classes of 1200 samples each built from Gaussian sub-clusters:
/// class 1 has 15 sub-clusters (9 x 50, 3 x 150, 3 x 100), class 2 has 12
/// (3 x 100, 6 x 50, 3 x 200), class 3 has 3 clusters of 400. Centers are
/// uniform in the unit square, spread 0.025 per axis.
LabeledDataset gen_multimodal(Seed seed);

/// Sub-cluster sizes used by gen_multimodal, indexed by class.
const std::vector<std::vector<int>>& multimodal_cluster_sizes();

/// k stratified folds. Each index lands in exactly one test set; per-class test
/// counts differ by at most one across folds.
std::vector<FoldSplit> kfold(const LabeledDataset& data, int k, Seed seed);
std::vector<FoldSplit> kfold(const LabelVector& labels, int class_count, int k, Seed seed);

/// Per-feature standardization statistics.
struct ZScoreParams {
    Vector mean;
    Vector scale;  // standard deviation, 0 for constant features

    RowMatrix apply(const RowMatrix& features) const;
};

struct ZScoreResult {
    LabeledDataset train;
    LabeledDataset test;
    ZScoreParams params;
};

/// Fits mean/variance on `train` (population variance) and applies them to both
/// sets. Constant features map to 0.
ZScoreResult zscore_fit_apply(const LabeledDataset& train, const LabeledDataset& test);
ZScoreParams zscore_fit(const RowMatrix& features);

/// Squared Euclidean distances between all pairs of samples.
DissimilarityData vectorial_to_dissimilarity(const LabeledDataset& data);

}  // namespace lvqkit
