#pragma once

#include "lvqkit/dataset.hpp"
#include "lvqkit/model.hpp"
#include "lvqkit/stats.hpp"
#include "lvqkit/trainer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lvqkit {

/// Fraction of test samples whose winner label differs from the true label.
double classification_error(const Model& model, const LabeledDataset& test);
/// Relational models: row t of `test_to_train` holds the dissimilarities
/// between test sample t and every training sample.
double classification_error(const Model& model, const Matrix& test_to_train, const LabelVector& test_labels);

/// A named classifier configuration inside a benchmark.
struct ClassifierSpec {
    std::string name;
    ModelConfig config;
    Schedule schedule;
    InitStrategy init;
};

struct CvOptions {
    int folds = 10;
    Seed seed = 42;
    int jobs = 1;
    double alpha = 0.05;
};

struct CvReport {
    std::string dataset;
    int folds = 0;
    std::vector<std::string> names;
    /// fold_errors[c][f]
    std::vector<std::vector<double>> fold_errors;
    std::vector<double> means;
    std::vector<double> stds;
    /// Present when there are at least two classifiers.
    std::optional<SignificanceMatrix> significance;

    std::size_t size() const { return names.size(); }
    /// Recomputes means, stds and the significance matrix from fold_errors.
    void summarize(double alpha = 0.05);
};

/// Per fold: z-score on the training part, initialize, train, test. The same
/// folds serve every configuration. Cells run on `jobs` threads; each cell's
/// randomness derives from (seed, fold) only, so results do not depend on
/// the job count. Relational variants get squared Euclidean dissimilarities
/// of the standardized data.
CvReport cross_validate(const LabeledDataset& data, const std::vector<ClassifierSpec>& specs, const CvOptions& options);
/// Dissimilarity input: only relational variants apply. Test rows index the
/// full matrix.
CvReport cross_validate(const DissimilarityData& data, const std::vector<ClassifierSpec>& specs,
                        const CvOptions& options);

/// Seed of the training run for one fold.
Seed cell_seed(Seed master, int fold);

enum class ReportFormat { markdown, csv };

/// Markdown: one row per classifier with "mean (std)" at 4 decimals, then the
/// significant pairs. CSV: name, mean, std and every fold error at full
/// precision.
std::string emit_report(const CvReport& report, ReportFormat format);
/// Pairwise p-values and decisions as CSV.
std::string emit_pairs_csv(const CvReport& report);
/// Reads the CSV form back (fold vectors are exact).
CvReport parse_report_csv(const std::string& text);

struct Bounds {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
};

/// Predicted labels on a resolution x resolution grid of cell centers.
/// labels[r * resolution + c] is row r (y from top) and column c (x).
struct BoundaryGrid {
    Bounds bounds;
    int resolution = 0;
    std::vector<Label> labels;

    Label at(int row, int col) const { return labels[static_cast<std::size_t>(row * resolution + col)]; }
};

/// Requires a 2-D vectorial model.
BoundaryGrid boundary_grid(const Model& model, const Bounds& bounds, int resolution);
/// Bounding box of the prototypes (and optional data) padded by 10%.
Bounds bounds_for(const Model& model, const LabeledDataset* data = nullptr);
/// SVG 1.1: one rect per grid cell, one circle per prototype.
std::string boundary_svg(const Model& model, const BoundaryGrid& grid);

}  // namespace lvqkit
