#pragma once

#include "lvqkit/dataset.hpp"
#include "lvqkit/evaluation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace lvqkit {

enum class DatasetId { multimodal, image_segmentation, usps, usps_star, csv };

std::string to_string(DatasetId id);
/// Known ids; anything else is treated as a CSV path.
DatasetId dataset_id_from_string(const std::string& text);

/// The eleven classifiers of the standard comparison suite.
const std::vector<std::string>& table3_classifiers();

/// Default parameters for one classifier on one data set: eps0 = 0.05,
/// 2000 epochs, tau 1e-4 (multimodal) or 1e-3, per-set prototype counts,
/// softness, growth limits and metric rates. `class_count` sizes the defaults
/// for CSV data.
ClassifierSpec default_spec(Variant variant, DatasetId dataset, int class_count);

/// Specs for `names` (all of table3_classifiers() when empty).
std::vector<ClassifierSpec> table3_suite(DatasetId dataset, int class_count, const std::vector<std::string>& names = {});

/// Where the data for a suite comes from. Empty paths fall back to the
/// environment (LVQKIT_IMAGE_SEGMENTATION, LVQKIT_USPS) and then to the
/// bundled data directory.
struct DatasetSource {
    DatasetId id = DatasetId::multimodal;
    std::vector<std::filesystem::path> paths;
    LabelColumn label_column;
    Seed seed = 42;
    /// Size of the usps_star subset.
    Index star_size = 2000;
};

LabeledDataset load_suite_dataset(const DatasetSource& source);

/// Expected (N, C) for the fixed data sets; used by --check.
struct ExpectedShape {
    Index samples = 0;
    int classes = 0;
};
ExpectedShape expected_shape(DatasetId id);

/// Default location of the bundled Image Segmentation file.
std::filesystem::path default_image_segmentation_path();

}  // namespace lvqkit
