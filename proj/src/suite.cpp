#include "lvqkit/suite.hpp"

#include "lvqkit/error.hpp"

#include <algorithm>
#include <cstdlib>

#ifndef LVQKIT_DATA_DIR
#define LVQKIT_DATA_DIR "data"
#endif

namespace lvqkit {

namespace {

std::vector<std::filesystem::path> env_paths(const char* name) {
    std::vector<std::filesystem::path> out;
    const char* v = std::getenv(name);
    if (!v || !*v) return out;
    std::string s(v);
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto colon = s.find(':', start);
        const std::string part = s.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
        if (!part.empty()) out.emplace_back(part);
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    return out;
}

/// A directory expands to the regular files inside it, sorted by name.
std::vector<std::filesystem::path> expand(const std::vector<std::filesystem::path>& paths) {
    std::vector<std::filesystem::path> out;
    for (const auto& p : paths) {
        if (std::filesystem::is_directory(p)) {
            std::vector<std::filesystem::path> files;
            for (const auto& e : std::filesystem::directory_iterator(p)) {
                if (e.is_regular_file()) files.push_back(e.path());
            }
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

std::string to_string(DatasetId id) {
    switch (id) {
        case DatasetId::multimodal: return "multimodal";
        case DatasetId::image_segmentation: return "image_segmentation";
        case DatasetId::usps: return "usps";
        case DatasetId::usps_star: return "usps_star";
        case DatasetId::csv: return "csv";
    }
    return "csv";
}

DatasetId dataset_id_from_string(const std::string& text) {
    for (auto id : {DatasetId::multimodal, DatasetId::image_segmentation, DatasetId::usps, DatasetId::usps_star,
                    DatasetId::csv}) {
        if (to_string(id) == text) return id;
    }
    return DatasetId::csv;
}

const std::vector<std::string>& table3_classifiers() {
    static const std::vector<std::string> names = {"lvq21",  "glvq",  "rslvq",  "sng",    "sgng",  "h2mlvq",
                                                   "grlvq", "gmlvq", "lgrlvq", "lgmlvq", "krslvq"};
    return names;
}

ClassifierSpec default_spec(Variant variant, DatasetId dataset, int class_count) {
    const bool mm = dataset == DatasetId::multimodal;
    const bool usps = dataset == DatasetId::usps || dataset == DatasetId::usps_star;
    ClassifierSpec s;
    s.name = to_string(variant);
    s.config.variant = variant;
    s.schedule = Schedule{0.05, mm ? 1e-4 : 1e-3, 0, 2000};
    if (mm) {
        s.init = InitStrategy{InitKind::data_mean_random, 15, std::nullopt};
    } else {
        s.init = InitStrategy{InitKind::class_means, usps ? 3 : 1, std::nullopt};
    }
    s.config.lvq21 = Lvq21Config::from_threshold(0.01);

    double rslvq_sigma = mm ? 1.9858 : 0.01;
    double krslvq_sigma = mm ? 1.0 : (usps ? 0.5 : 0.01);
    s.config.soft.sigma = variant == Variant::krslvq ? krslvq_sigma : rslvq_sigma;

    switch (dataset) {
        case DatasetId::multimodal: s.config.np_max = 45; break;
        case DatasetId::image_segmentation: s.config.np_max = 10; break;
        case DatasetId::usps:
        case DatasetId::usps_star: s.config.np_max = 30; break;
        case DatasetId::csv: s.config.np_max = 3 * class_count; break;
    }

    MetricRates& r = s.config.metric;
    switch (variant) {
        case Variant::grlvq:
            r.relevance = 5e-6;
            r.t0 = mm ? 500 : 100;
            break;
        case Variant::gmlvq:
        case Variant::mrslvq:
            r.omega = OmegaRates{5e-5, 1e-6};
            r.t0 = mm ? 500 : 100;
            break;
        case Variant::lgrlvq:
            r.relevance = 5e-5;
            r.t0 = 100;
            break;
        case Variant::lgmlvq:
            r.omega = OmegaRates{1e-3, 5e-5};
            r.t0 = 100;
            break;
        default: break;
    }
    return s;
}

std::vector<ClassifierSpec> table3_suite(DatasetId dataset, int class_count, const std::vector<std::string>& names) {
    const auto& list = names.empty() ? table3_classifiers() : names;
    std::vector<ClassifierSpec> specs;
    for (const auto& n : list) specs.push_back(default_spec(variant_from_string(n), dataset, class_count));
    return specs;
}

std::filesystem::path default_image_segmentation_path() {
    return std::filesystem::path(LVQKIT_DATA_DIR) / "segmentation.test";
}

LabeledDataset load_suite_dataset(const DatasetSource& source) {
    switch (source.id) {
        case DatasetId::multimodal: return gen_multimodal(source.seed);
        case DatasetId::image_segmentation: {
            auto paths = source.paths;
            if (paths.empty()) paths = env_paths("LVQKIT_IMAGE_SEGMENTATION");
            if (paths.empty()) paths.push_back(default_image_segmentation_path());
            return load_image_segmentation(paths.front());
        }
        case DatasetId::usps:
        case DatasetId::usps_star: {
            auto paths = source.paths.empty() ? env_paths("LVQKIT_USPS") : source.paths;
            if (paths.empty()) {
                throw IoError("USPS data not found: pass --data <file or directory> or set LVQKIT_USPS");
            }
            paths = expand(paths);
            LabeledDataset all = load_usps(paths);
            if (source.id == DatasetId::usps) return all;
            return stratified_subset(all, source.star_size, source.seed);
        }
        case DatasetId::csv: {
            if (source.paths.empty()) throw IoError("no CSV path given");
            return load_csv(source.paths.front(), source.label_column);
        }
    }
    throw ContractError("unknown data set");
}

ExpectedShape expected_shape(DatasetId id) {
    switch (id) {
        case DatasetId::multimodal: return {3600, 3};
        case DatasetId::image_segmentation: return {2100, 7};
        case DatasetId::usps: return {9298, 10};
        case DatasetId::usps_star: return {2000, 10};
        case DatasetId::csv: return {0, 0};
    }
    return {0, 0};
}

}  // namespace lvqkit
