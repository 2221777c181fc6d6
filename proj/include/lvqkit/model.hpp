#pragma once

#include "lvqkit/adaptive.hpp"
#include "lvqkit/codebook.hpp"
#include "lvqkit/likelihood.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace lvqkit {

enum class Variant {
    lvq1,
    lvq21,
    glvq,
    sng,
    sgng,
    h2mlvq,
    grlvq,
    gmlvq,
    lgrlvq,
    lgmlvq,
    kglvq,
    rglvq,
    rslvq,
    mrslvq,
    krslvq,
    rrslvq,
};

enum class Family { heuristic, margin, likelihood };
enum class Representation { vectorial, kernel, relational };

std::string to_string(Variant v);
/// Throws ContractError on an unknown tag.
Variant variant_from_string(const std::string& tag);
const std::vector<Variant>& all_variants();
Family family_of(Variant v);
Representation representation_of(Variant v);
/// Metric kind the variant trains; kernel and relational for implicit ones.
MetricKind metric_kind_of(Variant v);

/// A trained (or initialized) classifier in a self-contained form.
/// Implicit variants keep coefficient rows over the training samples in
/// `codebook.prototypes`; kernel models also keep those samples in `support`.
struct Model {
    Variant variant = Variant::glvq;
    int class_count = 0;
    Codebook codebook;
    AdaptiveMetric metric;
    SoftConfig soft;
    double sigma_k = 0.0;
    RowMatrix support;
    /// Kernel: gamma_j^T K gamma_j. Relational: 1/2 alpha_j^T D alpha_j.
    Vector self_terms;

    Representation representation() const { return representation_of(variant); }
    Index dim() const;

    /// Distances from a feature vector to every prototype (vectorial and kernel models).
    std::vector<double> distances(const VectorRef& x) const;
    /// Distances from a point given by its dissimilarities to the training
    /// samples (relational models).
    std::vector<double> relational_distances(const VectorRef& dissimilarity_row) const;

    Label predict(const VectorRef& x) const;
    Label predict_relational(const VectorRef& dissimilarity_row) const;

    /// Structural checks. Throws ContractError.
    void validate() const;
};

std::string to_json(const Model& model);
Model model_from_json(const std::string& text);
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace lvqkit
