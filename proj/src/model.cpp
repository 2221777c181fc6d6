#include "lvqkit/model.hpp"

#include "lvqkit/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace lvqkit {

namespace {

using nlohmann::json;

struct VariantInfo {
    Variant variant;
    const char* tag;
    Family family;
    MetricKind metric;
};

const VariantInfo kVariants[] = {
    {Variant::lvq1, "lvq1", Family::heuristic, MetricKind::euclidean},
    {Variant::lvq21, "lvq21", Family::heuristic, MetricKind::euclidean},
    {Variant::glvq, "glvq", Family::margin, MetricKind::euclidean},
    {Variant::sng, "sng", Family::margin, MetricKind::euclidean},
    {Variant::sgng, "sgng", Family::margin, MetricKind::euclidean},
    {Variant::h2mlvq, "h2mlvq", Family::margin, MetricKind::euclidean},
    {Variant::grlvq, "grlvq", Family::margin, MetricKind::relevance},
    {Variant::gmlvq, "gmlvq", Family::margin, MetricKind::matrix},
    {Variant::lgrlvq, "lgrlvq", Family::margin, MetricKind::local_relevance},
    {Variant::lgmlvq, "lgmlvq", Family::margin, MetricKind::local_matrix},
    {Variant::kglvq, "kglvq", Family::margin, MetricKind::kernel},
    {Variant::rglvq, "rglvq", Family::margin, MetricKind::relational},
    {Variant::rslvq, "rslvq", Family::likelihood, MetricKind::euclidean},
    {Variant::mrslvq, "mrslvq", Family::likelihood, MetricKind::matrix},
    {Variant::krslvq, "krslvq", Family::likelihood, MetricKind::kernel},
    {Variant::rrslvq, "rrslvq", Family::likelihood, MetricKind::relational},
};

const VariantInfo& info(Variant v) {
    for (const auto& i : kVariants) {
        if (i.variant == v) return i;
    }
    throw ContractError("unknown variant");
}

json matrix_to_json(const auto& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

template <class M>
M matrix_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of rows");
    const auto rows = static_cast<Index>(j.size());
    const Index cols = rows > 0 ? static_cast<Index>(j[0].size()) : 0;
    M m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            throw ParseError(std::string(what) + " rows have unequal lengths");
        }
        for (Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return m;
}

Vector vector_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
    return v;
}

}  // namespace

std::string to_string(Variant v) { return info(v).tag; }

Variant variant_from_string(const std::string& tag) {
    for (const auto& i : kVariants) {
        if (tag == i.tag) return i.variant;
    }
    throw ContractError("unknown model '" + tag + "'");
}

const std::vector<Variant>& all_variants() {
    static const std::vector<Variant> all = [] {
        std::vector<Variant> v;
        for (const auto& i : kVariants) v.push_back(i.variant);
        return v;
    }();
    return all;
}

Family family_of(Variant v) { return info(v).family; }
MetricKind metric_kind_of(Variant v) { return info(v).metric; }

Representation representation_of(Variant v) {
    switch (info(v).metric) {
        case MetricKind::kernel: return Representation::kernel;
        case MetricKind::relational: return Representation::relational;
        default: return Representation::vectorial;
    }
}

Index Model::dim() const {
    switch (representation()) {
        case Representation::vectorial: return codebook.dim();
        case Representation::kernel: return support.cols();
        case Representation::relational: return codebook.dim();
    }
    return codebook.dim();
}

std::vector<double> Model::distances(const VectorRef& x) const {
    const Index m = codebook.size();
    std::vector<double> d(static_cast<std::size_t>(m));
    switch (representation()) {
        case Representation::vectorial:
            if (x.size() != codebook.dim()) {
                throw ContractError("input has " + std::to_string(x.size()) + " features, model expects " +
                                    std::to_string(codebook.dim()));
            }
            for (Index j = 0; j < m; ++j) d[static_cast<std::size_t>(j)] = metric.distance(x, codebook.row(j), j);
            return d;
        case Representation::kernel: {
            if (x.size() != support.cols()) {
                throw ContractError("input has " + std::to_string(x.size()) + " features, model expects " +
                                    std::to_string(support.cols()));
            }
            const double scale = -1.0 / (2.0 * sigma_k * sigma_k);
            Vector k(support.rows());
            for (Index s = 0; s < support.rows(); ++s) {
                k(s) = std::exp(scale * (support.row(s).transpose() - x).squaredNorm());
            }
            for (Index j = 0; j < m; ++j) {
                d[static_cast<std::size_t>(j)] = 1.0 - 2.0 * codebook.prototypes.row(j).dot(k) + self_terms(j);
            }
            return d;
        }
        case Representation::relational:
            throw ContractError("variant " + to_string(variant) +
                                " needs dissimilarities to the training samples, not feature vectors");
    }
    return d;
}

std::vector<double> Model::relational_distances(const VectorRef& dissimilarity_row) const {
    if (representation() != Representation::relational) {
        throw ContractError("variant " + to_string(variant) + " does not take dissimilarity input");
    }
    if (dissimilarity_row.size() != codebook.dim()) {
        throw ContractError("dissimilarity row has " + std::to_string(dissimilarity_row.size()) +
                            " entries, model expects " + std::to_string(codebook.dim()));
    }
    std::vector<double> d(static_cast<std::size_t>(codebook.size()));
    for (Index j = 0; j < codebook.size(); ++j) {
        d[static_cast<std::size_t>(j)] = codebook.prototypes.row(j).dot(dissimilarity_row) - self_terms(j);
    }
    return d;
}

Label Model::predict(const VectorRef& x) const {
    auto d = distances(x);
    return codebook.labels[static_cast<std::size_t>(nearest_index(d))];
}

Label Model::predict_relational(const VectorRef& dissimilarity_row) const {
    auto d = relational_distances(dissimilarity_row);
    return codebook.labels[static_cast<std::size_t>(nearest_index(d))];
}

void Model::validate() const {
    if (class_count < 1) throw ContractError("model has no classes");
    codebook.validate(class_count);
    if (metric.kind != metric_kind_of(variant)) {
        throw ContractError("metric kind " + to_string(metric.kind) + " does not belong to variant " +
                            to_string(variant));
    }
    switch (representation()) {
        case Representation::vectorial: metric.validate(codebook.size(), codebook.dim()); break;
        case Representation::kernel:
            if (!(sigma_k > 0.0)) throw ContractError("kernel model needs a positive kernel width");
            if (support.rows() != codebook.dim()) throw ContractError("kernel support size does not match coefficients");
            [[fallthrough]];
        case Representation::relational:
            if (self_terms.size() != codebook.size()) throw ContractError("self terms missing for implicit model");
            break;
    }
    if (family_of(variant) == Family::likelihood) soft.validate(codebook.size());
}

std::string to_json(const Model& model) {
    json j;
    j["variant"] = to_string(model.variant);
    j["class_count"] = model.class_count;
    j["prototypes"] = matrix_to_json(model.codebook.prototypes);
    j["labels"] = model.codebook.labels;
    j["metric_kind"] = to_string(model.metric.kind);
    json params = json::object();
    if (!model.metric.relevances.empty()) {
        json rs = json::array();
        for (const auto& r : model.metric.relevances) rs.push_back(vector_to_json(r.weights()));
        params["relevances"] = std::move(rs);
    }
    if (!model.metric.omegas.empty()) {
        json os = json::array();
        for (const auto& o : model.metric.omegas) os.push_back(matrix_to_json(o.omega()));
        params["omegas"] = std::move(os);
    }
    if (family_of(model.variant) == Family::likelihood) {
        params["sigma"] = model.soft.sigma;
        params["priors"] = model.soft.priors;
        params["max_step"] = model.soft.max_step;
    }
    if (model.representation() == Representation::kernel) {
        params["sigma_k"] = model.sigma_k;
        params["support"] = matrix_to_json(model.support);
    }
    if (model.representation() != Representation::vectorial) params["self_terms"] = vector_to_json(model.self_terms);
    j["metric_params"] = std::move(params);
    return j.dump(1);
}

Model model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model file is not valid JSON: ") + e.what());
    }
    Model m;
    try {
        m.variant = variant_from_string(j.at("variant").get<std::string>());
        m.class_count = j.at("class_count").get<int>();
        m.codebook.prototypes = matrix_from_json<RowMatrix>(j.at("prototypes"), "prototypes");
        m.codebook.labels = j.at("labels").get<LabelVector>();
        m.metric.kind = metric_kind_from_string(j.at("metric_kind").get<std::string>());
        const json& p = j.at("metric_params");
        if (p.contains("relevances")) {
            for (const auto& r : p["relevances"]) {
                m.metric.relevances.push_back(RelevanceVector::checked(vector_from_json(r, "relevance")));
            }
        }
        if (p.contains("omegas")) {
            for (const auto& o : p["omegas"]) {
                m.metric.omegas.push_back(MetricMatrix::checked(matrix_from_json<Matrix>(o, "omega")));
            }
        }
        if (p.contains("sigma")) m.soft.sigma = p["sigma"].get<double>();
        if (p.contains("priors")) m.soft.priors = p["priors"].get<std::vector<double>>();
        if (p.contains("max_step")) m.soft.max_step = p["max_step"].get<double>();
        if (p.contains("sigma_k")) m.sigma_k = p["sigma_k"].get<double>();
        if (p.contains("support")) m.support = matrix_from_json<RowMatrix>(p["support"], "support");
        if (p.contains("self_terms")) m.self_terms = vector_from_json(p["self_terms"], "self_terms");
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed model file: ") + e.what());
    }
    m.validate();
    return m;
}

void save_model(const Model& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << to_json(model) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

}  // namespace lvqkit
