#include "lvqkit/error.hpp"
#include "lvqkit/evaluation.hpp"
#include "lvqkit/stats.hpp"
#include "lvqkit/suite.hpp"
#include "lvqkit/trainer.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace lvqkit;

namespace {

LabeledDataset make_dataset(const RowMatrix& x, const LabelVector& y) {
    LabeledDataset d;
    d.features = x;
    d.labels = y;
    d.class_count = y.empty() ? 0 : *std::max_element(y.begin(), y.end());
    for (int c = 1; c <= d.class_count; ++c) d.class_names.push_back(std::to_string(c));
    return d;
}

ClassifierSpec make_spec(const std::string& variant, int class_count, std::optional<int> np, std::optional<double> eps0,
                         std::optional<double> tau, std::optional<int> epochs, std::optional<double> sigma,
                         std::optional<std::string> init, std::optional<double> jitter, std::optional<int> np_max) {
    ClassifierSpec s = default_spec(variant_from_string(variant), DatasetId::csv, class_count);
    if (np) s.init.prototypes_per_class = *np;
    if (eps0) s.schedule.eps0 = *eps0;
    if (tau) s.schedule.tau = *tau;
    if (epochs) s.schedule.t_max = *epochs;
    if (sigma) s.config.soft.sigma = *sigma;
    if (init) s.init.kind = init_kind_from_string(*init);
    if (jitter) s.init.jitter = *jitter;
    if (np_max) s.config.np_max = *np_max;
    return s;
}

LabelVector predict_all(const Model& m, const RowMatrix& x) {
    LabelVector out(static_cast<std::size_t>(x.rows()));
    for (Index i = 0; i < x.rows(); ++i) out[static_cast<std::size_t>(i)] = m.predict(x.row(i).transpose());
    return out;
}

py::dict report_dict(const CvReport& r) {
    py::dict d;
    d["names"] = r.names;
    d["fold_errors"] = r.fold_errors;
    d["means"] = r.means;
    d["stds"] = r.stds;
    d["markdown"] = emit_report(r, ReportFormat::markdown);
    d["csv"] = emit_report(r, ReportFormat::csv);
    if (r.significance) {
        d["threshold"] = r.significance->threshold;
        d["p"] = r.significance->p;
        d["significant"] = r.significance->significant;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_lvqkit, m) {
    m.doc() = "Learning vector quantization classifiers";

    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_ArithmeticError);

    m.def("variants", [] {
        std::vector<std::string> out;
        for (Variant v : all_variants()) out.push_back(to_string(v));
        return out;
    });

    m.def(
        "gen_multimodal",
        [](Seed seed) {
            auto d = gen_multimodal(seed);
            return py::make_tuple(d.features, d.labels);
        },
        py::arg("seed"));

    m.def(
        "load_csv",
        [](const std::string& path, std::optional<std::string> label_column) {
            LabelColumn col;
            if (label_column) col.name = *label_column;
            auto d = load_csv(path, col);
            return py::make_tuple(d.features, d.labels, d.class_names);
        },
        py::arg("path"), py::arg("label_column") = py::none());

    py::class_<Model>(m, "Model")
        .def_property_readonly("variant", [](const Model& mo) { return to_string(mo.variant); })
        .def_readonly("class_count", &Model::class_count)
        .def_property_readonly("prototypes", [](const Model& mo) { return mo.codebook.prototypes; })
        .def_property_readonly("labels", [](const Model& mo) { return mo.codebook.labels; })
        .def_property_readonly("relevances",
                               [](const Model& mo) {
                                   std::vector<Vector> out;
                                   for (const auto& r : mo.metric.relevances) out.push_back(r.weights());
                                   return out;
                               })
        .def_property_readonly("omegas",
                               [](const Model& mo) {
                                   std::vector<Matrix> out;
                                   for (const auto& o : mo.metric.omegas) out.push_back(o.omega());
                                   return out;
                               })
        .def("distances", [](const Model& mo, const Vector& x) { return mo.distances(x); }, py::arg("x"))
        .def("predict", &predict_all, py::arg("x"))
        .def("to_json", [](const Model& mo) { return to_json(mo); })
        .def_static("from_json", &model_from_json, py::arg("text"))
        .def("save", [](const Model& mo, const std::string& path) { save_model(mo, path); }, py::arg("path"))
        .def_static("load", [](const std::string& path) { return load_model(path); }, py::arg("path"));

    m.def(
        "train",
        [](const RowMatrix& x, const LabelVector& y, const std::string& variant, Seed seed, std::optional<int> np,
           std::optional<double> eps0, std::optional<double> tau, std::optional<int> epochs, std::optional<double> sigma,
           std::optional<std::string> init, std::optional<double> jitter, std::optional<int> np_max) {
            const auto data = make_dataset(x, y);
            const auto s = make_spec(variant, data.class_count, np, eps0, tau, epochs, sigma, init, jitter, np_max);
            py::gil_scoped_release release;
            auto r = s.config.variant == Variant::sgng ? sgng_train(data, s.config, s.schedule, seed)
                                                       : train(data, s.config, s.schedule, s.init, seed);
            return std::make_pair(std::move(r.model), std::move(r.trace));
        },
        py::arg("x"), py::arg("y"), py::arg("variant") = "glvq", py::arg("seed") = 42, py::arg("np") = py::none(),
        py::arg("eps0") = py::none(), py::arg("tau") = py::none(), py::arg("epochs") = py::none(),
        py::arg("sigma") = py::none(), py::arg("init") = py::none(), py::arg("jitter") = py::none(),
        py::arg("np_max") = py::none());

    m.def(
        "classification_error",
        [](const Model& mo, const RowMatrix& x, const LabelVector& y) {
            auto d = make_dataset(x, y);
            d.class_count = std::max(d.class_count, mo.class_count);
            return classification_error(mo, d);
        },
        py::arg("model"), py::arg("x"), py::arg("y"));

    m.def(
        "benchmark",
        [](const RowMatrix& x, const LabelVector& y, const std::vector<std::string>& classifiers, int folds, Seed seed,
           int jobs, std::optional<int> epochs) {
            const auto data = make_dataset(x, y);
            auto specs = table3_suite(DatasetId::csv, data.class_count, classifiers);
            if (epochs)
                for (auto& s : specs) s.schedule.t_max = *epochs;
            CvOptions opts;
            opts.folds = folds;
            opts.seed = seed;
            opts.jobs = jobs;
            CvReport r;
            {
                py::gil_scoped_release release;
                r = cross_validate(data, specs, opts);
            }
            return report_dict(r);
        },
        py::arg("x"), py::arg("y"), py::arg("classifiers") = std::vector<std::string>{}, py::arg("folds") = 10,
        py::arg("seed") = 42, py::arg("jobs") = 1, py::arg("epochs") = py::none());

    m.def(
        "paired_t_test",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            auto r = paired_t_test(a, b);
            py::dict d;
            d["t"] = r.t;
            d["df"] = r.df;
            d["p"] = r.p;
            d["mean_diff"] = r.mean_diff;
            return d;
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "multi_compare",
        [](const std::vector<std::vector<double>>& folds, double alpha) {
            auto s = multi_compare(folds, alpha);
            py::dict d;
            d["threshold"] = s.threshold;
            d["pair_count"] = s.pair_count;
            d["p"] = s.p;
            d["t"] = s.t;
            d["significant"] = s.significant;
            return d;
        },
        py::arg("fold_errors"), py::arg("alpha") = 0.05);
}
