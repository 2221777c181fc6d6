#include "lvqkit/evaluation.hpp"

#include "lvqkit/error.hpp"
#include "lvqkit/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <memory>
#include <sstream>
#include <thread>

namespace lvqkit {

namespace {

constexpr std::uint64_t kCellStream = 0xce11;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

/// Squared Euclidean distances between rows of a and rows of b.
Matrix cross_sq_dist(const RowMatrix& a, const RowMatrix& b) {
    Matrix d(a.rows(), b.rows());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < b.rows(); ++j) d(i, j) = (a.row(i) - b.row(j)).squaredNorm();
    }
    return d;
}

struct FoldData {
    ZScoreResult z;
    std::shared_ptr<const DissimilarityData> train_dis;
    Matrix test_dis;
};

template <class Cell>
void run_cells(std::size_t count, int jobs, Cell&& cell) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < count; c = next++) {
            try {
                cell(c);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

template <class F>
void with_cell_context(const std::string& name, int fold, F&& f) {
    const std::string ctx = "classifier " + name + ", fold " + std::to_string(fold + 1) + ": ";
    try {
        f();
    } catch (const ContractError& e) {
        throw ContractError(ctx + e.what());
    } catch (const InvariantError& e) {
        throw InvariantError(ctx + e.what());
    } catch (const ParseError& e) {
        throw ParseError(ctx + e.what());
    } catch (const IoError& e) {
        throw IoError(ctx + e.what());
    }
}

CvReport empty_report(const std::vector<ClassifierSpec>& specs, int folds) {
    CvReport r;
    r.folds = folds;
    for (const auto& s : specs) r.names.push_back(s.name);
    r.fold_errors.assign(specs.size(), std::vector<double>(static_cast<std::size_t>(folds), 0.0));
    return r;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                          "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
const char* kStrong[] = {"#1b9e77", "#b8a000", "#7570b3", "#e7298a", "#1f78b4", "#d95f02",
                         "#66a61e", "#c51b7d", "#666666", "#6a3d9a", "#33a02c", "#e6ab02"};

}  // namespace

double classification_error(const Model& model, const LabeledDataset& test) {
    if (test.size() == 0) throw ContractError("test set is empty");
    Index wrong = 0;
    for (Index i = 0; i < test.size(); ++i) {
        if (model.predict(test.features.row(i).transpose()) != test.labels[static_cast<std::size_t>(i)]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(test.size());
}

double classification_error(const Model& model, const Matrix& test_to_train, const LabelVector& test_labels) {
    if (test_to_train.rows() == 0) throw ContractError("test set is empty");
    if (static_cast<Index>(test_labels.size()) != test_to_train.rows()) {
        throw ContractError("test label count does not match dissimilarity rows");
    }
    Index wrong = 0;
    for (Index i = 0; i < test_to_train.rows(); ++i) {
        if (model.predict_relational(test_to_train.row(i).transpose()) != test_labels[static_cast<std::size_t>(i)]) {
            ++wrong;
        }
    }
    return static_cast<double>(wrong) / static_cast<double>(test_to_train.rows());
}

Seed cell_seed(Seed master, int fold) {
    Rng rng = make_rng(master, {kCellStream, static_cast<std::uint64_t>(fold)});
    return rng();
}

void CvReport::summarize(double alpha) {
    means.clear();
    stds.clear();
    for (const auto& f : fold_errors) {
        means.push_back(mean_of(f));
        stds.push_back(sample_std(f));
    }
    significance.reset();
    if (fold_errors.size() >= 2 && folds >= 2) significance = multi_compare(fold_errors, alpha);
}

CvReport cross_validate(const LabeledDataset& data, const std::vector<ClassifierSpec>& specs, const CvOptions& options) {
    data.validate();
    if (options.jobs < 1) throw ContractError("jobs must be at least 1");
    const auto splits = kfold(data, options.folds, options.seed);
    bool any_relational = false;
    for (const auto& s : specs) {
        s.schedule.validate();
        s.init.validate();
        s.config.validate(data.class_count);
        any_relational = any_relational || representation_of(s.config.variant) == Representation::relational;
    }

    std::vector<FoldData> folds(splits.size());
    for (std::size_t f = 0; f < splits.size(); ++f) {
        folds[f].z = zscore_fit_apply(data.subset(splits[f].train_indices), data.subset(splits[f].test_indices));
        if (any_relational) {
            folds[f].train_dis = std::make_shared<const DissimilarityData>(vectorial_to_dissimilarity(folds[f].z.train));
            folds[f].test_dis = cross_sq_dist(folds[f].z.test.features, folds[f].z.train.features);
        }
    }

    CvReport report = empty_report(specs, options.folds);
    const std::size_t cells = specs.size() * splits.size();
    run_cells(cells, options.jobs, [&](std::size_t cell) {
        const std::size_t c = cell / splits.size();
        const std::size_t f = cell % splits.size();
        const ClassifierSpec& spec = specs[c];
        const FoldData& fd = folds[f];
        with_cell_context(spec.name, static_cast<int>(f), [&] {
            const Seed seed = cell_seed(options.seed, static_cast<int>(f));
            TrainOptions opts;
            opts.record_trace = false;
            double err = 0.0;
            if (representation_of(spec.config.variant) == Representation::relational) {
                auto trained = train(*fd.train_dis, spec.config, spec.schedule, spec.init, seed, opts);
                err = classification_error(trained.model, fd.test_dis, fd.z.test.labels);
            } else {
                auto trained = train(fd.z.train, spec.config, spec.schedule, spec.init, seed, opts);
                err = classification_error(trained.model, fd.z.test);
            }
            report.fold_errors[c][f] = err;
        });
    });
    report.summarize(options.alpha);
    return report;
}

CvReport cross_validate(const DissimilarityData& data, const std::vector<ClassifierSpec>& specs,
                        const CvOptions& options) {
    data.validate();
    for (const auto& s : specs) {
        if (representation_of(s.config.variant) != Representation::relational) {
            throw ContractError("variant " + to_string(s.config.variant) +
                                " requires vectorial input, got a dissimilarity matrix");
        }
        s.config.validate(data.class_count);
    }
    const auto splits = kfold(data.labels, data.class_count, options.folds, options.seed);
    CvReport report = empty_report(specs, options.folds);
    std::vector<DissimilarityData> train_sets;
    std::vector<Matrix> test_rows;
    std::vector<LabelVector> test_labels;
    for (const auto& s : splits) {
        train_sets.push_back(data.subset(s.train_indices));
        Matrix rows(static_cast<Index>(s.test_indices.size()), static_cast<Index>(s.train_indices.size()));
        LabelVector labels;
        for (std::size_t t = 0; t < s.test_indices.size(); ++t) {
            for (std::size_t r = 0; r < s.train_indices.size(); ++r) {
                rows(static_cast<Index>(t), static_cast<Index>(r)) = data.matrix(s.test_indices[t], s.train_indices[r]);
            }
            labels.push_back(data.labels[static_cast<std::size_t>(s.test_indices[t])]);
        }
        test_rows.push_back(std::move(rows));
        test_labels.push_back(std::move(labels));
    }
    const std::size_t cells = specs.size() * splits.size();
    run_cells(cells, options.jobs, [&](std::size_t cell) {
        const std::size_t c = cell / splits.size();
        const std::size_t f = cell % splits.size();
        with_cell_context(specs[c].name, static_cast<int>(f), [&] {
            TrainOptions opts;
            opts.record_trace = false;
            auto trained = train(train_sets[f], specs[c].config, specs[c].schedule, specs[c].init,
                                 cell_seed(options.seed, static_cast<int>(f)), opts);
            report.fold_errors[c][f] = classification_error(trained.model, test_rows[f], test_labels[f]);
        });
    });
    report.summarize(options.alpha);
    return report;
}

std::string emit_report(const CvReport& report, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::csv) {
        out = "classifier,mean,std";
        for (int f = 0; f < report.folds; ++f) out += ",fold_" + std::to_string(f + 1);
        out += "\n";
        for (std::size_t c = 0; c < report.size(); ++c) {
            out += report.names[c] + "," + fmt("%.17g", report.means[c]) + "," + fmt("%.17g", report.stds[c]);
            for (double e : report.fold_errors[c]) out += "," + fmt("%.17g", e);
            out += "\n";
        }
        return out;
    }
    const std::string column = report.dataset.empty() ? "error" : report.dataset;
    out = "| Classifier | " + column + " |\n|---|---|\n";
    for (std::size_t c = 0; c < report.size(); ++c) {
        out += "| " + report.names[c] + " | " + fmt("%.4f", report.means[c]) + " (" + fmt("%.4f", report.stds[c]) +
               ") |\n";
    }
    if (report.significance) {
        const auto& s = *report.significance;
        out += "\nPaired t-tests over " + std::to_string(report.folds) + " folds, " + std::to_string(s.pair_count) +
               " pairs, threshold " + fmt("%.6g", s.alpha) + "/" + std::to_string(s.pair_count) + " = " +
               fmt("%.4g", s.threshold) + ".\n\n";
        std::string lines;
        for (std::size_t i = 0; i < report.size(); ++i) {
            for (std::size_t j = i + 1; j < report.size(); ++j) {
                if (!s.significant[i][j]) continue;
                lines += "- " + report.names[i] + " vs " + report.names[j] + ": p = " + fmt("%.3g", s.p[i][j]) + "\n";
            }
        }
        out += lines.empty() ? "No significant pairs.\n" : "Significant pairs:\n\n" + lines;
    }
    return out;
}

std::string emit_pairs_csv(const CvReport& report) {
    std::string out = "a,b,t,p,significant\n";
    if (!report.significance) return out;
    const auto& s = *report.significance;
    for (std::size_t i = 0; i < report.size(); ++i) {
        for (std::size_t j = i + 1; j < report.size(); ++j) {
            out += report.names[i] + "," + report.names[j] + "," + fmt("%.17g", s.t[i][j]) + "," +
                   fmt("%.17g", s.p[i][j]) + "," + (s.significant[i][j] ? "1" : "0") + "\n";
        }
    }
    return out;
}

CvReport parse_report_csv(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line)) throw ParseError("report CSV is empty");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "classifier") throw ParseError("report CSV header is malformed");
    CvReport r;
    r.folds = static_cast<int>(header.size()) - 3;
    int row = 1;
    while (std::getline(ss, line)) {
        ++row;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) throw ParseError("report CSV row " + std::to_string(row) + " has wrong width");
        r.names.push_back(cells[0]);
        std::vector<double> folds;
        for (std::size_t k = 3; k < cells.size(); ++k) {
            char* end = nullptr;
            const double v = std::strtod(cells[k].c_str(), &end);
            if (end == cells[k].c_str() || *end != '\0') {
                throw ParseError("report CSV row " + std::to_string(row) + " column " + std::to_string(k + 1) +
                                 ": not a number");
            }
            folds.push_back(v);
        }
        r.fold_errors.push_back(std::move(folds));
    }
    r.summarize();
    return r;
}

BoundaryGrid boundary_grid(const Model& model, const Bounds& bounds, int resolution) {
    if (model.representation() != Representation::vectorial) {
        throw ContractError("boundary plots need a vectorial model, got " + to_string(model.variant));
    }
    if (model.dim() != 2) {
        throw ContractError("boundary plots need 2-D data, model has " + std::to_string(model.dim()) + " features");
    }
    if (resolution < 1) throw ContractError("resolution must be at least 1");
    if (!(bounds.x_max > bounds.x_min && bounds.y_max > bounds.y_min)) throw ContractError("empty plot bounds");
    BoundaryGrid g;
    g.bounds = bounds;
    g.resolution = resolution;
    g.labels.resize(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
    const double dx = (bounds.x_max - bounds.x_min) / resolution;
    const double dy = (bounds.y_max - bounds.y_min) / resolution;
    Vector x(2);
    for (int r = 0; r < resolution; ++r) {
        x(1) = bounds.y_max - (r + 0.5) * dy;
        for (int c = 0; c < resolution; ++c) {
            x(0) = bounds.x_min + (c + 0.5) * dx;
            g.labels[static_cast<std::size_t>(r * resolution + c)] = model.predict(x);
        }
    }
    return g;
}

Bounds bounds_for(const Model& model, const LabeledDataset* data) {
    if (model.dim() != 2) throw ContractError("bounds need 2-D data");
    double x0 = model.codebook.prototypes.col(0).minCoeff(), x1 = model.codebook.prototypes.col(0).maxCoeff();
    double y0 = model.codebook.prototypes.col(1).minCoeff(), y1 = model.codebook.prototypes.col(1).maxCoeff();
    if (data && data->size() > 0 && data->dim() == 2) {
        x0 = std::min(x0, data->features.col(0).minCoeff());
        x1 = std::max(x1, data->features.col(0).maxCoeff());
        y0 = std::min(y0, data->features.col(1).minCoeff());
        y1 = std::max(y1, data->features.col(1).maxCoeff());
    }
    const double px = std::max(0.1 * (x1 - x0), 1e-3), py = std::max(0.1 * (y1 - y0), 1e-3);
    return Bounds{x0 - px, x1 + px, y0 - py, y1 + py};
}

std::string boundary_svg(const Model& model, const BoundaryGrid& grid) {
    const int size = 600;
    const double cell = static_cast<double>(size) / grid.resolution;
    const Bounds& b = grid.bounds;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(size) +
           "\" height=\"" + std::to_string(size) + "\" viewBox=\"0 0 " + std::to_string(size) + " " +
           std::to_string(size) + "\">\n";
    out += "<g class=\"grid\" shape-rendering=\"crispEdges\">\n";
    for (int r = 0; r < grid.resolution; ++r) {
        for (int c = 0; c < grid.resolution; ++c) {
            const Label l = grid.at(r, c);
            out += "<rect class=\"cell\" x=\"" + fmt("%.3f", c * cell) + "\" y=\"" + fmt("%.3f", r * cell) +
                   "\" width=\"" + fmt("%.3f", cell) + "\" height=\"" + fmt("%.3f", cell) + "\" fill=\"" +
                   kPalette[static_cast<std::size_t>(l - 1) % 12] + "\"/>\n";
        }
    }
    out += "</g>\n<g class=\"prototypes\">\n";
    for (Index j = 0; j < model.codebook.size(); ++j) {
        const double px = (model.codebook.prototypes(j, 0) - b.x_min) / (b.x_max - b.x_min) * size;
        const double py = (b.y_max - model.codebook.prototypes(j, 1)) / (b.y_max - b.y_min) * size;
        const Label l = model.codebook.labels[static_cast<std::size_t>(j)];
        out += "<circle class=\"prototype\" cx=\"" + fmt("%.3f", px) + "\" cy=\"" + fmt("%.3f", py) +
               "\" r=\"5\" fill=\"" + kStrong[static_cast<std::size_t>(l - 1) % 12] +
               "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace lvqkit
