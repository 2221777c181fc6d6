#include "lvqkit/cli.hpp"

#include "lvqkit/dataset.hpp"
#include "lvqkit/error.hpp"
#include "lvqkit/evaluation.hpp"
#include "lvqkit/suite.hpp"
#include "lvqkit/trainer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace lvqkit {

namespace {

/// Flags shared by train and benchmark that override suite defaults.
struct Overrides {
    std::optional<int> np;
    std::optional<double> eps0;
    std::optional<double> tau;
    std::optional<int> epochs;
    std::optional<double> sigma;
    std::optional<double> sigma_k;
    std::optional<double> omega_window;
    std::optional<int> np_max;
    std::optional<std::string> init;

    void add_to(CLI::App& app) {
        app.add_option("--np", np, "Prototypes per class")->check(CLI::PositiveNumber);
        app.add_option("--eps0", eps0, "Initial learning rate");
        app.add_option("--tau", tau, "Learning-rate decay per epoch");
        app.add_option("--epochs", epochs, "Training epochs")->check(CLI::NonNegativeNumber);
        app.add_option("--sigma", sigma, "Softness of the likelihood variants");
        app.add_option("--sigma-k", sigma_k, "Gaussian kernel width");
        app.add_option("--omega-window", omega_window, "LVQ2.1 window width omega in (0,1)");
        app.add_option("--np-max", np_max, "Final prototype count for sgng");
        app.add_option("--init", init, "class_means or data_mean_random");
    }

    void apply(ClassifierSpec& s) const {
        if (np) s.init.prototypes_per_class = *np;
        if (eps0) s.schedule.eps0 = *eps0;
        if (tau) s.schedule.tau = *tau;
        if (epochs) s.schedule.t_max = *epochs;
        if (sigma) s.config.soft.sigma = *sigma;
        if (sigma_k) s.config.sigma_k = *sigma_k;
        if (omega_window) s.config.lvq21 = Lvq21Config{*omega_window};
        if (np_max) s.config.np_max = *np_max;
        if (init) s.init.kind = init_kind_from_string(*init);
    }
};

Seed resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("LVQKIT_SEED"); env && *env) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw ContractError("LVQKIT_SEED must be a non-negative integer");
        return v;
    }
    return 42;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    f << text;
    if (!f) throw IoError("write failed for " + path.string());
}

LabelColumn label_column_from(const std::string& text) {
    if (text.empty()) return LabelColumn::last();
    const bool numeric = std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (numeric) return LabelColumn::by_index(std::stoi(text));
    return LabelColumn::by_name(text);
}

void check_shape(const LabeledDataset& data, DatasetId id) {
    const ExpectedShape want = expected_shape(id);
    if (want.samples == 0) return;
    if (data.size() != want.samples || data.class_count != want.classes) {
        throw ParseError(to_string(id) + " check failed: expected N=" + std::to_string(want.samples) +
                         " C=" + std::to_string(want.classes) + ", got N=" + std::to_string(data.size()) +
                         " C=" + std::to_string(data.class_count));
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int cmd_gen(const std::string& dataset, std::optional<std::uint64_t> seed_flag, const std::string& out_path,
            std::ostream& out) {
    if (dataset != "multimodal") throw ContractError("gen supports --dataset multimodal only");
    const Seed seed = resolve_seed(seed_flag);
    LabeledDataset data = gen_multimodal(seed);
    write_csv(data, out_path);
    out << "wrote " << data.size() << " samples (" << data.class_count << " classes) to " << out_path << "\n";
    return kExitOk;
}

struct TrainArgs {
    std::string model;
    std::string data;
    std::string labels;
    std::string label_column;
    std::string dataset;
    std::string out = "model.json";
    std::string trace;
    std::optional<std::uint64_t> seed;
    bool check = false;
};

int cmd_train(const TrainArgs& a, const Overrides& o, std::ostream& out) {
    const Variant variant = variant_from_string(a.model);
    const Representation rep = representation_of(variant);
    const Seed seed = resolve_seed(a.seed);

    if (rep == Representation::relational) {
        if (a.labels.empty()) {
            throw ContractError("variant " + a.model +
                                " requires dissimilarity input (--data <N x N matrix csv> --labels <labels csv>), "
                                "got vectorial data");
        }
        DissimilarityData dis = load_dissimilarity(a.data, a.labels);
        ClassifierSpec spec = default_spec(variant, DatasetId::csv, dis.class_count);
        o.apply(spec);
        auto result = train(dis, spec.config, spec.schedule, spec.init, seed);
        save_model(result.model, a.out);
        if (!a.trace.empty()) write_trace_csv(result.trace, a.trace);
        out << "trained " << a.model << ": " << result.model.codebook.size() << " prototypes, " << spec.schedule.t_max
            << " epochs -> " << a.out << "\n";
        return kExitOk;
    }
    if (!a.labels.empty()) {
        throw ContractError("variant " + a.model + " requires vectorial input; --labels is for dissimilarity data");
    }

    DatasetSource src;
    src.id = a.dataset.empty() ? DatasetId::csv : dataset_id_from_string(a.dataset);
    if (!a.data.empty()) src.paths.push_back(a.data);
    if (src.id == DatasetId::csv && src.paths.empty()) {
        if (a.dataset.empty()) throw ContractError("train needs --data <csv> or --dataset <id>");
        src.paths.push_back(a.dataset);
    }
    src.label_column = label_column_from(a.label_column);
    src.seed = seed;
    LabeledDataset data = load_suite_dataset(src);
    if (a.check) check_shape(data, src.id);

    ClassifierSpec spec = default_spec(variant, src.id, data.class_count);
    o.apply(spec);
    auto result = variant == Variant::sgng ? sgng_train(data, spec.config, spec.schedule, seed)
                                           : train(data, spec.config, spec.schedule, spec.init, seed);
    save_model(result.model, a.out);
    if (!a.trace.empty()) write_trace_csv(result.trace, a.trace);
    const double err = classification_error(result.model, data);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", err);
    out << "trained " << a.model << ": " << result.model.codebook.size() << " prototypes, " << spec.schedule.t_max
        << " epochs, training error " << buf << " -> " << a.out << "\n";
    return kExitOk;
}

struct BenchArgs {
    std::string suite = "table3";
    std::string dataset = "multimodal";
    std::string data;
    std::string label_column;
    std::string classifiers;
    std::string out;
    int folds = 10;
    int jobs = 1;
    double alpha = 0.05;
    std::optional<std::uint64_t> seed;
    bool check = false;
};

int cmd_benchmark(const BenchArgs& a, const Overrides& o, std::ostream& out) {
    if (a.suite != "table3") throw ContractError("unknown suite '" + a.suite + "' (available: table3)");
    const Seed seed = resolve_seed(a.seed);
    DatasetSource src;
    src.id = dataset_id_from_string(a.dataset);
    if (!a.data.empty()) src.paths.push_back(a.data);
    if (src.id == DatasetId::csv && src.paths.empty()) src.paths.push_back(a.dataset);
    src.label_column = label_column_from(a.label_column);
    src.seed = seed;
    LabeledDataset data = load_suite_dataset(src);
    if (a.check) check_shape(data, src.id);

    auto specs = table3_suite(src.id, data.class_count, split_list(a.classifiers));
    for (auto& s : specs) o.apply(s);
    CvOptions opts;
    opts.folds = a.folds;
    opts.seed = seed;
    opts.jobs = a.jobs;
    opts.alpha = a.alpha;
    CvReport report = cross_validate(data, specs, opts);
    report.dataset = src.id == DatasetId::csv ? std::filesystem::path(src.paths.front()).stem().string()
                                              : to_string(src.id);

    const std::string md = emit_report(report, ReportFormat::markdown);
    const std::string prefix = a.out.empty() ? "benchmark_" + report.dataset : a.out;
    write_text(prefix + ".md", md);
    write_text(prefix + ".csv", emit_report(report, ReportFormat::csv));
    write_text(prefix + ".pairs.csv", emit_pairs_csv(report));
    out << md;
    return kExitOk;
}

struct PlotArgs {
    std::string model;
    std::string data;
    std::string label_column;
    std::string out = "boundary.svg";
    int resolution = 200;
};

int cmd_plot(const PlotArgs& a, std::ostream& out) {
    Model model = load_model(a.model);
    if (model.representation() != Representation::vectorial) {
        throw ContractError("plot needs a vectorial model, got " + to_string(model.variant));
    }
    if (model.dim() != 2) {
        throw ContractError("plot needs a 2-D model, got " + std::to_string(model.dim()) + " features");
    }
    std::optional<LabeledDataset> data;
    if (!a.data.empty()) data = load_csv(a.data, label_column_from(a.label_column));
    const Bounds b = bounds_for(model, data ? &*data : nullptr);
    const BoundaryGrid grid = boundary_grid(model, b, a.resolution);
    write_text(a.out, boundary_svg(model, grid));
    out << "wrote " << grid.resolution * grid.resolution << " cells and " << model.codebook.size()
        << " prototypes to " << a.out << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learning vector quantization toolkit", "lvqkit"};
    app.require_subcommand(1);

    std::string gen_dataset = "multimodal";
    std::string gen_out;
    std::optional<std::uint64_t> gen_seed;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic data set as CSV");
    gen->add_option("--dataset", gen_dataset, "Data set id")->capture_default_str();
    gen->add_option("--seed", gen_seed, "Generator seed (falls back to LVQKIT_SEED)");
    gen->add_option("--out", gen_out, "Output CSV")->required();

    TrainArgs ta;
    Overrides train_over;
    auto* tr = app.add_subcommand("train", "Train one model");
    tr->add_option("--model", ta.model, "Variant tag, e.g. glvq, gmlvq, rslvq")->required();
    tr->add_option("--data", ta.data, "CSV data, or the dissimilarity matrix for relational variants");
    tr->add_option("--labels", ta.labels, "Label CSV for dissimilarity input");
    tr->add_option("--label-column", ta.label_column, "Label column name or 0-based index (default: last)");
    tr->add_option("--dataset", ta.dataset, "Built-in data set id; selects its default parameters");
    tr->add_option("--out", ta.out, "Model JSON")->capture_default_str();
    tr->add_option("--trace", ta.trace, "Write the per-epoch cost as CSV");
    tr->add_option("--seed", ta.seed, "Seed (falls back to LVQKIT_SEED)");
    tr->add_flag("--check", ta.check, "Validate N and C of built-in data sets");
    train_over.add_to(*tr);

    BenchArgs ba;
    Overrides bench_over;
    auto* bench = app.add_subcommand("benchmark", "Cross-validated comparison of classifiers");
    bench->add_option("--suite", ba.suite, "Parameter suite")->capture_default_str();
    bench->add_option("--dataset", ba.dataset, "multimodal, image_segmentation, usps, usps_star or a CSV path")
        ->capture_default_str();
    bench->add_option("--data", ba.data, "Data file (or USPS directory) overriding the default location");
    bench->add_option("--label-column", ba.label_column, "Label column for CSV data");
    bench->add_option("--classifiers", ba.classifiers, "Comma-separated variant tags (default: all eleven)");
    bench->add_option("--folds", ba.folds, "Cross-validation folds")->capture_default_str()->check(CLI::Range(2, 1000000));
    bench->add_option("--jobs", ba.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--alpha", ba.alpha, "Family-wise significance level")->capture_default_str();
    bench->add_option("--out", ba.out, "Output prefix for .md, .csv and .pairs.csv");
    bench->add_option("--seed", ba.seed, "Master seed (falls back to LVQKIT_SEED)");
    bench->add_flag("--check", ba.check, "Validate N and C of built-in data sets");
    bench_over.add_to(*bench);

    PlotArgs pa;
    auto* plot = app.add_subcommand("plot", "Decision regions of a 2-D model as SVG");
    plot->add_option("--model", pa.model, "Model JSON")->required();
    plot->add_option("--data", pa.data, "CSV whose extent widens the plot");
    plot->add_option("--label-column", pa.label_column, "Label column for --data");
    plot->add_option("--out", pa.out, "Output SVG")->capture_default_str();
    plot->add_option("--resolution", pa.resolution, "Grid cells per side")->capture_default_str()->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_dataset, gen_seed, gen_out, out);
        if (tr->parsed()) return cmd_train(ta, train_over, out);
        if (bench->parsed()) return cmd_benchmark(ba, bench_over, out);
        if (plot->parsed()) return cmd_plot(pa, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitContract;
}

}  // namespace lvqkit
