#include "lvqkit/trainer.hpp"

#include "lvqkit/error.hpp"
#include "lvqkit/implicit.hpp"
#include "lvqkit/margin.hpp"
#include "lvqkit/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

namespace lvqkit {

namespace {

constexpr std::uint64_t kInitStream = 0x1417;
constexpr std::uint64_t kOrderStream = 0x5e0;

std::string step_context(Variant v, int epoch, Index sample) {
    return to_string(v) + " epoch " + std::to_string(epoch) + " sample " + std::to_string(sample) + ": ";
}

/// Rethrows with training context, keeping the error category.
template <class F>
void with_prefix(const std::function<std::string()>& prefix, F&& f) {
    try {
        f();
    } catch (const ContractError& e) {
        throw ContractError(prefix() + e.what());
    } catch (const InvariantError& e) {
        throw InvariantError(prefix() + e.what());
    }
}

template <class F>
void with_context(Variant v, int epoch, Index sample, F&& f) {
    with_prefix([&] { return step_context(v, epoch, sample); }, std::forward<F>(f));
}

template <class F>
void with_epoch_context(Variant v, int epoch, F&& f) {
    with_prefix([&] { return to_string(v) + " epoch " + std::to_string(epoch) + ": "; }, std::forward<F>(f));
}

double sample_cost(Variant v, std::vector<double>& d, const LabelVector& labels, Label y, const SoftConfig& soft) {
    switch (family_of(v)) {
        case Family::heuristic: {
            return labels[static_cast<std::size_t>(nearest_index(d))] == y ? 0.0 : 1.0;
        }
        case Family::likelihood: return assignment_probs(d, labels, y, soft).log_ratio;
        case Family::margin: {
            if (v == Variant::h2mlvq) {
                double inv_p = 0.0, inv_m = 0.0;
                double n_p = 0.0, n_m = 0.0;
                for (std::size_t j = 0; j < d.size(); ++j) {
                    const double dj = std::max(d[j], kDistanceFloor);
                    if (labels[j] == y) {
                        inv_p += 1.0 / dj;
                        n_p += 1.0;
                    } else {
                        inv_m += 1.0 / dj;
                        n_m += 1.0;
                    }
                }
                if (n_p == 0.0 || n_m == 0.0) throw ContractError("class coverage violated");
                return sigmoid(margin_terms(n_p / inv_p, n_m / inv_m).mu);
            }
            const Winners w = require_winners(d, labels, y);
            return sigmoid(margin_terms(std::max(w.d_plus, 0.0), std::max(w.d_minus, 0.0)).mu);
        }
    }
    return 0.0;
}

double finish_cost(Variant v, double total, Index n) {
    return family_of(v) == Family::heuristic ? total / static_cast<double>(n) : total;
}

Vector per_feature_std(const RowMatrix& features) {
    const Vector mean = features.colwise().mean().transpose();
    Vector sd(features.cols());
    for (Index f = 0; f < features.cols(); ++f) {
        sd(f) = std::sqrt((features.col(f).array() - mean(f)).square().mean());
    }
    return sd;
}

std::vector<Index> class_members(const LabelVector& labels, Label c) {
    std::vector<Index> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == c) out.push_back(static_cast<Index>(i));
    }
    return out;
}

/// Misclassification bookkeeping between sgng insertions.
class GrowthTracker {
public:
    void reset(Index prototypes, int class_count) {
        class_errors_.assign(static_cast<std::size_t>(class_count), 0.0);
        protos_.assign(static_cast<std::size_t>(prototypes), Stats{});
    }

    void record(Index sample, Label y, const std::vector<double>& d, const LabelVector& labels) {
        const Winners w = find_winners(d, labels, y);
        if (w.plus < 0) return;
        Stats& s = protos_[static_cast<std::size_t>(w.plus)];
        s.quantization += w.d_plus;
        if (w.d_plus > s.far_any_d) {
            s.far_any = sample;
            s.far_any_d = w.d_plus;
        }
        if (labels[static_cast<std::size_t>(nearest_index(d))] != y) {
            class_errors_[static_cast<std::size_t>(y - 1)] += 1.0;
            s.errors += 1.0;
            if (w.d_plus > s.far_err_d) {
                s.far_err = sample;
                s.far_err_d = w.d_plus;
            }
        }
    }

    /// Adds one prototype of the worst class halfway between its worst
    /// prototype and that prototype's farthest misclassified sample.
    void insert(Codebook& cb, const LabeledDataset& data) {
        const int classes = static_cast<int>(class_errors_.size());
        std::vector<double> class_quant(static_cast<std::size_t>(classes), 0.0);
        for (Index j = 0; j < cb.size(); ++j) {
            class_quant[static_cast<std::size_t>(cb.labels[static_cast<std::size_t>(j)] - 1)] +=
                protos_[static_cast<std::size_t>(j)].quantization;
        }
        const bool any_error = std::any_of(class_errors_.begin(), class_errors_.end(), [](double e) { return e > 0; });
        const auto& key = any_error ? class_errors_ : class_quant;
        const Label c = static_cast<Label>(std::max_element(key.begin(), key.end()) - key.begin()) + 1;

        Index best = -1;
        for (Index j = 0; j < cb.size(); ++j) {
            if (cb.labels[static_cast<std::size_t>(j)] != c) continue;
            if (best < 0) {
                best = j;
                continue;
            }
            const Stats& a = protos_[static_cast<std::size_t>(j)];
            const Stats& b = protos_[static_cast<std::size_t>(best)];
            if (a.errors > b.errors || (a.errors == b.errors && a.quantization > b.quantization)) best = j;
        }
        Stats& s = protos_[static_cast<std::size_t>(best)];
        Index sample = s.errors > 0 ? s.far_err : s.far_any;
        if (sample < 0) {
            double far = -1.0;
            for (Index i : class_members(data.labels, c)) {
                const double di = (data.features.row(i) - cb.prototypes.row(best)).squaredNorm();
                if (di > far) {
                    far = di;
                    sample = i;
                }
            }
        }
        const Vector mid = 0.5 * (cb.row(best) + data.features.row(sample).transpose());
        cb.prototypes.conservativeResize(cb.size() + 1, Eigen::NoChange);
        cb.prototypes.row(cb.size() - 1) = mid.transpose();
        cb.labels.push_back(c);

        class_errors_[static_cast<std::size_t>(c - 1)] = std::max(0.0, class_errors_[static_cast<std::size_t>(c - 1)] - s.errors);
        s = Stats{};
        protos_.push_back(Stats{});
    }

private:
    struct Stats {
        double errors = 0.0;
        double quantization = 0.0;
        Index far_err = -1;
        double far_err_d = -1.0;
        Index far_any = -1;
        double far_any_d = -1.0;
    };
    std::vector<double> class_errors_;
    std::vector<Stats> protos_;
};

AdaptiveMetric initial_metric(Variant v, Index dim, Index prototypes) {
    switch (metric_kind_of(v)) {
        case MetricKind::relevance: return AdaptiveMetric::relevance(dim);
        case MetricKind::matrix: return AdaptiveMetric::matrix(dim);
        case MetricKind::local_relevance: return AdaptiveMetric::local_relevance(dim, prototypes);
        case MetricKind::local_matrix: return AdaptiveMetric::local_matrix(dim, prototypes);
        case MetricKind::kernel: {
            AdaptiveMetric m;
            m.kind = MetricKind::kernel;
            return m;
        }
        case MetricKind::relational: {
            AdaptiveMetric m;
            m.kind = MetricKind::relational;
            return m;
        }
        default: return AdaptiveMetric::euclidean();
    }
}

std::vector<Index> identity_order(Index n) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    return order;
}

void check_class_coverage(const LabelVector& labels, int class_count) {
    std::vector<bool> seen(static_cast<std::size_t>(class_count), false);
    for (Label y : labels) {
        if (y < 1 || y > class_count) throw ContractError("label outside 1..C");
        seen[static_cast<std::size_t>(y - 1)] = true;
    }
    for (int c = 0; c < class_count; ++c) {
        if (!seen[static_cast<std::size_t>(c)]) throw ContractError("class " + std::to_string(c + 1) + " is empty");
    }
}

TrainResult train_vectorial(const LabeledDataset& data, const ModelConfig& config, const Schedule& schedule,
                            const InitStrategy& init, Seed seed, const TrainOptions& options) {
    const Variant v = config.variant;
    Model model;
    model.variant = v;
    model.class_count = data.class_count;
    model.soft = config.soft;
    if (v == Variant::sgng) {
        InitStrategy start{InitKind::class_means, 1, 0.0};
        model.codebook = init_codebook(data, start, seed);
    } else {
        model.codebook = init_codebook(data, init, seed);
    }
    model.metric = initial_metric(v, data.dim(), model.codebook.size());
    if (family_of(v) == Family::likelihood) model.soft.validate(model.codebook.size());

    TrainResult result;
    Rng order_rng = make_rng(seed, {kOrderStream});
    std::vector<Index> order = identity_order(data.size());
    GrowthTracker tracker;
    std::vector<double> dist;
    Codebook& cb = model.codebook;
    AdaptiveMetric& metric = model.metric;

    for (int t = 0; t < schedule.t_max; ++t) {
        const double eps = eps_at(schedule, t);
        const double progress = schedule.t_max > 1 ? static_cast<double>(t) / (schedule.t_max - 1) : 1.0;
        MarginRates rates{eps, metric_rate_at(config.metric.relevance, schedule.tau, config.metric.t0, t),
                          OmegaRates{metric_rate_at(config.metric.omega.diagonal, schedule.tau, config.metric.t0, t),
                                     metric_rate_at(config.metric.omega.off_diagonal, schedule.tau, config.metric.t0, t)}};
        if (v == Variant::sgng) tracker.reset(cb.size(), data.class_count);
        std::shuffle(order.begin(), order.end(), order_rng);

        for (Index i : order) {
            const auto x = data.features.row(i).transpose();
            const Label y = data.labels[static_cast<std::size_t>(i)];
            with_context(v, t, i, [&] {
                switch (v) {
                    case Variant::lvq1: lvq1_step(cb, x, y, eps); break;
                    case Variant::lvq21: lvq21_step(cb, x, y, eps, config.lvq21); break;
                    case Variant::glvq: glvq_step(cb, x, y, eps); break;
                    case Variant::sng:
                    case Variant::sgng: {
                        if (v == Variant::sgng) {
                            dist = prototype_distances(x, cb);
                            tracker.record(i, y, dist, cb.labels);
                        }
                        Index same = 0;
                        for (Label l : cb.labels) same += (l == y);
                        sng_step(cb, x, y, eps, sng_range(same, progress));
                        break;
                    }
                    case Variant::h2mlvq:
                        // Harmonic distances early, hand over to the minimum linearly.
                        h2mlvq_step(cb, x, y, eps * (1.0 - progress));
                        glvq_step(cb, x, y, eps * progress);
                        break;
                    case Variant::grlvq:
                    case Variant::gmlvq:
                    case Variant::lgrlvq:
                    case Variant::lgmlvq: margin_step(cb, metric, x, y, rates); break;
                    case Variant::rslvq:
                    case Variant::mrslvq: likelihood_step(cb, metric, x, y, eps, rates.omega, model.soft); break;
                    default: throw ContractError("variant " + to_string(v) + " is not a vectorial variant");
                }
                if (options.check_every_step) {
                    cb.check_finite();
                    metric.check_normalized();
                }
            });
        }

        if (v == Variant::sgng) {
            const Index target = sgng_target(data.class_count, config.np_max, t + 1, schedule.t_max);
            while (cb.size() < target) tracker.insert(cb, data);
        }
        with_epoch_context(v, t, [&] {
            cb.check_finite();
            metric.check_normalized();
        });
        if (options.record_trace) result.trace.push_back(model_cost(model, data));
    }
    result.model = std::move(model);
    return result;
}

TrainResult train_kernel(const LabeledDataset& data, const ModelConfig& config, const Schedule& schedule,
                         const InitStrategy& init, Seed seed, const TrainOptions& options) {
    const Variant v = config.variant;
    const double sigma_k = config.sigma_k.value_or(std::sqrt(static_cast<double>(data.dim())));
    auto gram = std::make_shared<const KernelGram>(build_gram(data.features, sigma_k));
    Codebook start = init_coefficients(data.labels, data.class_count, init, seed);
    if (family_of(v) == Family::likelihood) config.soft.validate(start.size());
    KernelCodebook cb(gram, std::move(start.prototypes), start.labels);

    TrainResult result;
    Rng order_rng = make_rng(seed, {kOrderStream});
    std::vector<Index> order = identity_order(data.size());
    std::vector<double> dist;
    for (int t = 0; t < schedule.t_max; ++t) {
        const double eps = eps_at(schedule, t);
        std::shuffle(order.begin(), order.end(), order_rng);
        for (Index i : order) {
            const Label y = data.labels[static_cast<std::size_t>(i)];
            with_context(v, t, i, [&] {
                if (v == Variant::kglvq) {
                    kglvq_step(cb, i, y, eps);
                } else {
                    krslvq_step(cb, i, y, eps, config.soft);
                }
                if (options.check_every_step && !cb.coeffs().allFinite()) {
                    throw InvariantError("coefficients became non-finite");
                }
            });
        }
        if (options.refresh_interval > 0 && (t + 1) % options.refresh_interval == 0) cb.refresh();
        if (!cb.coeffs().allFinite()) throw InvariantError(to_string(v) + " epoch " + std::to_string(t) + ": coefficients became non-finite");
        if (options.record_trace) {
            double total = 0.0;
            for (Index i = 0; i < data.size(); ++i) {
                cb.distances(i, dist);
                for (auto& d : dist) d = std::max(d, 0.0);
                total += sample_cost(v, dist, cb.labels(), data.labels[static_cast<std::size_t>(i)], config.soft);
            }
            result.trace.push_back(finish_cost(v, total, data.size()));
        }
    }
    cb.refresh();

    Model& m = result.model;
    m.variant = v;
    m.class_count = data.class_count;
    m.codebook = Codebook{cb.coeffs(), cb.labels()};
    m.metric = initial_metric(v, data.dim(), cb.size());
    m.soft = config.soft;
    m.sigma_k = sigma_k;
    m.support = data.features;
    m.self_terms = cb.self_terms();
    return result;
}

}  // namespace

void Schedule::validate() const {
    if (!(eps0 > 0.0 && eps0 < 1.0)) throw ContractError("eps0 must lie in (0,1)");
    if (!(tau >= 0.0)) throw ContractError("tau must be non-negative");
    if (t0 < 0) throw ContractError("t0 must be non-negative");
    if (t_max < 0) throw ContractError("epoch count must be non-negative");
}

double eps_at(const Schedule& s, int t) {
    if (t < s.t0) return s.eps0;
    return s.eps0 / (1.0 + s.tau * static_cast<double>(t - s.t0));
}

double metric_rate_at(double rate0, double tau, int t0, int t) {
    if (t < t0) return 0.0;
    return rate0 / (1.0 + tau * static_cast<double>(t - t0));
}

std::string to_string(InitKind kind) {
    return kind == InitKind::class_means ? "class_means" : "data_mean_random";
}

InitKind init_kind_from_string(const std::string& text) {
    if (text == "class_means") return InitKind::class_means;
    if (text == "data_mean_random") return InitKind::data_mean_random;
    throw ContractError("unknown init strategy '" + text + "'");
}

void InitStrategy::validate() const {
    if (prototypes_per_class < 1) throw ContractError("prototypes per class must be at least 1");
    if (jitter && !(*jitter >= 0.0)) throw ContractError("jitter must be non-negative");
}

LabelVector round_robin_labels(int class_count, int per_class) {
    LabelVector labels;
    labels.reserve(static_cast<std::size_t>(class_count * per_class));
    for (int p = 0; p < per_class; ++p) {
        for (int c = 1; c <= class_count; ++c) labels.push_back(c);
    }
    return labels;
}

Codebook init_codebook(const LabeledDataset& data, const InitStrategy& init, Seed seed) {
    init.validate();
    check_class_coverage(data.labels, data.class_count);
    Codebook cb;
    cb.labels = round_robin_labels(data.class_count, init.prototypes_per_class);
    const Index m = static_cast<Index>(cb.labels.size());
    cb.prototypes.resize(m, data.dim());

    std::vector<Vector> centers;
    if (init.kind == InitKind::class_means) {
        for (int c = 1; c <= data.class_count; ++c) {
            Vector mean = Vector::Zero(data.dim());
            auto members = class_members(data.labels, c);
            for (Index i : members) mean += data.features.row(i).transpose();
            centers.push_back(mean / static_cast<double>(members.size()));
        }
    } else {
        centers.push_back(data.features.colwise().mean().transpose());
    }
    // Default spread relative to the feature scale; random starts need enough of it to break symmetry.
    const double rel = init.kind == InitKind::data_mean_random ? 0.1 : 1e-4;
    Vector sd = init.jitter ? Vector::Constant(data.dim(), *init.jitter) : Vector(rel * per_feature_std(data.features));

    Rng rng = make_rng(seed, {kInitStream});
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index j = 0; j < m; ++j) {
        const Label c = cb.labels[static_cast<std::size_t>(j)];
        const Vector& center = init.kind == InitKind::class_means ? centers[static_cast<std::size_t>(c - 1)] : centers[0];
        for (Index f = 0; f < data.dim(); ++f) {
            const double noise = normal(rng);
            cb.prototypes(j, f) = center(f) + (sd(f) > 0.0 ? sd(f) * noise : 0.0);
        }
    }
    return cb;
}

Codebook init_coefficients(const LabelVector& labels, int class_count, const InitStrategy& init, Seed seed) {
    init.validate();
    check_class_coverage(labels, class_count);
    Codebook cb;
    cb.labels = round_robin_labels(class_count, init.prototypes_per_class);
    const Index m = static_cast<Index>(cb.labels.size());
    const Index n = static_cast<Index>(labels.size());
    cb.prototypes = RowMatrix::Zero(m, n);
    const double rel = init.jitter.value_or(1e-4);
    Rng rng = make_rng(seed, {kInitStream});
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index j = 0; j < m; ++j) {
        const Label c = cb.labels[static_cast<std::size_t>(j)];
        for (Index i = 0; i < n; ++i) {
            const bool member = init.kind == InitKind::data_mean_random || labels[static_cast<std::size_t>(i)] == c;
            const double noise = normal(rng);
            if (member) cb.prototypes(j, i) = 1.0 + rel * noise;
        }
    }
    normalize_rows(cb.prototypes);
    return cb;
}

void ModelConfig::validate(int class_count) const {
    if (variant == Variant::lvq21) lvq21.validate();
    if (family_of(variant) == Family::likelihood && !(soft.sigma > 0.0)) {
        throw ContractError("softness sigma must be positive");
    }
    if (sigma_k && !(*sigma_k > 0.0)) throw ContractError("kernel width must be positive");
    if (variant == Variant::sgng && np_max < class_count) {
        throw ContractError("sgng needs np_max >= number of classes (" + std::to_string(class_count) + ")");
    }
}

Index sgng_target(int class_count, int np_max, int epochs_done, int t_max) {
    if (np_max <= class_count || t_max <= 0) return class_count;
    const double frac = std::min(1.0, 2.0 * static_cast<double>(epochs_done) / static_cast<double>(t_max));
    return class_count + static_cast<Index>(std::floor(static_cast<double>(np_max - class_count) * frac + 1e-12));
}

TrainResult train(const LabeledDataset& data, const ModelConfig& config, const Schedule& schedule,
                  const InitStrategy& init, Seed seed, const TrainOptions& options) {
    data.validate();
    schedule.validate();
    config.validate(data.class_count);
    switch (representation_of(config.variant)) {
        case Representation::vectorial: return train_vectorial(data, config, schedule, init, seed, options);
        case Representation::kernel: return train_kernel(data, config, schedule, init, seed, options);
        case Representation::relational:
            throw ContractError("variant " + to_string(config.variant) +
                                " requires dissimilarity input (an N x N matrix plus labels), got vectorial data");
    }
    throw ContractError("unknown representation");
}

TrainResult train(const DissimilarityData& data, const ModelConfig& config, const Schedule& schedule,
                  const InitStrategy& init, Seed seed, const TrainOptions& options) {
    data.validate();
    schedule.validate();
    config.validate(data.class_count);
    const Variant v = config.variant;
    if (representation_of(v) != Representation::relational) {
        throw ContractError("variant " + to_string(v) + " requires vectorial input, got a dissimilarity matrix");
    }
    auto dis = std::make_shared<const Matrix>(data.matrix);
    Codebook start = init_coefficients(data.labels, data.class_count, init, seed);
    if (family_of(v) == Family::likelihood) config.soft.validate(start.size());
    RelationalCodebook cb(dis, std::move(start.prototypes), start.labels);

    TrainResult result;
    Rng order_rng = make_rng(seed, {kOrderStream});
    std::vector<Index> order = identity_order(data.size());
    std::vector<double> dist;
    for (int t = 0; t < schedule.t_max; ++t) {
        const double eps = eps_at(schedule, t);
        std::shuffle(order.begin(), order.end(), order_rng);
        for (Index i : order) {
            const Label y = data.labels[static_cast<std::size_t>(i)];
            with_context(v, t, i, [&] {
                if (v == Variant::rglvq) {
                    rglvq_step(cb, i, y, eps);
                } else {
                    rrslvq_step(cb, i, y, eps, config.soft);
                }
            });
        }
        if (!cb.coeffs().allFinite()) throw InvariantError(to_string(v) + " epoch " + std::to_string(t) + ": coefficients became non-finite");
        if (options.record_trace) {
            double total = 0.0;
            for (Index i = 0; i < data.size(); ++i) {
                cb.distances(i, dist);
                total += sample_cost(v, dist, cb.labels(), data.labels[static_cast<std::size_t>(i)], config.soft);
            }
            result.trace.push_back(finish_cost(v, total, data.size()));
        }
    }

    Model& m = result.model;
    m.variant = v;
    m.class_count = data.class_count;
    m.codebook = Codebook{cb.coeffs(), cb.labels()};
    m.metric = initial_metric(v, 0, cb.size());
    m.soft = config.soft;
    m.self_terms = cb.half_self_terms();
    return result;
}

TrainResult sgng_train(const LabeledDataset& data, const ModelConfig& config, const Schedule& schedule, Seed seed,
                       const TrainOptions& options) {
    ModelConfig c = config;
    c.variant = Variant::sgng;
    return train(data, c, schedule, InitStrategy{InitKind::class_means, 1, 0.0}, seed, options);
}

double model_cost(const Model& model, const LabeledDataset& data) {
    double total = 0.0;
    for (Index i = 0; i < data.size(); ++i) {
        auto d = model.distances(data.features.row(i).transpose());
        if (model.representation() == Representation::kernel) {
            for (auto& v : d) v = std::max(v, 0.0);
        }
        total += sample_cost(model.variant, d, model.codebook.labels, data.labels[static_cast<std::size_t>(i)],
                             model.soft);
    }
    return finish_cost(model.variant, total, data.size());
}

std::string trace_to_csv(std::span<const double> trace) {
    std::string out = "epoch,cost\n";
    char buf[64];
    for (std::size_t t = 0; t < trace.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t + 1, trace[t]);
        out += buf;
    }
    return out;
}

void write_trace_csv(std::span<const double> trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << trace_to_csv(trace);
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace lvqkit
