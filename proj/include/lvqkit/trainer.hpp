#pragma once

#include "lvqkit/dataset.hpp"
#include "lvqkit/heuristic.hpp"
#include "lvqkit/model.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace lvqkit {

/// eps(t) = eps0 / (1 + tau (t - t0)) for t >= t0, eps0 before; t counts epochs.
struct Schedule {
    double eps0 = 0.05;
    double tau = 0.0;
    int t0 = 0;
    int t_max = 2000;

    void validate() const;
};

double eps_at(const Schedule& s, int t);

/// Rates for the metric parameters. They follow the same decay as the
/// prototypes but stay at zero until epoch `t0`.
struct MetricRates {
    double relevance = 5e-6;
    OmegaRates omega{5e-5, 1e-6};
    int t0 = 100;
};

double metric_rate_at(double rate0, double tau, int t0, int t);

enum class InitKind { class_means, data_mean_random };

std::string to_string(InitKind kind);
InitKind init_kind_from_string(const std::string& text);

struct InitStrategy {
    InitKind kind = InitKind::class_means;
    int prototypes_per_class = 1;
    /// Standard deviation of the Gaussian jitter. Unset means a multiple of the
    /// per-feature standard deviation of the data: 0.1 for data_mean_random,
    /// 1e-4 for class_means. For coefficient rows it is
    /// a relative perturbation of each coefficient (default 1e-4).
    std::optional<double> jitter;

    void validate() const;
};

/// Prototype labels cycle through the classes: 1, 2, .., C, 1, 2, ..
LabelVector round_robin_labels(int class_count, int per_class);

Codebook init_codebook(const LabeledDataset& data, const InitStrategy& init, Seed seed);
/// Coefficient rows over the N samples for implicit variants: uniform over
/// the prototype's class (class_means) or over all samples, then jittered and
/// renormalized.
Codebook init_coefficients(const LabelVector& labels, int class_count, const InitStrategy& init, Seed seed);

struct ModelConfig {
    Variant variant = Variant::glvq;
    Lvq21Config lvq21 = Lvq21Config::from_threshold(0.01);
    MetricRates metric;
    SoftConfig soft;
    /// Kernel width; unset means sqrt(D).
    std::optional<double> sigma_k;
    /// Final prototype count for sgng.
    int np_max = 0;

    void validate(int class_count) const;
};

struct TrainOptions {
    bool record_trace = true;
    /// Epochs between full recomputations of the kernel caches.
    int refresh_interval = 100;
    /// Run the normalization and finiteness checks after every step.
    bool check_every_step = false;
};

struct TrainResult {
    Model model;
    /// One cost value per epoch: sum of phi(mu) for margin variants, the log
    /// likelihood ratio for likelihood variants, training error otherwise.
    std::vector<double> trace;
};

/// h2mlvq splits each step between the harmonic update, weighted 1 - p, and
/// the glvq update, weighted p, where p runs from 0 to 1 over the epochs.
TrainResult train(const LabeledDataset& data, const ModelConfig& config, const Schedule& schedule,
                  const InitStrategy& init, Seed seed, const TrainOptions& options = {});
TrainResult train(const DissimilarityData& data, const ModelConfig& config, const Schedule& schedule,
                  const InitStrategy& init, Seed seed, const TrainOptions& options = {});

/// Growing variant: starts from one prototype per class at the class mean and
/// grows to config.np_max.
TrainResult sgng_train(const LabeledDataset& data, const ModelConfig& config, const Schedule& schedule, Seed seed,
                       const TrainOptions& options = {});

/// Prototype count sgng should have reached after `epochs_done` epochs.
Index sgng_target(int class_count, int np_max, int epochs_done, int t_max);

/// Cost the trainer records for a model on a data set.
double model_cost(const Model& model, const LabeledDataset& data);

void write_trace_csv(std::span<const double> trace, const std::filesystem::path& path);
std::string trace_to_csv(std::span<const double> trace);

}  // namespace lvqkit
