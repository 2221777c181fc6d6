#pragma once

#include <span>
#include <string>
#include <vector>

namespace lvqkit {

double mean_of(std::span<const double> v);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_std(std::span<const double> v);

/// Two-sided paired t-test on a - b.
struct PairedTest {
    double mean_diff = 0.0;
    double sd_diff = 0.0;
    double t = 0.0;
    int df = 0;
    double p = 1.0;
};

/// Zero spread: p = 1 when the mean difference is zero, else p = 0.
/// Throws ContractError on unequal lengths or fewer than two pairs.
PairedTest paired_t_test(std::span<const double> a, std::span<const double> b);

/// Pairwise paired t-tests with a Bonferroni-adjusted threshold.
struct SignificanceMatrix {
    double alpha = 0.05;
    /// alpha / number of pairs.
    double threshold = 0.0;
    std::size_t pair_count = 0;
    /// p[i][j]; the diagonal is NaN.
    std::vector<std::vector<double>> p;
    std::vector<std::vector<double>> t;
    std::vector<std::vector<bool>> significant;
};

SignificanceMatrix multi_compare(const std::vector<std::vector<double>>& fold_errors, double alpha = 0.05);

}  // namespace lvqkit
