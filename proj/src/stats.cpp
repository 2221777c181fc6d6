#include "lvqkit/stats.hpp"

#include "lvqkit/error.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>

namespace lvqkit {

double mean_of(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

PairedTest paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ContractError("fold count mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    if (a.size() < 2) throw ContractError("a paired t-test needs at least two folds");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];

    PairedTest r;
    r.df = static_cast<int>(diff.size()) - 1;
    r.mean_diff = mean_of(diff);
    r.sd_diff = sample_std(diff);
    // Spread below rounding noise of the mean counts as zero.
    const double noise = 1e-14 * (std::abs(r.mean_diff) + 1e-300);
    if (r.sd_diff <= noise) {
        r.sd_diff = 0.0;
        if (r.mean_diff == 0.0) {
            r.t = 0.0;
            r.p = 1.0;
        } else {
            r.t = std::copysign(std::numeric_limits<double>::infinity(), r.mean_diff);
            r.p = 0.0;
        }
        return r;
    }
    r.t = r.mean_diff / (r.sd_diff / std::sqrt(static_cast<double>(diff.size())));
    boost::math::students_t dist(static_cast<double>(r.df));
    r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
    r.p = std::min(1.0, r.p);
    return r;
}

SignificanceMatrix multi_compare(const std::vector<std::vector<double>>& fold_errors, double alpha) {
    const std::size_t n = fold_errors.size();
    if (n < 2) throw ContractError("multiple comparison needs at least two classifiers");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ContractError("alpha must lie in (0,1)");
    for (const auto& f : fold_errors) {
        if (f.size() != fold_errors[0].size()) throw ContractError("classifiers have different fold counts");
    }
    SignificanceMatrix s;
    s.alpha = alpha;
    s.pair_count = n * (n - 1) / 2;
    s.threshold = alpha / static_cast<double>(s.pair_count);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.p.assign(n, std::vector<double>(n, nan));
    s.t.assign(n, std::vector<double>(n, nan));
    s.significant.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const PairedTest r = paired_t_test(fold_errors[i], fold_errors[j]);
            s.p[i][j] = s.p[j][i] = r.p;
            s.t[i][j] = r.t;
            s.t[j][i] = -r.t;
            s.significant[i][j] = s.significant[j][i] = r.p < s.threshold;
        }
    }
    return s;
}

}  // namespace lvqkit
