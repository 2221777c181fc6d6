#include "lvqkit/heuristic.hpp"

#include "lvqkit/error.hpp"

#include <algorithm>

namespace lvqkit {

void lvq1_step(Codebook& cb, const VectorRef& x, Label y, double eps) {
    auto d = prototype_distances(x, cb);
    const Index j = nearest_index(d);
    const double sign = cb.labels[static_cast<std::size_t>(j)] == y ? 1.0 : -1.0;
    cb.row(j) += sign * eps * (x - cb.row(j));
}

Lvq21Config Lvq21Config::from_threshold(double s) {
    if (!(s > 0.0 && s < 1.0)) throw ContractError("LVQ2.1 window threshold must lie in (0,1)");
    return Lvq21Config{(1.0 - s) / (1.0 + s)};
}

void Lvq21Config::validate() const {
    if (!(omega_window > 0.0 && omega_window < 1.0)) throw ContractError("LVQ2.1 window width must lie in (0,1)");
}

bool lvq21_step(Codebook& cb, const VectorRef& x, Label y, double eps, const Lvq21Config& cfg) {
    auto d = prototype_distances(x, cb);
    const Winners w = require_winners(d, cb.labels, y);
    double ratio = 0.0;
    if (w.d_plus > 0.0 && w.d_minus > 0.0) {
        ratio = std::min(w.d_minus / w.d_plus, w.d_plus / w.d_minus);
    } else if (w.d_plus == w.d_minus) {
        ratio = 1.0;
    }
    if (!(ratio > cfg.threshold())) return false;
    cb.row(w.plus) += eps * (x - cb.row(w.plus));
    cb.row(w.minus) -= eps * (x - cb.row(w.minus));
    return true;
}

}  // namespace lvqkit
