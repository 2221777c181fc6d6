#include "lvqkit/codebook.hpp"

#include "lvqkit/error.hpp"

#include <cmath>
#include <string>

namespace lvqkit {

void Codebook::validate(int class_count) const {
    if (size() < 1) throw ContractError("codebook is empty");
    if (static_cast<Index>(labels.size()) != size()) throw ContractError("codebook label count does not match prototypes");
    std::vector<bool> seen(static_cast<std::size_t>(class_count), false);
    for (Label c : labels) {
        if (c < 1 || c > class_count) throw ContractError("prototype label " + std::to_string(c) + " outside 1..C");
        seen[static_cast<std::size_t>(c - 1)] = true;
    }
    for (int c = 0; c < class_count; ++c) {
        if (!seen[static_cast<std::size_t>(c)]) throw ContractError("class " + std::to_string(c + 1) + " has no prototype");
    }
    if (!prototypes.allFinite()) throw ContractError("codebook contains non-finite entries");
}

void Codebook::check_finite() const {
    if (!prototypes.allFinite()) throw InvariantError("prototype entries became non-finite");
}

Winners find_winners(std::span<const double> distances, std::span<const Label> labels, Label y) {
    Winners w;
    for (std::size_t j = 0; j < distances.size(); ++j) {
        const double d = distances[j];
        if (labels[j] == y) {
            if (w.plus < 0 || d < w.d_plus) {
                w.plus = static_cast<Index>(j);
                w.d_plus = d;
            }
        } else if (w.minus < 0 || d < w.d_minus) {
            w.minus = static_cast<Index>(j);
            w.d_minus = d;
        }
    }
    return w;
}

Winners require_winners(std::span<const double> distances, std::span<const Label> labels, Label y) {
    Winners w = find_winners(distances, labels, y);
    if (w.plus < 0) throw ContractError("no prototype carries the sample's class " + std::to_string(y));
    if (w.minus < 0) throw ContractError("no prototype carries a class other than " + std::to_string(y));
    return w;
}

Index nearest_index(std::span<const double> distances) {
    Index best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t j = 0; j < distances.size(); ++j) {
        if (std::isnan(distances[j])) continue;
        if (!found || distances[j] < best_d) {
            best = static_cast<Index>(j);
            best_d = distances[j];
            found = true;
        }
    }
    return best;
}

}  // namespace lvqkit
