#pragma once

#include "lvqkit/codebook.hpp"

namespace lvqkit {

/// LVQ1: only the winner moves, toward x when its label matches y, away otherwise.
void lvq1_step(Codebook& cb, const VectorRef& x, Label y, double eps);

/// Window of LVQ2.1. The window half-width `omega` maps to the ratio
/// threshold s = (1 - omega) / (1 + omega).
struct Lvq21Config {
    double omega_window = 0.2;

    static Lvq21Config from_threshold(double s);
    double threshold() const { return (1.0 - omega_window) / (1.0 + omega_window); }
    void validate() const;
};

/// LVQ2.1: with w+ the nearest same-class and w- the nearest other-class
/// prototype, both move (w+ toward x, w- away) when
/// min(d-/d+, d+/d-) > s, i.e. x lies near the mid-plane. Returns whether an
/// update happened.
bool lvq21_step(Codebook& cb, const VectorRef& x, Label y, double eps, const Lvq21Config& cfg);

}  // namespace lvqkit
