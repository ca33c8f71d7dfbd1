// capacity.hpp
// Upper bound on the quantum capacity of the depolarizing qubit channel:
// Q = 0 for eta <= 2/3, Q(eta) <= 1 - H2(3 eta/4 + 1/4) above, plus the
// continuity-assumed linear bound Q <= 3 eta - 2.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace qclone::capacity {

inline double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::invalid_argument("binary_entropy: argument must lie in [0, 1]");
    }
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

enum class BoundRegime { Zero, Entropic };

struct CapacityBound {
    double eta = 0.0;
    double bound = 0.0;
    BoundRegime regime = BoundRegime::Zero;
    // min(entropic bound, 3 eta - 2); only reported when continuity of Q is
    // assumed, which the underlying argument does not prove
    std::optional<double> conditional_linear_bound;
};

inline CapacityBound q_upper_bound(double eta, bool assume_continuity = false) {
    if (eta < 0.0 || eta > 1.0) {
        throw std::invalid_argument("q_upper_bound: eta must lie in [0, 1]");
    }
    CapacityBound b;
    b.eta = eta;
    if (eta <= 2.0 / 3.0) {
        b.regime = BoundRegime::Zero;
        b.bound = 0.0;
    } else {
        b.regime = BoundRegime::Entropic;
        b.bound = 1.0 - binary_entropy(0.75 * eta + 0.25);
    }
    if (assume_continuity) {
        const double linear = eta <= 2.0 / 3.0 ? 0.0 : 3.0 * eta - 2.0;
        b.conditional_linear_bound = std::min(b.bound, linear);
    }
    return b;
}

}  // namespace qclone::capacity
