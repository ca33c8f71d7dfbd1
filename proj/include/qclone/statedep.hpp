// statedep.hpp
// Optimal state-dependent 1->2 cloner for a two-state ensemble
// |a> = cos(theta)|0> + sin(theta)|1>, |b> = sin(theta)|0> + cos(theta)|1>
// with overlap S = sin(2 theta): transformation coefficients, global and
// local fidelities, clone geometry, Bloch modulus and rotation angle.

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qclone/linalg.hpp"
#include "qclone/qmath.hpp"

namespace qclone::statedep {

inline constexpr double kPi = 3.14159265358979323846;

struct TwoStateEnsemble {
    double theta = 0.0;

    explicit TwoStateEnsemble(double theta_) : theta(theta_) {
        if (theta < 0.0 || theta > kPi / 4.0) {
            throw std::invalid_argument("TwoStateEnsemble: theta must lie in [0, pi/4]");
        }
    }

    double overlap() const { return std::sin(2.0 * theta); }  // S = <a|b>

    static TwoStateEnsemble from_overlap(double s) {
        if (s < 0.0 || s > 1.0) {
            throw std::invalid_argument("TwoStateEnsemble: overlap must lie in [0, 1]");
        }
        return TwoStateEnsemble(0.5 * std::asin(s));
    }
};

inline std::pair<StateVector, StateVector> input_states(const TwoStateEnsemble& e) {
    const double ct = std::cos(e.theta), st = std::sin(e.theta);
    return {StateVector({ct, st}), StateVector({st, ct})};
}

struct StateDepCoeffs {
    double a = 0.0, b = 0.0, c = 0.0;  // transformation coefficients
    double P = 0.0, Q = 0.0;
};

// Closed-form coefficients. The printed forms carry a removable 1/cos(2theta);
// here cos(2theta) = (cos t - sin t)(cos t + sin t) is cancelled analytically,
// which keeps the evaluation exact up to the theta = pi/4 endpoint.
inline StateDepCoeffs coeffs(const TwoStateEnsemble& e) {
    if (e.theta >= kPi / 4.0 - 1e-15) {
        throw std::invalid_argument("coeffs: theta = pi/4 is degenerate (identical inputs)");
    }
    const double s2 = std::sin(2.0 * e.theta);
    const double u = std::cos(e.theta) + std::sin(e.theta);  // sqrt(1 + S)
    StateDepCoeffs k;
    k.P = 0.5 * std::sqrt(1.0 + s2) / std::sqrt(1.0 + s2 * s2);
    k.Q = 0.5 / u;           // = sqrt(1-S)/(2 cos 2theta)
    k.a = k.P / u + 0.5;     // Q u = 1/2
    k.b = k.P * s2 / u;
    k.c = k.P / u - 0.5;
    return k;
}

enum class InputLabel { A, B };

struct CloneResult {
    StateVector joint;          // |alpha> or |beta> on the two clone qubits
    DensityOperator rho_clone;  // single-qubit marginal (same for both clones)
};

// U|a>|0> (resp. |b>|0>) through the transformation
//   U|00> = a|00> + b(|01>+|10>) + c|11>,  U|10> = c|00> + b(|01>+|10>) + a|11>.
// theta = pi/4 is handled as the analytic limit (identity cloning).
inline CloneResult apply(const TwoStateEnsemble& e, InputLabel which) {
    const double ct = std::cos(e.theta), st = std::sin(e.theta);
    const double w0 = (which == InputLabel::A) ? ct : st;
    const double w1 = (which == InputLabel::A) ? st : ct;
    std::vector<Complex> joint(4, Complex(0.0, 0.0));
    if (e.theta >= kPi / 4.0 - 1e-15) {
        // identical inputs clone perfectly: |alpha> = |aa>
        joint = {w0 * w0, w0 * w1, w1 * w0, w1 * w1};
    } else {
        const auto k = coeffs(e);
        joint[0] = k.a * w0 + k.c * w1;
        joint[1] = k.b * (w0 + w1);
        joint[2] = k.b * (w0 + w1);
        joint[3] = k.c * w0 + k.a * w1;
    }
    StateVector out(std::move(joint));
    const auto rho = partial_trace(DensityOperator::pure(out), {0}, {2, 2});
    return CloneResult{std::move(out), std::move(rho)};
}

// F_g = 1/2 (|<alpha|aa>|^2 + |<beta|bb>|^2)
inline double global_fidelity(const TwoStateEnsemble& e, const StateVector& alpha,
                              const StateVector& beta) {
    const auto [a, b] = input_states(e);
    const auto aa = tensor(a, a);
    const auto bb = tensor(b, b);
    return 0.5 * (std::norm(alpha.inner(aa)) + std::norm(beta.inner(bb)));
}

// Optimal global fidelity,
//   1/4 (sqrt(1+S^2) sqrt(1+S) + cos(2theta) sqrt(1-S))^2.
inline double global_fidelity_opt(const TwoStateEnsemble& e) {
    const double s2 = std::sin(2.0 * e.theta);
    const double c2 = std::cos(2.0 * e.theta);
    const double root = std::sqrt(1.0 + s2 * s2) * std::sqrt(1.0 + s2) + c2 * std::sqrt(1.0 - s2);
    return 0.25 * root * root;
}

struct CloneGeometry {
    double phi = 0.0;    // angle between |aa> and |bb>
    double gamma = 0.0;  // angle between |alpha> and |beta>
    double delta = 0.0;  // optimal angle between |aa> and |alpha>
};

inline CloneGeometry geometry(const TwoStateEnsemble& e) {
    const double s = e.overlap();
    CloneGeometry g;
    g.phi = std::acos(s * s);
    g.gamma = std::acos(s);
    g.delta = 0.5 * (g.phi - g.gamma);
    return g;
}

// F_g in the geometric picture, 1/2 (cos^2 delta + cos^2(phi - gamma - delta)).
inline double global_fidelity_geometric(const CloneGeometry& g) {
    const double c1 = std::cos(g.delta);
    const double c2 = std::cos(g.phi - g.gamma - g.delta);
    return 0.5 * (c1 * c1 + c2 * c2);
}

// Local fidelity of each clone against its input,
//   1/2 [1 + (1-S^2)/sqrt(1+S^2) + S^2 (1+S)/(1+S^2)].
inline double local_fidelity_1(double s) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("local_fidelity_1: S must be in [0,1]");
    const double s2 = s * s;
    return 0.5 * (1.0 + (1.0 - s2) / std::sqrt(1.0 + s2) + s2 * (1.0 + s) / (1.0 + s2));
}

// Modulus of the clone's Bloch vector.
inline double bloch_modulus(const TwoStateEnsemble& e) {
    const double s = e.overlap();
    const double c2 = std::cos(2.0 * e.theta);
    const double d = 1.0 + s * s;
    return std::sqrt(s * s * (1.0 + s) * (1.0 + s) / (d * d) + c2 * c2 / d);
}

// State-dependent rotation angle of the clone's Bloch vector,
//   arccos[(1/|s|) cos(2theta)/sqrt(1+S^2)] - 2 theta.
inline double rotation_angle(const TwoStateEnsemble& e) {
    const double s = e.overlap();
    const double mod = bloch_modulus(e);
    double arg = std::cos(2.0 * e.theta) / (mod * std::sqrt(1.0 + s * s));
    arg = std::max(-1.0, std::min(1.0, arg));
    return std::acos(arg) - 2.0 * e.theta;
}

}  // namespace qclone::statedep
