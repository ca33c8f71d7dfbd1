// eavesdrop.hpp
// Two-parameter eavesdropping interaction on a two-state ensemble, the
// optimal-eavesdropping constraint, the cloner-coincidence condition with
// fidelity F_l2, and the local-fidelity-optimal cloner F_l3.

#pragma once

#include <cmath>
#include <stdexcept>

#include "qclone/linalg.hpp"
#include "qclone/qmath.hpp"
#include "qclone/statedep.hpp"

namespace qclone::eavesdrop {

using statedep::TwoStateEnsemble;

struct EaveInteraction {
    double alpha = 0.0;  // disturbance parameter
    double phi = 0.0;    // interaction parameter
    double theta = 0.0;  // ensemble parameter

    double overlap() const { return std::sin(2.0 * theta); }
};

enum class SentState { A, B };

namespace detail {

// matrix elements with (ct, st) = (cos, sin) of the ensemble angle;
// the sent = b case interchanges them
inline DensityOperator probe(double ct, double st, double alpha, double phi) {
    const double c2t = ct * ct - st * st;
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5 * (1.0 + c2t * std::cos(2.0 * phi));
    m(1, 1) = 0.5 * (1.0 - c2t * std::cos(2.0 * phi));
    const double off = 0.25 * ((ct - st) * (ct - st) * std::sin(2.0 * (phi - alpha)) +
                               (ct + st) * (ct + st) * std::sin(2.0 * (phi + alpha)));
    m(0, 1) = off;
    m(1, 0) = off;
    return DensityOperator(std::move(m));
}

inline DensityOperator receiver(double ct, double st, double alpha, double phi) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    ComplexMatrix m(2, 2);
    m(0, 0) = ct * ct * ca * ca + st * st * sa * sa;
    m(1, 1) = st * st * ca * ca + ct * ct * sa * sa;
    const double off = ct * st * std::sin(2.0 * phi) * std::cos(2.0 * alpha) +
                       0.5 * std::cos(2.0 * phi) * std::sin(2.0 * alpha);
    m(0, 1) = off;
    m(1, 0) = off;
    return DensityOperator(std::move(m));
}

}  // namespace detail

inline DensityOperator probe_density(const EaveInteraction& i, SentState sent) {
    const double ct = std::cos(i.theta), st = std::sin(i.theta);
    return sent == SentState::A ? detail::probe(ct, st, i.alpha, i.phi)
                                : detail::probe(st, ct, i.alpha, i.phi);
}

inline DensityOperator receiver_density(const EaveInteraction& i, SentState sent) {
    const double ct = std::cos(i.theta), st = std::sin(i.theta);
    return sent == SentState::A ? detail::receiver(ct, st, i.alpha, i.phi)
                                : detail::receiver(st, ct, i.alpha, i.phi);
}

// F(alpha, phi) = cos^2 a + (S/2) cos2phi sin2a - (S^2/2)(1 - sin2phi) cos2a,
// the fidelity between sender and receiver states.
inline double eave_fidelity(const EaveInteraction& i) {
    const double s = i.overlap();
    const double ca = std::cos(i.alpha);
    return ca * ca + 0.5 * s * std::cos(2.0 * i.phi) * std::sin(2.0 * i.alpha) -
           0.5 * s * s * (1.0 - std::sin(2.0 * i.phi)) * std::cos(2.0 * i.alpha);
}

// Optimal-eavesdropping relation tan2a = S cos2phi / (1 - S^2 (1 - sin2phi)),
// principal branch alpha in (-pi/4, pi/4].
inline double optimal_alpha(double phi, double s) {
    const double num = s * std::cos(2.0 * phi);
    const double den = 1.0 - s * s * (1.0 - std::sin(2.0 * phi));
    if (std::abs(num) < 1e-300 && std::abs(den) < 1e-300) {
        throw std::invalid_argument("optimal_alpha: relation is indeterminate (0/0)");
    }
    return 0.5 * std::atan2(num, den);
}

// Root x = sin2phi in [0,1] of (S+S^2) x^2 + (1-S^2) x - S = 0; the other
// root is negative for S in (0,1].
inline double cloner_x(double s) {
    if (s <= 0.0 || s > 1.0) {
        throw std::invalid_argument("cloner_x: S must lie in (0, 1]");
    }
    const double qa = s + s * s;
    const double qb = 1.0 - s * s;
    const double qc = -s;
    const double disc = std::sqrt(qb * qb - 4.0 * qa * qc);
    const double x = (-qb + disc) / (2.0 * qa);
    return x;
}

// Closed form for the local fidelity of the eavesdropping-derived cloner.
inline double local_fidelity_2(double s) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("local_fidelity_2: S must be in [0,1]");
    if (s == 0.0) return 1.0;
    const double s2 = s * s, s3 = s2 * s, s4 = s2 * s2;
    const double inner = (1.0 + s) * (1.0 - s + 3.0 * s2 + s3);
    const double t = (1.0 - 2.0 * s2 + 2.0 * s3 + s4) + (1.0 - s2) * std::sqrt(inner);
    return 0.5 + 0.25 * std::sqrt(2.0) * std::sqrt(t);
}

struct ClonerConditionReport {
    double s = 0.0;
    double alpha = 0.0;            // = phi at the coincidence point
    double phi = 0.0;
    double max_mismatch_a = 0.0;   // max |rho^E_a - rho^A_a| elementwise
    double max_mismatch_b = 0.0;
    double perturbed_mismatch = 0.0;  // mismatch at phi + 0.05
    bool condition_holds = false;
    bool perturbation_detected = false;
};

// At the quadratic root with cos2phi = cos2alpha the interaction is exactly a
// cloner (probe state = receiver state); a perturbed phi must break it.
inline ClonerConditionReport cloner_condition_check(double s) {
    if (s <= 0.0 || s >= 1.0) {
        throw std::invalid_argument("cloner_condition_check: S must lie in (0, 1)");
    }
    ClonerConditionReport rep;
    rep.s = s;
    rep.phi = 0.5 * std::asin(cloner_x(s));
    rep.alpha = rep.phi;
    const EaveInteraction at{rep.alpha, rep.phi, 0.5 * std::asin(s)};
    for (auto sent : {SentState::A, SentState::B}) {
        const double mism =
            (probe_density(at, sent).matrix() - receiver_density(at, sent).matrix()).max_abs();
        (sent == SentState::A ? rep.max_mismatch_a : rep.max_mismatch_b) = mism;
    }
    const EaveInteraction off{rep.alpha, rep.phi + 0.05, 0.5 * std::asin(s)};
    rep.perturbed_mismatch =
        (probe_density(off, SentState::A).matrix() - receiver_density(off, SentState::A).matrix())
            .max_abs();
    rep.condition_holds = rep.max_mismatch_a < 1e-10 && rep.max_mismatch_b < 1e-10;
    rep.perturbation_detected = rep.perturbed_mismatch > 1e-4;
    return rep;
}

// Maximizer sin2phi = (1/4S)(-1 + S + sqrt(1 - 2S + 9S^2)) of the phi = alpha
// fidelity.
inline double sin2phi_opt(double s) {
    if (s <= 0.0 || s > 1.0) throw std::invalid_argument("sin2phi_opt: S must lie in (0, 1]");
    const double r = std::sqrt(1.0 - 2.0 * s + 9.0 * s * s);
    // (-1 + S + r)/(4S): rationalized for small S where -1 + S + r cancels
    if (s < 0.25) {
        const double num = (r * r - (1.0 - s) * (1.0 - s)) / (r + 1.0 - s);  // = -1 + s + r
        return num / (4.0 * s);
    }
    return (-1.0 + s + r) / (4.0 * s);
}

// F(phi) at alpha = phi:  1/2 + (1+S)/2 [(1-S) cos2phi + (S/2) sin4phi].
inline double fidelity_phi_family(double phi, double s) {
    return 0.5 + 0.5 * (1.0 + s) *
                     ((1.0 - s) * std::cos(2.0 * phi) + 0.5 * s * std::sin(4.0 * phi));
}

// Optimal local fidelity of the state-dependent cloner family. The printed
// closed form has a 1/S cancellation; for small S the inner radicand
// u = -1 + 2S + 3S^2 + (1-S) r is rewritten as 16 S^2 (1-2S)/(B - A) with
// A = -1 + 2S + 3S^2, B = (1-S) r, which cancels the 1/S analytically.
inline double local_fidelity_3(double s) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("local_fidelity_3: S must be in [0,1]");
    if (s == 0.0) return 1.0;
    const double r = std::sqrt(1.0 - 2.0 * s + 9.0 * s * s);
    const double pref = std::sqrt(2.0) * (1.0 + s) * (3.0 - 3.0 * s + r);
    const double a = -1.0 + 2.0 * s + 3.0 * s * s;
    if (a < 0.0) {  // S < 1/3: stable branch, the 4S/32S factor cancelled
        const double b = (1.0 - s) * r;
        return 0.5 + pref * std::sqrt((1.0 - 2.0 * s) / (b - a)) / 8.0;
    }
    const double u = a + (1.0 - s) * r;
    return 0.5 + pref * std::sqrt(u) / (32.0 * s);
}

}  // namespace qclone::eavesdrop
