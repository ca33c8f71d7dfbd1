// universal.hpp
// The optimal universal 1->2 cloner as an explicit 8x2 isometry from the
// input qubit into the (clone 1, clone 2, ancilla) space, plus accessors for
// symmetry, shrink factor and fidelities.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qclone/linalg.hpp"
#include "qclone/qmath.hpp"

namespace qclone::universal {

struct UniversalClonerConfig {
    double delta_a = 0.0;        // phase on the |00>|A> / |11>|A_perp> terms
    double delta_a_tilde = 0.0;  // phase on the (|01>+|10>) terms
    StateVector ancilla_a = StateVector::basis(2, 0);
    StateVector ancilla_a_perp = StateVector::basis(2, 1);
};

// Map from span{|0>,|1>} of the input qubit into the 3-qubit joint space.
struct ClonerIsometry {
    ComplexMatrix matrix;  // 8x2, columns are the images of |0> and |1>
    double coeff_a = 0.0;  // |a|, weight of the aligned |00>/|11> component
    double coeff_b = 0.0;  // |b|, weight of each (|01>+|10>)/cross component
    double coeff_c = 0.0;  // |c|, weight of the anti-aligned component
};

inline ClonerIsometry isometry_from_columns(const std::vector<Complex>& col0,
                                            const std::vector<Complex>& col1,
                                            double ortho_tol = 1e-12) {
    if (col0.size() != 8 || col1.size() != 8) {
        throw std::invalid_argument("isometry_from_columns: columns must have dimension 8");
    }
    double n0 = 0.0, n1 = 0.0;
    Complex dot = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        n0 += std::norm(col0[i]);
        n1 += std::norm(col1[i]);
        dot += std::conj(col0[i]) * col1[i];
    }
    if (std::abs(n0 - 1.0) > ortho_tol || std::abs(n1 - 1.0) > ortho_tol ||
        std::abs(dot) > ortho_tol) {
        throw std::invalid_argument("isometry_from_columns: columns are not orthonormal");
    }
    ClonerIsometry iso{ComplexMatrix(8, 2)};
    for (std::size_t i = 0; i < 8; ++i) {
        iso.matrix(i, 0) = col0[i];
        iso.matrix(i, 1) = col1[i];
    }
    // coefficient magnitudes of the ansatz blocks in column 0:
    // |00>-block -> a, |01>/|10>-blocks -> b_i, |11>-block -> c
    auto block_norm = [&](std::size_t b) {
        return std::sqrt(std::norm(col0[2 * b]) + std::norm(col0[2 * b + 1]));
    };
    iso.coeff_a = block_norm(0);
    iso.coeff_b = 0.5 * (block_norm(1) + block_norm(2));
    iso.coeff_c = block_norm(3);
    return iso;
}

// The optimal symmetric isotropic cloner acts as
//   |0> -> sqrt(2/3) e^{i da} |00>|A>      + sqrt(1/6) e^{i dt} (|01>+|10>) |A_perp>
//   |1> -> sqrt(2/3) e^{i dt} |11>|A_perp> + sqrt(1/6) e^{i da} (|01>+|10>) |A>
inline ClonerIsometry build_optimal_isometry(const UniversalClonerConfig& cfg = {}) {
    if (cfg.ancilla_a.dim() != 2 || cfg.ancilla_a_perp.dim() != 2) {
        throw std::invalid_argument("build_optimal_isometry: ancilla states must be qubits");
    }
    if (std::abs(cfg.ancilla_a.inner(cfg.ancilla_a_perp)) > 1e-12) {
        throw std::invalid_argument("build_optimal_isometry: ancilla basis is not orthonormal");
    }
    const double ca = std::sqrt(2.0 / 3.0);
    const double cb = std::sqrt(1.0 / 6.0);
    const Complex pa = std::polar(1.0, cfg.delta_a);
    const Complex pt = std::polar(1.0, cfg.delta_a_tilde);
    const auto& A = cfg.ancilla_a;
    const auto& P = cfg.ancilla_a_perp;

    std::vector<Complex> col0(8, Complex(0.0, 0.0)), col1(8, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < 2; ++k) {
        col0[0 + k] += ca * pa * A[k];        // |00>
        col0[2 + k] += cb * pt * P[k];        // |01>
        col0[4 + k] += cb * pt * P[k];        // |10>
        col1[6 + k] += ca * pt * P[k];        // |11>
        col1[2 + k] += cb * pa * A[k];        // |01>
        col1[4 + k] += cb * pa * A[k];        // |10>
    }
    return isometry_from_columns(col0, col1, 1e-14);
}

struct CloneOutput {
    DensityOperator rho1;
    DensityOperator rho2;
    DensityOperator rho_ancilla;
    StateVector joint;
};

inline CloneOutput clone(const ClonerIsometry& iso, const StateVector& psi) {
    if (psi.dim() != 2) throw std::invalid_argument("clone: input must be a qubit");
    std::vector<Complex> joint(8, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < 8; ++i) joint[i] = iso.matrix(i, 0) * psi[0] + iso.matrix(i, 1) * psi[1];
    StateVector out(std::move(joint));
    const auto full = DensityOperator::pure(out);
    return CloneOutput{partial_trace(full, {0}, {2, 2, 2}), partial_trace(full, {1}, {2, 2, 2}),
                       partial_trace(full, {2}, {2, 2, 2}), out};
}

// Common componentwise shrink ratio of both clone Bloch vectors. Throws when
// the ratios disagree, which signals a non-isotropic or asymmetric map.
inline double shrink_factor(const ClonerIsometry& iso, const StateVector& psi,
                            double agree_tol = 1e-10) {
    const auto s_in = bloch_from_density(DensityOperator::pure(psi));
    if (s_in.norm() < 1e-8) {
        throw std::invalid_argument("shrink_factor: input state has zero Bloch vector");
    }
    const auto out = clone(iso, psi);
    const auto s1 = bloch_from_density(out.rho1);
    const auto s2 = bloch_from_density(out.rho2);

    double ratio = 0.0;
    bool have = false;
    for (const auto& [in, o1, o2] :
         {std::tuple{s_in.x, s1.x, s2.x}, std::tuple{s_in.y, s1.y, s2.y},
          std::tuple{s_in.z, s1.z, s2.z}}) {
        if (std::abs(in) < 1e-8) continue;
        for (double o : {o1, o2}) {
            const double r = o / in;
            if (!have) {
                ratio = r;
                have = true;
            } else if (std::abs(r - ratio) > agree_tol) {
                throw std::runtime_error("shrink_factor: component ratios disagree (map is not "
                                         "a symmetric isotropic cloner)");
            }
        }
    }
    return ratio;
}

// F_g = Tr[(rho_psi x rho_psi) rho_12] with rho_12 the two-clone marginal.
inline double global_fidelity(const ClonerIsometry& iso, const StateVector& psi) {
    const auto out = clone(iso, psi);
    const auto rho12 = partial_trace(DensityOperator::pure(out.joint), {0, 1}, {2, 2, 2});
    const auto target = tensor(psi, psi);
    return fidelity_pure(rho12, target);
}

}  // namespace qclone::universal
