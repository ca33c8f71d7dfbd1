// qmath.hpp
// Tensor products, partial traces, Bloch-sphere conversions, fidelities and
// Haar-random qubit sampling on top of the linalg carriers.
//
// Qubit ordering convention: subsystem 1 is the most significant index, so
// |q1 q2 q3> maps to index 4*q1 + 2*q2 + q3.

#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qclone/linalg.hpp"

namespace qclone {

inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const Complex aij = a(i1, j1);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    m(i1 * b.rows() + i2, j1 * b.cols() + j2) = aij * b(i2, j2);
        }
    return m;
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a[i] * b[j];
    return StateVector(std::move(amps));
}

// Reduced density operator on the kept subsystems. `dims` lists the
// subsystem dimensions most-significant first and must multiply to rho.dim.
inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const std::vector<std::size_t>& keep,
                                     const std::vector<std::size_t>& dims) {
    const std::size_t ns = dims.size();
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    if (total != rho.dim()) {
        throw std::invalid_argument("partial_trace: subsystem dims do not multiply to rho.dim");
    }
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
    std::vector<bool> kept(ns, false);
    for (auto k : keep) {
        if (k >= ns) throw std::invalid_argument("partial_trace: keep index out of range");
        kept[k] = true;
    }

    std::vector<std::size_t> stride(ns, 1);
    for (std::size_t s = ns; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

    std::vector<std::size_t> keep_idx, trace_idx;
    for (std::size_t s = 0; s < ns; ++s) (kept[s] ? keep_idx : trace_idx).push_back(s);

    std::size_t kdim = 1, tdim = 1;
    for (auto s : keep_idx) kdim *= dims[s];
    for (auto s : trace_idx) tdim *= dims[s];

    // decompose a flat index over a subsystem subset into a full-space offset
    auto offset = [&](const std::vector<std::size_t>& subs, std::size_t flat) {
        std::size_t off = 0;
        for (std::size_t s = subs.size(); s-- > 0;) {
            const std::size_t d = dims[subs[s]];
            off += (flat % d) * stride[subs[s]];
            flat /= d;
        }
        return off;
    };

    ComplexMatrix out(kdim, kdim);
    for (std::size_t i = 0; i < kdim; ++i) {
        const std::size_t oi = offset(keep_idx, i);
        for (std::size_t j = 0; j < kdim; ++j) {
            const std::size_t oj = offset(keep_idx, j);
            Complex s = 0.0;
            for (std::size_t t = 0; t < tdim; ++t) {
                const std::size_t ot = offset(trace_idx, t);
                s += rho.matrix()(oi + ot, oj + ot);
            }
            out(i, j) = s;
        }
    }
    return DensityOperator(std::move(out));
}

inline BlochVector bloch_from_density(const DensityOperator& rho) {
    if (rho.dim() != 2) throw std::invalid_argument("bloch_from_density: needs a 2x2 operator");
    BlochVector s;
    s.x = (rho.matrix() * pauli_x()).trace().real();
    s.y = (rho.matrix() * pauli_y()).trace().real();
    s.z = (rho.matrix() * pauli_z()).trace().real();
    return s;
}

inline DensityOperator density_from_bloch(const BlochVector& s) {
    if (s.norm() > 1.0 + 1e-12) {
        throw std::invalid_argument("density_from_bloch: Bloch norm > 1");
    }
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5 * (1.0 + s.z);
    m(1, 1) = 0.5 * (1.0 - s.z);
    m(0, 1) = 0.5 * Complex(s.x, -s.y);
    m(1, 0) = 0.5 * Complex(s.x, s.y);
    return DensityOperator(std::move(m));
}

inline double fidelity_pure(const DensityOperator& rho, const StateVector& psi) {
    if (rho.dim() != psi.dim()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
    Complex f = 0.0;
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c)
            f += std::conj(psi[r]) * rho(r, c) * psi[c];
    return f.real();
}

inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    const auto ev = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
    double s = 0.0;
    for (double lam : ev) s += std::abs(lam);
    return 0.5 * s;
}

// Haar-uniform pure qubit: two complex Gaussian amplitudes, normalized.
inline StateVector random_pure_qubit(RandomSource& rng) {
    std::vector<Complex> a(2);
    a[0] = Complex(rng.normal(), rng.normal());
    a[1] = Complex(rng.normal(), rng.normal());
    return StateVector::normalized(std::move(a));
}

}  // namespace qclone
