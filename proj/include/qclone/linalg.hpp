// linalg.hpp
// Dense complex matrices, state vectors, density operators and Bloch vectors
// for systems of one to three qubits. Everything is value-semantic and
// immutable after construction; dimensions never exceed 8.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qclone {

using Complex = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Row-major dense complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Complex(0.0, 0.0)) {
        if (rows == 0 || cols == 0) {
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        }
    }
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (rows * cols != e_.size()) {
            throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    const std::vector<Complex>& entries() const { return e_; }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        check_same_shape(o, "operator+");
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
        return m;
    }
    ComplexMatrix operator-(const ComplexMatrix& o) const {
        check_same_shape(o, "operator-");
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] - o.e_[i];
        return m;
    }
    ComplexMatrix operator*(const ComplexMatrix& o) const {
        if (cols_ != o.rows_) {
            throw std::invalid_argument("ComplexMatrix: inner dimensions do not match");
        }
        ComplexMatrix m(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Complex aik = e_[i * cols_ + k];
                if (aik == Complex(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    m(i, j) += aik * o(k, j);
                }
            }
        }
        return m;
    }
    ComplexMatrix operator*(Complex s) const {
        ComplexMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * s;
        return m;
    }
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    Complex trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
        Complex t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : e_) m = std::max(m, std::abs(z));
        return m;
    }

    double hermiticity_error() const {
        if (rows_ != cols_) return std::numeric_limits<double>::infinity();
        double m = 0.0;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return m;
    }

  private:
    void check_same_shape(const ComplexMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument(std::string("ComplexMatrix: shape mismatch in ") + op);
        }
    }

    std::size_t rows_, cols_;
    std::vector<Complex> e_;
};

// Pauli matrices and the 2x2 identity.
inline const ComplexMatrix& pauli_x() {
    static const ComplexMatrix m(2, 2, {0.0, 1.0, 1.0, 0.0});
    return m;
}
inline const ComplexMatrix& pauli_y() {
    static const ComplexMatrix m(2, 2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
    return m;
}
inline const ComplexMatrix& pauli_z() {
    static const ComplexMatrix m(2, 2, {1.0, 0.0, 0.0, -1.0});
    return m;
}
inline const ComplexMatrix& identity2() {
    static const ComplexMatrix m = ComplexMatrix::identity(2);
    return m;
}

// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps (2x2 blocks are
// diagonalized in closed form). Input must be Hermitian; dimensions here are
// at most 8 so convergence is fast. Returns eigenvalues sorted ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol = 1e-14) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eigenvalues: not square");
    const std::size_t n = a.rows();
    ComplexMatrix h = a;
    // symmetrize away representation noise
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) {
            const Complex m = 0.5 * (h(r, c) + std::conj(h(c, r)));
            h(r, c) = m;
            h(c, r) = std::conj(m);
        }
    double scale = std::max(h.max_abs(), 1.0);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(h(p, q)));
        if (off <= tol * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex beta = h(p, q);
                if (std::abs(beta) <= tol * scale * 1e-2) continue;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                // closed-form eigenvector (beta, lam - app) of the 2x2 block
                // [[app, beta], [conj(beta), aqq]], with lam - app evaluated
                // through |beta|^2/(rad + |app-aqq|/2) to avoid cancellation
                const double half_gap = 0.5 * (app - aqq);
                const double rad = std::hypot(half_gap, std::abs(beta));
                const double mag = std::norm(beta) / (rad + std::abs(half_gap));
                Complex u1 = beta;
                double u2 = (app >= aqq) ? mag : -mag;
                double nrm = std::hypot(std::abs(u1), u2);
                if (nrm == 0.0) continue;
                u1 /= nrm;
                u2 /= nrm;
                // columns of the plane rotation: (u1, u2) and (-conj(u2), conj(u1))
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex hp = h(r, p), hq = h(r, q);
                    h(r, p) = hp * u1 + hq * u2;
                    h(r, q) = -hp * std::conj(u2) + hq * std::conj(u1);
                }
                for (std::size_t c = 0; c < n; ++c) {
                    const Complex hp = h(p, c), hq = h(q, c);
                    h(p, c) = std::conj(u1) * hp + u2 * hq;
                    h(q, c) = -u2 * hp + u1 * hq;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = h(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Normalized pure state over a power-of-two dimensional space.
class StateVector {
  public:
    explicit StateVector(std::vector<Complex> amplitudes, double norm_tol = 1e-12)
        : amps_(std::move(amplitudes)) {
        if (!is_power_of_two(amps_.size())) {
            throw std::invalid_argument("StateVector: dimension must be a power of two");
        }
        double n2 = 0.0;
        for (const auto& a : amps_) n2 += std::norm(a);
        if (std::abs(n2 - 1.0) > norm_tol) {
            throw std::invalid_argument("StateVector: amplitudes are not normalized");
        }
    }

    static StateVector basis(std::size_t dim, std::size_t index) {
        std::vector<Complex> a(dim, Complex(0.0, 0.0));
        a.at(index) = 1.0;
        return StateVector(std::move(a));
    }

    // Normalizes a raw amplitude vector; throws on (near-)zero norm.
    static StateVector normalized(std::vector<Complex> amplitudes) {
        double n2 = 0.0;
        for (const auto& a : amplitudes) n2 += std::norm(a);
        if (n2 < 1e-28) throw std::invalid_argument("StateVector: zero vector");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : amplitudes) a *= inv;
        return StateVector(std::move(amplitudes));
    }

    std::size_t dim() const { return amps_.size(); }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    const std::vector<Complex>& amplitudes() const { return amps_; }

    Complex inner(const StateVector& o) const {  // <this|o>
        if (dim() != o.dim()) throw std::invalid_argument("inner: dimension mismatch");
        Complex s = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * o.amps_[i];
        return s;
    }

  private:
    std::vector<Complex> amps_;
};

// Hermitian, unit-trace, positive matrix over a power-of-two dimension.
class DensityOperator {
  public:
    explicit DensityOperator(ComplexMatrix m, double tol = 1e-12, double eig_floor = -1e-10)
        : mat_(std::move(m)) {
        if (mat_.rows() != mat_.cols() || !is_power_of_two(mat_.rows())) {
            throw std::invalid_argument("DensityOperator: dimension must be a square power of two");
        }
        if (mat_.hermiticity_error() > tol) {
            throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
        }
        if (std::abs(mat_.trace().real() - 1.0) > tol || std::abs(mat_.trace().imag()) > tol) {
            throw std::invalid_argument("DensityOperator: trace is not 1");
        }
        const auto ev = hermitian_eigenvalues(mat_);
        if (ev.front() < eig_floor) {
            throw std::invalid_argument("DensityOperator: negative eigenvalue");
        }
    }

    static DensityOperator pure(const StateVector& psi) {
        const std::size_t d = psi.dim();
        ComplexMatrix m(d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) m(r, c) = psi[r] * std::conj(psi[c]);
        return DensityOperator(std::move(m));
    }

    static DensityOperator maximally_mixed(std::size_t dim) {
        ComplexMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
        return DensityOperator(std::move(m));
    }

    std::size_t dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

  private:
    ComplexMatrix mat_;
};

// Real three-vector of Pauli expectation values; |s| <= 1 for physical states.
struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }

    BlochVector cross(const BlochVector& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
};

// Deterministic random source: std::mt19937_64 plus fixed uniform/normal
// mappings, so sequences are identical across platforms for a given seed.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {  // Box-Muller, one cached value
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace qclone
