#include "qclone/qmath.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qclone;

namespace {

// mixed qubit with Bloch radius uniform in volume
DensityOperator random_mixed_qubit(RandomSource& rng) {
    BlochVector s{rng.normal(), rng.normal(), rng.normal()};
    const double n = s.norm();
    const double r = std::cbrt(rng.uniform());
    s.x *= r / n;
    s.y *= r / n;
    s.z *= r / n;
    return density_from_bloch(s);
}

}  // namespace

TEST(Qmath, TensorIdentity) {
    const auto i4 = tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2));
    EXPECT_LT((i4 - ComplexMatrix::identity(4)).max_abs(), 1e-15);
}

TEST(Qmath, TensorBasisOrdering) {
    const auto v = tensor(StateVector::basis(2, 0), StateVector::basis(2, 1));
    ASSERT_EQ(v.dim(), 4u);
    EXPECT_NEAR(std::abs(v[1] - Complex(1.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v[0]) + std::abs(v[2]) + std::abs(v[3]), 0.0, 1e-15);
}

TEST(Qmath, TensorBitFlipBothQubits) {
    const auto xx = tensor(pauli_x(), pauli_x());
    // |00> -> |11>
    for (std::size_t c = 0; c < 4; ++c) {
        EXPECT_NEAR(std::abs(xx(c, 0) - (c == 3 ? Complex(1.0, 0.0) : Complex(0.0, 0.0))), 0.0,
                    1e-15);
    }
}

TEST(Qmath, PartialTraceSingletMarginal) {
    const double inv = 1.0 / std::sqrt(2.0);
    const StateVector singlet({0.0, inv, -inv, 0.0});
    const auto rho1 = partial_trace(DensityOperator::pure(singlet), {0}, {2, 2});
    EXPECT_LT((rho1.matrix() - DensityOperator::maximally_mixed(2).matrix()).max_abs(), 1e-14);
}

TEST(Qmath, PartialTraceProductState) {
    RandomSource rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho = random_mixed_qubit(rng);
        const auto sigma = random_mixed_qubit(rng);
        const auto joint = DensityOperator(tensor(rho.matrix(), sigma.matrix()));
        const auto first = partial_trace(joint, {0}, {2, 2});
        const auto second = partial_trace(joint, {1}, {2, 2});
        EXPECT_LT((first.matrix() - rho.matrix()).max_abs(), 1e-12);
        EXPECT_LT((second.matrix() - sigma.matrix()).max_abs(), 1e-12);
    }
}

TEST(Qmath, PartialTraceOptimalCloneOutput) {
    // sqrt(2/3)|000> + sqrt(1/6)|011> + sqrt(1/6)|101>
    std::vector<Complex> amps(8, Complex(0.0, 0.0));
    amps[0] = std::sqrt(2.0 / 3.0);
    amps[3] = std::sqrt(1.0 / 6.0);
    amps[5] = std::sqrt(1.0 / 6.0);
    const auto rho = DensityOperator::pure(StateVector(std::move(amps)));
    const auto clone1 = partial_trace(rho, {0}, {2, 2, 2});
    EXPECT_NEAR(clone1(0, 0).real(), 5.0 / 6.0, 1e-14);
    EXPECT_NEAR(clone1(1, 1).real(), 1.0 / 6.0, 1e-14);
    EXPECT_NEAR(std::abs(clone1(0, 1)), 0.0, 1e-14);
}

TEST(Qmath, PartialTraceRejectsBadArguments) {
    const auto rho = DensityOperator::maximally_mixed(4);
    EXPECT_THROW(partial_trace(rho, {0}, {2, 2, 2}), std::invalid_argument);  // dims mismatch
    EXPECT_THROW(partial_trace(rho, {}, {2, 2}), std::invalid_argument);      // empty keep
    EXPECT_THROW(partial_trace(rho, {2}, {2, 2}), std::invalid_argument);     // index range
}

TEST(Qmath, BlochConversions) {
    const auto ket0 = DensityOperator::pure(StateVector::basis(2, 0));
    const auto s0 = bloch_from_density(ket0);
    EXPECT_NEAR(s0.x, 0.0, 1e-14);
    EXPECT_NEAR(s0.y, 0.0, 1e-14);
    EXPECT_NEAR(s0.z, 1.0, 1e-14);

    const auto mixed = bloch_from_density(DensityOperator::maximally_mixed(2));
    EXPECT_NEAR(mixed.norm(), 0.0, 1e-14);

    ComplexMatrix m(2, 2);
    m(0, 0) = 5.0 / 6.0;
    m(1, 1) = 1.0 / 6.0;
    const auto shrunk = bloch_from_density(DensityOperator(std::move(m)));
    EXPECT_NEAR(shrunk.z, 2.0 / 3.0, 1e-14);

    EXPECT_THROW(density_from_bloch(BlochVector{2.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(Qmath, BlochRoundTrip) {
    RandomSource rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho = random_mixed_qubit(rng);
        const auto back = density_from_bloch(bloch_from_density(rho));
        EXPECT_LT((back.matrix() - rho.matrix()).max_abs(), 1e-14);
    }
}

TEST(Qmath, FidelityPure) {
    RandomSource rng(23);
    const auto psi = random_pure_qubit(rng);
    EXPECT_NEAR(fidelity_pure(DensityOperator::pure(psi), psi), 1.0, 1e-14);
    EXPECT_NEAR(fidelity_pure(DensityOperator::maximally_mixed(2), psi), 0.5, 1e-14);

    ComplexMatrix m(2, 2);
    m(0, 0) = 5.0 / 6.0;
    m(1, 1) = 1.0 / 6.0;
    EXPECT_NEAR(fidelity_pure(DensityOperator(std::move(m)), StateVector::basis(2, 0)), 5.0 / 6.0,
                1e-14);
}

TEST(Qmath, FidelityMatchesTraceFormula) {
    RandomSource rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho = random_mixed_qubit(rng);
        const auto psi = random_pure_qubit(rng);
        const double direct = (rho.matrix() * DensityOperator::pure(psi).matrix()).trace().real();
        EXPECT_NEAR(fidelity_pure(rho, psi), direct, 1e-14);
    }
}

TEST(Qmath, TraceDistance) {
    RandomSource rng(31);
    const auto rho = random_mixed_qubit(rng);
    EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-14);

    const auto k0 = DensityOperator::pure(StateVector::basis(2, 0));
    const auto k1 = DensityOperator::pure(StateVector::basis(2, 1));
    EXPECT_NEAR(trace_distance(k0, k1), 1.0, 1e-14);
    EXPECT_NEAR(trace_distance(DensityOperator::maximally_mixed(2), k0), 0.5, 1e-14);
}

TEST(Qmath, HermitianEigenvalues) {
    EXPECT_NEAR(hermitian_eigenvalues(pauli_x())[0], -1.0, 1e-13);
    EXPECT_NEAR(hermitian_eigenvalues(pauli_x())[1], 1.0, 1e-13);

    RandomSource rng(37);
    for (std::size_t n : {2u, 4u, 8u}) {
        ComplexMatrix a(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) a(r, c) = Complex(rng.normal(), rng.normal());
        const auto h = a + a.adjoint();
        const auto ev = hermitian_eigenvalues(h);
        double sum = 0.0, sq = 0.0;
        for (double lam : ev) {
            sum += lam;
            sq += lam * lam;
        }
        EXPECT_NEAR(sum, h.trace().real(), 1e-10 * n);
        EXPECT_NEAR(sq, (h * h).trace().real(), 1e-9 * n);
    }
}

TEST(Qmath, DensityOperatorValidation) {
    ComplexMatrix nonherm(2, 2);
    nonherm(0, 0) = 0.5;
    nonherm(1, 1) = 0.5;
    nonherm(0, 1) = 0.3;
    nonherm(1, 0) = 0.1;
    EXPECT_THROW((DensityOperator(nonherm)), std::invalid_argument);

    ComplexMatrix badtrace(2, 2);
    badtrace(0, 0) = 0.7;
    badtrace(1, 1) = 0.7;
    EXPECT_THROW((DensityOperator(badtrace)), std::invalid_argument);

    ComplexMatrix negative(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    EXPECT_THROW((DensityOperator(negative)), std::invalid_argument);
}

TEST(Qmath, RandomPureQubitDeterminism) {
    RandomSource a(42), b(42);
    for (int i = 0; i < 20; ++i) {
        const auto u = random_pure_qubit(a);
        const auto v = random_pure_qubit(b);
        EXPECT_EQ(u[0], v[0]);
        EXPECT_EQ(u[1], v[1]);
    }
}

TEST(Qmath, RandomPureQubitHaarStatistics) {
    RandomSource rng(4242);
    double sx = 0.0, sy = 0.0, sz = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto psi = random_pure_qubit(rng);
        double n2 = 0.0;
        for (std::size_t k = 0; k < 2; ++k) n2 += std::norm(psi[k]);
        ASSERT_NEAR(n2, 1.0, 1e-12);
        const auto s = bloch_from_density(DensityOperator::pure(psi));
        sx += s.x;
        sy += s.y;
        sz += s.z;
    }
    const BlochVector mean{sx / n, sy / n, sz / n};
    EXPECT_LT(mean.norm(), 0.02);
}
