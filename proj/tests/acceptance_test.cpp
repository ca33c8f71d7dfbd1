// Acceptance suite: one test per verification criterion, each printing a
// single pass/fail line with the measured values and the tolerance it ran at.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>

#include "qclone/qclone.hpp"

using namespace qclone;

namespace {

constexpr double kPi = 3.14159265358979323846;

void report(int criterion, const char* description) {
    std::printf("[criterion %02d] %s: %s\n", criterion, description,
                ::testing::Test::HasFailure() ? "FAIL" : "PASS");
}

}  // namespace

TEST(Acceptance, Criterion01UniversalFidelityAndShrink) {
    const auto iso = universal::build_optimal_isometry();
    RandomSource rng(42);
    double worst_f = 0.0, worst_eta = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto psi = random_pure_qubit(rng);
        worst_f = std::max(worst_f,
                           std::abs(fidelity_pure(universal::clone(iso, psi).rho1, psi) -
                                    5.0 / 6.0));
        worst_eta =
            std::max(worst_eta, std::abs(universal::shrink_factor(iso, psi) - 2.0 / 3.0));
    }
    EXPECT_LE(worst_f, 1e-12);
    EXPECT_LE(worst_eta, 1e-12);
    std::printf("  F deviation %.3e (tol 1e-12), eta deviation %.3e (tol 1e-12)\n", worst_f,
                worst_eta);
    report(1, "universal fidelity 5/6 and shrink factor 2/3 on 100 Haar inputs");
}

TEST(Acceptance, Criterion02SymmetryAndIsotropy) {
    const auto iso = universal::build_optimal_isometry();
    RandomSource rng(42);
    double worst_sym = 0.0, worst_cross = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto psi = random_pure_qubit(rng);
        const auto out = universal::clone(iso, psi);
        worst_sym = std::max(worst_sym, trace_distance(out.rho1, out.rho2));
        const auto s_in = bloch_from_density(DensityOperator::pure(psi));
        worst_cross =
            std::max(worst_cross, s_in.cross(bloch_from_density(out.rho1)).norm());
    }
    EXPECT_LT(worst_sym, 1e-12);
    EXPECT_LT(worst_cross, 1e-10);
    std::printf("  symmetry %.3e (tol 1e-12), orientation cross %.3e (tol 1e-10)\n", worst_sym,
                worst_cross);
    report(2, "clone symmetry and Bloch-vector orientation invariance");
}

TEST(Acceptance, Criterion03TeleportationEquivalence) {
    const auto eq = teleport::verify_channel_equivalence(100, 42);
    EXPECT_LT(eq.max_distance_sim_kraus, 1e-12);
    EXPECT_LT(eq.max_distance_sim_universal, 1e-12);
    EXPECT_LT(eq.max_distance_kraus_universal, 1e-12);

    const auto ch = teleport::kraus_channel();
    ComplexMatrix sum(2, 2);
    for (const auto& g : ch.groups)
        for (const auto& a : g.ops) sum = sum + a.adjoint() * a;
    EXPECT_LT((sum - ComplexMatrix::identity(2)).max_abs(), 1e-14);

    ComplexMatrix ePhi(2, 2);
    ePhi(0, 0) = 1.0 / 3.0;
    ePhi(1, 1) = 2.0 / 3.0;
    EXPECT_LT((ch.group("Phi").povm - ePhi).max_abs(), 1e-15);
    std::printf("  pairwise distances %.3e %.3e %.3e (tol 1e-12), completeness %.3e (1e-14)\n",
                eq.max_distance_sim_kraus, eq.max_distance_sim_universal,
                eq.max_distance_kraus_universal,
                (sum - ComplexMatrix::identity(2)).max_abs());
    report(3, "teleportation, Kraus channel and universal cloner agree pairwise");
}

TEST(Acceptance, Criterion04SamplingStatistics) {
    RandomSource rng(42);
    const std::uint64_t shots = 100000;
    const auto run = teleport::run_teleport_clone(StateVector::basis(2, 0), shots, rng);
    const double freq = static_cast<double>(run.outcomes[0].count + run.outcomes[1].count) /
                        static_cast<double>(shots);
    const double p = 1.0 / 3.0;
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
    EXPECT_NEAR(freq, p, 3.0 * sigma);
    std::printf("  Phi frequency %.6f vs 1/3, window 3 sigma = %.6f\n", freq, 3.0 * sigma);
    report(4, "Bell-outcome sampling statistics over 1e5 shots");
}

TEST(Acceptance, Criterion05StateDependentConsistency) {
    double max_geo = 0.0, max_constructed = 0.0, max_overlap = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const statedep::TwoStateEnsemble e((kPi / 4.0) * i / 200.0);
        max_geo = std::max(max_geo,
                           std::abs(statedep::global_fidelity_geometric(statedep::geometry(e)) -
                                    statedep::global_fidelity_opt(e)));
        const auto alpha = statedep::apply(e, statedep::InputLabel::A).joint;
        const auto beta = statedep::apply(e, statedep::InputLabel::B).joint;
        max_constructed = std::max(max_constructed,
                                   std::abs(statedep::global_fidelity(e, alpha, beta) -
                                            statedep::global_fidelity_opt(e)));
        max_overlap = std::max(max_overlap, std::abs(alpha.inner(beta).real() - e.overlap()));
    }
    EXPECT_LE(max_geo, 1e-12);
    EXPECT_LE(max_constructed, 1e-10);
    EXPECT_LE(max_overlap, 1e-12);
    std::printf("  geometric %.3e (1e-12), constructed %.3e (1e-10), overlap %.3e (1e-12)\n",
                max_geo, max_constructed, max_overlap);
    report(5, "state-dependent fidelity forms agree on the 200-point theta grid");
}

TEST(Acceptance, Criterion06LocalFidelityChain) {
    double min21 = 1.0, min32 = 1.0;
    double max21 = -1.0, arg21 = 0.0, max32 = -1.0, arg32 = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double s = static_cast<double>(i) / 499.0;
        const double f1 = statedep::local_fidelity_1(s);
        const double f2 = eavesdrop::local_fidelity_2(s);
        const double f3 = eavesdrop::local_fidelity_3(s);
        min21 = std::min(min21, f2 - f1);
        min32 = std::min(min32, f3 - f2);
        if (f2 - f1 > max21) {
            max21 = f2 - f1;
            arg21 = s;
        }
        if (f3 - f2 > max32) {
            max32 = f3 - f2;
            arg32 = s;
        }
    }
    EXPECT_GE(min21, -1e-12);
    EXPECT_GE(min32, -1e-12);
    EXPECT_NEAR(max21, 0.000651, 1e-4);
    EXPECT_NEAR(arg21, 0.579924, 0.01);
    EXPECT_NEAR(max32, 0.001134, 1e-4);
    if (std::abs(max32 - 0.001134) > 2e-5) {
        std::printf("  [flagged] max(F_l3-F_l2) = %.6e deviates from the printed 0.001134 by "
                    "%.2e (reported, not failing)\n",
                    max32, std::abs(max32 - 0.001134));
    }
    std::printf("  max(Fl2-Fl1) = %.6e at S = %.6f; max(Fl3-Fl2) = %.6e at S = %.6f\n", max21,
                arg21, max32, arg32);
    report(6, "local-fidelity dominance chain with the printed gap maxima");
}

TEST(Acceptance, Criterion07BlochClaims) {
    double min_f = 1.0, min_mod = 1.0;
    for (int i = 0; i <= 200; ++i) {
        const statedep::TwoStateEnsemble e((kPi / 4.0) * i / 200.0);
        min_f = std::min(min_f, statedep::local_fidelity_1(e.overlap()));
        min_mod = std::min(min_mod, statedep::bloch_modulus(e));
    }
    EXPECT_GT(min_f, 5.0 / 6.0);
    EXPECT_GT(min_mod, 2.0 / 3.0);
    std::printf("  min F_l1 = %.6f > 5/6, min |s| = %.6f > 2/3\n", min_f, min_mod);
    report(7, "state-dependent fidelity and Bloch modulus exceed the universal values");
}

TEST(Acceptance, Criterion08EavesdropClonerCondition) {
    double max_mismatch = 0.0, max_formula = 0.0;
    for (int i = 1; i < 100; ++i) {
        const double s = static_cast<double>(i) / 100.0;
        const auto rep = eavesdrop::cloner_condition_check(s);
        max_mismatch = std::max({max_mismatch, rep.max_mismatch_a, rep.max_mismatch_b});
        const eavesdrop::EaveInteraction at{rep.alpha, rep.phi, 0.5 * std::asin(s)};
        max_formula = std::max(max_formula, std::abs(eavesdrop::local_fidelity_2(s) -
                                                     eavesdrop::eave_fidelity(at)));
    }
    EXPECT_LT(max_mismatch, 1e-10);
    EXPECT_LE(max_formula, 1e-10);
    std::printf("  probe/receiver mismatch %.3e (1e-10), closed vs constructive %.3e (1e-10)\n",
                max_mismatch, max_formula);
    report(8, "eavesdropping interaction coincides with a cloner at the quadratic root");
}

TEST(Acceptance, Criterion09OptimizerRederivations) {
    const auto eta = optimize::maximize_universal_eta();
    ASSERT_TRUE(eta.converged);
    EXPECT_NEAR(eta.best_value, 2.0 / 3.0, 1e-6);
    EXPECT_LT(eta.constraint_residual, 1e-8);

    const auto scan = optimize::no_ancilla_scan(128);
    EXPECT_LE(scan.max_feasible_eta, 1e-8);

    double worst_fg = 0.0, worst_c = 0.0;
    for (double theta : {kPi / 16.0, kPi / 8.0, 3.0 * kPi / 16.0}) {
        const auto gf = optimize::maximize_global_fidelity_full(theta);
        ASSERT_TRUE(gf.converged);
        const double expect = statedep::global_fidelity_opt(statedep::TwoStateEnsemble(theta));
        worst_fg = std::max(worst_fg, std::abs(gf.best_value - expect));
        const auto d = optimize::decode_global_fidelity_parameters(gf.best_parameters);
        worst_c = std::max({worst_c, d.mag_c0, d.mag_c1});
    }
    EXPECT_LE(worst_fg, 1e-8);
    EXPECT_LT(worst_c, 1e-6);

    double worst_lf = 0.0;
    for (double s : {0.25, 0.5, 0.75}) {
        const auto lf = optimize::maximize_local_fidelity_statedep(s);
        worst_lf =
            std::max(worst_lf, std::abs(lf.best_value - eavesdrop::local_fidelity_3(s)));
    }
    EXPECT_LE(worst_lf, 1e-7);
    std::printf("  eta %.9f (2/3 +- 1e-6), scan max %.1e (1e-8), Fg dev %.2e (1e-8), "
                "|c| %.2e (1e-6), Fl3 dev %.2e (1e-7)\n",
                eta.best_value, scan.max_feasible_eta, worst_fg, worst_c, worst_lf);
    report(9, "numerical re-derivations of the optimality claims");
}

TEST(Acceptance, Criterion10CapacityBound) {
    EXPECT_EQ(capacity::q_upper_bound(0.5).bound, 0.0);
    EXPECT_EQ(capacity::q_upper_bound(2.0 / 3.0).bound, 0.0);
    EXPECT_NEAR(capacity::q_upper_bound(1.0).bound, 1.0, 1e-12);
    EXPECT_NEAR(capacity::q_upper_bound(0.8).bound, 0.390160, 1e-6);
    double prev = -1.0;
    bool monotone = true;
    for (int i = 0; i < 1000; ++i) {
        const double b = capacity::q_upper_bound(static_cast<double>(i) / 999.0).bound;
        monotone = monotone && b >= prev - 1e-15;
        prev = b;
    }
    EXPECT_TRUE(monotone);
    std::printf("  bound(0.8) = %.9f, nondecreasing over 1000 grid points: %s\n",
                capacity::q_upper_bound(0.8).bound, monotone ? "yes" : "no");
    report(10, "depolarizing-channel capacity bound");
}
