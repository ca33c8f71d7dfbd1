#include "qclone/teleport.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qclone;
using namespace qclone::teleport;

TEST(Teleport, PsiCloneState) {
    const auto s = psi_clone_state();
    EXPECT_NEAR(s[4].real(), std::sqrt(2.0 / 3.0), 1e-15);   // |100>
    EXPECT_NEAR(s[2].real(), -std::sqrt(1.0 / 6.0), 1e-15);  // |010>
    EXPECT_NEAR(s[1].real(), -std::sqrt(1.0 / 6.0), 1e-15);  // |001>
    double n2 = 0.0;
    for (std::size_t i = 0; i < 8; ++i) n2 += std::norm(s[i]);
    EXPECT_NEAR(n2, 1.0, 1e-15);
    // symmetric under swapping Bob and Charlie
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                EXPECT_EQ(s[4 * a + 2 * b + c], s[4 * a + 2 * c + b]);
}

TEST(Teleport, PerfectTeleportationProbabilities) {
    // input tensored with a shared singlet: all four outcomes equally likely
    const double inv = 1.0 / std::sqrt(2.0);
    RandomSource rng(7);
    const auto psi = random_pure_qubit(rng);
    const auto joint = tensor(psi, StateVector({0.0, inv, -inv, 0.0}));
    const auto probs = bell_probabilities(joint);
    for (double p : probs) EXPECT_NEAR(p, 0.25, 1e-14);
}

TEST(Teleport, CloneSetupPhiProbability) {
    const auto joint = tensor(StateVector::basis(2, 0), psi_clone_state());
    const auto probs = bell_probabilities(joint);
    EXPECT_NEAR(probs[0] + probs[1], 1.0 / 3.0, 1e-14);  // Pr(Phi)
    EXPECT_NEAR(probs[0] + probs[1] + probs[2] + probs[3], 1.0, 1e-12);
}

TEST(Teleport, BellProbabilitiesSumToOne) {
    RandomSource rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto joint = tensor(random_pure_qubit(rng), psi_clone_state());
        const auto probs = bell_probabilities(joint);
        EXPECT_NEAR(probs[0] + probs[1] + probs[2] + probs[3], 1.0, 1e-12);
    }
}

TEST(Teleport, BellMeasureSamplesAndNormalizes) {
    RandomSource rng(9);
    const auto joint = tensor(StateVector::basis(2, 0), psi_clone_state());
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = bell_measure(joint, rng);
        EXPECT_EQ(m.residual.dim(), 4u);
        EXPECT_GT(m.probability, 0.0);
        double n2 = 0.0;
        for (std::size_t i = 0; i < 4; ++i) n2 += std::norm(m.residual[i]);
        EXPECT_NEAR(n2, 1.0, 1e-12);
    }
}

TEST(Teleport, CorrectionRules) {
    EXPECT_LT((correction(BellOutcome::PsiMinus) - identity2()).max_abs(), 1e-15);
    EXPECT_LT((correction(BellOutcome::PsiPlus) - pauli_z()).max_abs(), 1e-15);
    EXPECT_LT((correction(BellOutcome::PhiMinus) - pauli_x()).max_abs(), 1e-15);
    EXPECT_LT((correction(BellOutcome::PhiPlus) - pauli_y()).max_abs(), 1e-15);
    for (auto o : kBellOutcomes) {
        const auto& u = correction(o);
        EXPECT_LT((u.adjoint() * u - ComplexMatrix::identity(2)).max_abs(), 1e-15);
    }
}

TEST(Teleport, KrausOperators) {
    const auto ch = kraus_channel();
    const auto& aPhi1 = ch.group("Phi").ops[0];
    EXPECT_NEAR(aPhi1(0, 0).real(), std::sqrt(2.0 / 3.0) * 0.5, 1e-15);
    EXPECT_NEAR(aPhi1(1, 1).real(), std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(std::abs(aPhi1(0, 1)) + std::abs(aPhi1(1, 0)), 0.0, 1e-15);

    // completeness
    ComplexMatrix sum(2, 2);
    for (const auto& g : ch.groups)
        for (const auto& a : g.ops) sum = sum + a.adjoint() * a;
    EXPECT_LT((sum - ComplexMatrix::identity(2)).max_abs(), 1e-14);

    // POVM elements
    EXPECT_NEAR(ch.group("Phi").povm(0, 0).real(), 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(ch.group("Phi").povm(1, 1).real(), 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(ch.group("Psi").povm(0, 0).real(), 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(ch.group("Psi").povm(1, 1).real(), 1.0 / 3.0, 1e-14);
    EXPECT_LT((ch.group("Phi").povm + ch.group("Psi").povm - ComplexMatrix::identity(2)).max_abs(),
              1e-14);
}

TEST(Teleport, ChannelApply) {
    const auto ch = kraus_channel();
    const auto rho0 = DensityOperator::pure(StateVector::basis(2, 0));
    const auto total = channel_apply(ch, rho0);
    EXPECT_NEAR(total(0, 0).real(), 5.0 / 6.0, 1e-14);
    EXPECT_NEAR(total(1, 1).real(), 1.0 / 6.0, 1e-14);

    const auto cond = channel_apply_conditional(ch, rho0, "Phi");
    EXPECT_NEAR(cond.trace().real(), 1.0 / 3.0, 1e-14);

    EXPECT_THROW(channel_apply_conditional(ch, rho0, "Chi"), std::invalid_argument);
}

TEST(Teleport, PhiAndPsiGroupsRelatedByBitFlip) {
    // Phi-conditional map equals the Psi-conditional map conjugated by sigma_x
    const auto ch = kraus_channel();
    RandomSource rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const auto psi = random_pure_qubit(rng);
        const auto rho = DensityOperator::pure(psi);
        const auto phi_out = channel_apply_conditional(ch, rho, "Phi");
        const auto flipped =
            DensityOperator(pauli_x() * rho.matrix() * pauli_x());
        const auto psi_out = channel_apply_conditional(ch, flipped, "Psi");
        EXPECT_LT((phi_out - pauli_x() * psi_out * pauli_x()).max_abs(), 1e-13);
    }
}

TEST(Teleport, RunExactAverage) {
    RandomSource rng(11);
    const auto run = run_teleport_clone(StateVector::basis(2, 0), 1, rng);
    EXPECT_NEAR(run.bob_average(0, 0).real(), 5.0 / 6.0, 1e-13);
    EXPECT_NEAR(run.bob_average(1, 1).real(), 1.0 / 6.0, 1e-13);
    EXPECT_LT(trace_distance(run.bob_average, run.charlie_average), 1e-12);
}

TEST(Teleport, RunShotStatistics) {
    RandomSource rng(12);
    const std::uint64_t shots = 100000;
    const auto run = run_teleport_clone(StateVector::basis(2, 0), shots, rng);
    std::uint64_t phi_count = run.outcomes[0].count + run.outcomes[1].count;
    const double p = 1.0 / 3.0;
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
    EXPECT_NEAR(static_cast<double>(phi_count) / static_cast<double>(shots), p, 3.0 * sigma);
    std::uint64_t total = 0;
    for (const auto& o : run.outcomes) total += o.count;
    EXPECT_EQ(total, shots);
}

TEST(Teleport, ConditionalStatesWithinGroupsIdentical) {
    RandomSource rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto run = run_teleport_clone(random_pure_qubit(rng), 1, rng);
        EXPECT_LT(trace_distance(run.outcomes[0].bob_state, run.outcomes[1].bob_state), 1e-12);
        EXPECT_LT(trace_distance(run.outcomes[2].bob_state, run.outcomes[3].bob_state), 1e-12);
        EXPECT_NEAR(run.outcomes[0].probability, run.outcomes[1].probability, 1e-12);
        EXPECT_NEAR(run.outcomes[2].probability, run.outcomes[3].probability, 1e-12);
    }
}

TEST(Teleport, BlochPictureProbabilityBookkeeping) {
    // Pr(i) = 1/2 Tr E_i + 1/2 sum_alpha s_alpha Tr(E_i sigma_alpha)
    const auto ch = kraus_channel();
    RandomSource rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const auto psi = random_pure_qubit(rng);
        const auto s = bloch_from_density(DensityOperator::pure(psi));
        const auto joint = tensor(psi, psi_clone_state());
        const auto probs = bell_probabilities(joint);
        for (const auto& [label, first] : {std::pair{std::string("Phi"), 0}, {"Psi", 2}}) {
            const auto& e = ch.group(label).povm;
            double pr = 0.5 * e.trace().real();
            pr += 0.5 * s.x * (e * pauli_x()).trace().real();
            pr += 0.5 * s.y * (e * pauli_y()).trace().real();
            pr += 0.5 * s.z * (e * pauli_z()).trace().real();
            EXPECT_NEAR(pr, probs[first] + probs[first + 1], 1e-12);
        }
    }
}

TEST(Teleport, ChannelEquivalence) {
    const auto rep = verify_channel_equivalence(100, 99);
    EXPECT_TRUE(rep.pass);
    EXPECT_LT(rep.max_distance_sim_kraus, 1e-12);
    EXPECT_LT(rep.max_distance_sim_universal, 1e-12);
    EXPECT_LT(rep.max_distance_kraus_universal, 1e-12);
}

TEST(Teleport, EquivalenceOnSpecificInputs) {
    RandomSource rng(15);
    const auto ch = kraus_channel();
    const auto iso = universal::build_optimal_isometry();

    // |0> -> diag(5/6, 1/6) on all three paths
    for (const auto& psi : {StateVector::basis(2, 0), StateVector::basis(2, 1)}) {
        const auto sim = run_teleport_clone(psi, 1, rng).bob_average;
        const auto kraus = channel_apply(ch, DensityOperator::pure(psi));
        const auto uni = universal::clone(iso, psi).rho1;
        EXPECT_LT(trace_distance(sim, kraus), 1e-13);
        EXPECT_LT(trace_distance(sim, uni), 1e-13);
    }

    // (|0> + i|1>)/sqrt(2): averaged output Bloch vector (0, 2/3, 0)
    const double inv = 1.0 / std::sqrt(2.0);
    const StateVector plus_i({inv, Complex(0.0, inv)});
    const auto s = bloch_from_density(run_teleport_clone(plus_i, 1, rng).bob_average);
    EXPECT_NEAR(s.x, 0.0, 1e-13);
    EXPECT_NEAR(s.y, 2.0 / 3.0, 1e-13);
    EXPECT_NEAR(s.z, 0.0, 1e-13);
}
