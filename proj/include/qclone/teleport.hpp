// teleport.hpp
// Cloning by teleportation through the shared three-qubit state
// sqrt(2/3)|100> - sqrt(1/6)|010> - sqrt(1/6)|001>: Bell measurement with
// sampling, classical correction rules, the Kraus/POVM description of the
// induced channel, and the equivalence check against the universal cloner.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qclone/linalg.hpp"
#include "qclone/qmath.hpp"
#include "qclone/universal.hpp"

namespace qclone::teleport {

enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellOutcome, 4> kBellOutcomes = {
    BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus, BellOutcome::PsiMinus};

inline const char* to_string(BellOutcome o) {
    switch (o) {
        case BellOutcome::PhiPlus: return "Phi+";
        case BellOutcome::PhiMinus: return "Phi-";
        case BellOutcome::PsiPlus: return "Psi+";
        case BellOutcome::PsiMinus: return "Psi-";
    }
    return "?";
}

inline StateVector bell_state(BellOutcome o) {
    const double inv = 1.0 / std::sqrt(2.0);
    switch (o) {
        case BellOutcome::PhiPlus: return StateVector({inv, 0.0, 0.0, inv});
        case BellOutcome::PhiMinus: return StateVector({inv, 0.0, 0.0, -inv});
        case BellOutcome::PsiPlus: return StateVector({0.0, inv, inv, 0.0});
        case BellOutcome::PsiMinus: return StateVector({0.0, inv, -inv, 0.0});
    }
    throw std::invalid_argument("bell_state: unknown outcome");
}

// |Psi_clone> = sqrt(2/3)|100> - sqrt(1/6)|010> - sqrt(1/6)|001>
// (qubit 1 Alice, qubit 2 Bob, qubit 3 Charlie)
inline StateVector psi_clone_state() {
    std::vector<Complex> a(8, Complex(0.0, 0.0));
    a[4] = std::sqrt(2.0 / 3.0);
    a[2] = -std::sqrt(1.0 / 6.0);
    a[1] = -std::sqrt(1.0 / 6.0);
    return StateVector(std::move(a));
}

// Correction broadcast after the Bell measurement; applied by every receiver.
inline const ComplexMatrix& correction(BellOutcome o) {
    switch (o) {
        case BellOutcome::PsiMinus: return identity2();
        case BellOutcome::PsiPlus: return pauli_z();
        case BellOutcome::PhiMinus: return pauli_x();
        case BellOutcome::PhiPlus: return pauli_y();
    }
    throw std::invalid_argument("correction: unknown outcome");
}

// Born probabilities of the four Bell outcomes on qubits 1-2 of `joint`.
inline std::array<double, 4> bell_probabilities(const StateVector& joint) {
    if (joint.dim() < 8) {
        throw std::invalid_argument("bell_probabilities: need at least three qubits");
    }
    const std::size_t rest = joint.dim() / 4;
    std::array<double, 4> probs{};
    for (std::size_t k = 0; k < 4; ++k) {
        const auto bell = bell_state(kBellOutcomes[k]);
        for (std::size_t r = 0; r < rest; ++r) {
            Complex amp = 0.0;
            for (std::size_t b = 0; b < 4; ++b) amp += std::conj(bell[b]) * joint[b * rest + r];
            probs[k] += std::norm(amp);
        }
    }
    return probs;
}

struct BellMeasurement {
    BellOutcome outcome;
    StateVector residual;  // normalized post-measurement state of the remaining qubits
    double probability;
};

// Projects qubits 1-2 onto a sampled Bell outcome (inverse-CDF over the four
// exactly computed Born probabilities) and returns the normalized residual.
inline BellMeasurement bell_measure(const StateVector& joint, RandomSource& rng) {
    const auto probs = bell_probabilities(joint);
    const double u = rng.uniform();
    std::size_t pick = 3;
    double acc = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        acc += probs[k];
        if (u < acc) {
            pick = k;
            break;
        }
    }
    const std::size_t rest = joint.dim() / 4;
    const auto bell = bell_state(kBellOutcomes[pick]);
    std::vector<Complex> residual(rest, Complex(0.0, 0.0));
    for (std::size_t r = 0; r < rest; ++r)
        for (std::size_t b = 0; b < 4; ++b) residual[r] += std::conj(bell[b]) * joint[b * rest + r];
    return BellMeasurement{kBellOutcomes[pick], StateVector::normalized(std::move(residual)),
                           probs[pick]};
}

// Kraus description of the Alice->Bob (or Charlie) channel, grouped by the
// two distinguishable measurement classes Phi and Psi.
struct KrausChannel {
    struct Group {
        std::string label;                // "Phi" or "Psi"
        std::vector<ComplexMatrix> ops;   // A_{i,j}
        ComplexMatrix povm;               // E_i = sum_j A+_{ij} A_{ij}
    };
    std::vector<Group> groups;

    const Group& group(const std::string& label) const {
        for (const auto& g : groups)
            if (g.label == label) return g;
        throw std::invalid_argument("KrausChannel: unknown group label '" + label + "'");
    }
};

inline KrausChannel kraus_channel() {
    const double ca = std::sqrt(2.0 / 3.0);
    const double cb = std::sqrt(1.0 / 6.0);
    ComplexMatrix aPhi1(2, 2), aPhi2(2, 2), aPsi1(2, 2), aPsi2(2, 2);
    aPhi1(0, 0) = 0.5 * ca;
    aPhi1(1, 1) = ca;
    aPhi2(1, 0) = cb;
    aPsi1(0, 0) = ca;
    aPsi1(1, 1) = 0.5 * ca;
    aPsi2(0, 1) = cb;

    auto povm_of = [](const std::vector<ComplexMatrix>& ops) {
        ComplexMatrix e(2, 2);
        for (const auto& a : ops) e = e + a.adjoint() * a;
        return e;
    };
    KrausChannel ch;
    ch.groups.push_back({"Phi", {aPhi1, aPhi2}, povm_of({aPhi1, aPhi2})});
    ch.groups.push_back({"Psi", {aPsi1, aPsi2}, povm_of({aPsi1, aPsi2})});
    return ch;
}

// Unnormalized conditional output sum_j A_ij rho A+_ij; trace equals Pr(i).
inline ComplexMatrix channel_apply_conditional(const KrausChannel& ch, const DensityOperator& rho,
                                               const std::string& group) {
    if (rho.dim() != 2) throw std::invalid_argument("channel_apply: input must be a qubit");
    const auto& g = ch.group(group);
    ComplexMatrix out(2, 2);
    for (const auto& a : g.ops) out = out + a * rho.matrix() * a.adjoint();
    return out;
}

// Total channel output over all measurement outcomes.
inline DensityOperator channel_apply(const KrausChannel& ch, const DensityOperator& rho) {
    ComplexMatrix out(2, 2);
    for (const auto& g : ch.groups) out = out + channel_apply_conditional(ch, rho, g.label);
    return DensityOperator(std::move(out));
}

struct TeleportOutcomeStats {
    BellOutcome outcome;
    double probability;          // exact Born probability
    std::uint64_t count;         // sampled shots landing on this outcome
    DensityOperator bob_state;   // normalized conditional state after correction
    DensityOperator charlie_state;
};

struct TeleportRunResult {
    std::array<TeleportOutcomeStats, 4> outcomes;
    DensityOperator bob_average;      // probability-weighted average over outcomes
    DensityOperator charlie_average;
    std::uint64_t shots;
};

// Runs the full protocol: |psi> tensored with |Psi_clone>, Bell measurement
// on (psi, Alice), classical correction applied by Bob and Charlie.
// Conditional states are computed exactly; shots are sampled for statistics.
inline TeleportRunResult run_teleport_clone(const StateVector& psi, std::uint64_t shots,
                                            RandomSource& rng) {
    if (psi.dim() != 2) throw std::invalid_argument("run_teleport_clone: input must be a qubit");
    if (shots < 1) throw std::invalid_argument("run_teleport_clone: shots must be >= 1");
    const auto joint = tensor(psi, psi_clone_state());
    const auto probs = bell_probabilities(joint);

    // exact conditional states
    std::array<std::optional<TeleportOutcomeStats>, 4> stats;
    ComplexMatrix bob_avg(2, 2), charlie_avg(2, 2);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto bell = bell_state(kBellOutcomes[k]);
        std::vector<Complex> residual(4, Complex(0.0, 0.0));
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t b = 0; b < 4; ++b)
                residual[r] += std::conj(bell[b]) * joint[b * 4 + r];
        auto res = StateVector::normalized(std::move(residual));
        // correction on both receivers
        const auto u2 = tensor(correction(kBellOutcomes[k]), correction(kBellOutcomes[k]));
        std::vector<Complex> corrected(4, Complex(0.0, 0.0));
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) corrected[r] += u2(r, c) * res[c];
        const auto full = DensityOperator::pure(StateVector(std::move(corrected)));
        auto bob = partial_trace(full, {0}, {2, 2});
        auto charlie = partial_trace(full, {1}, {2, 2});
        bob_avg = bob_avg + probs[k] * bob.matrix();
        charlie_avg = charlie_avg + probs[k] * charlie.matrix();
        stats[k] = TeleportOutcomeStats{kBellOutcomes[k], probs[k], 0, std::move(bob),
                                        std::move(charlie)};
    }

    // sampled counts, inverse CDF over the exact probabilities
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        double acc = 0.0;
        std::size_t pick = 3;
        for (std::size_t k = 0; k < 4; ++k) {
            acc += probs[k];
            if (u < acc) {
                pick = k;
                break;
            }
        }
        ++stats[pick]->count;
    }

    return TeleportRunResult{{std::move(*stats[0]), std::move(*stats[1]), std::move(*stats[2]),
                              std::move(*stats[3])},
                             DensityOperator(std::move(bob_avg)),
                             DensityOperator(std::move(charlie_avg)), shots};
}

struct EquivalenceReport {
    int inputs = 0;
    double max_distance_sim_kraus = 0.0;       // explicit simulation vs Kraus channel
    double max_distance_sim_universal = 0.0;   // explicit simulation vs universal cloner
    double max_distance_kraus_universal = 0.0;
    bool pass = false;
};

// Pairwise comparison of (a) explicit 4-qubit simulation with correction and
// averaging, (b) the Kraus-channel total output, (c) the universal-cloner
// marginal, over Haar-random inputs.
inline EquivalenceReport verify_channel_equivalence(int inputs = 100, std::uint64_t seed = 1,
                                                    double tol = 1e-12) {
    RandomSource rng(seed);
    const auto ch = kraus_channel();
    const auto iso = universal::build_optimal_isometry();
    EquivalenceReport rep;
    rep.inputs = inputs;
    for (int i = 0; i < inputs; ++i) {
        const auto psi = random_pure_qubit(rng);
        const auto sim = run_teleport_clone(psi, 1, rng).bob_average;
        const auto kraus = channel_apply(ch, DensityOperator::pure(psi));
        const auto uni = universal::clone(iso, psi).rho1;
        rep.max_distance_sim_kraus =
            std::max(rep.max_distance_sim_kraus, trace_distance(sim, kraus));
        rep.max_distance_sim_universal =
            std::max(rep.max_distance_sim_universal, trace_distance(sim, uni));
        rep.max_distance_kraus_universal =
            std::max(rep.max_distance_kraus_universal, trace_distance(kraus, uni));
    }
    rep.pass = rep.max_distance_sim_kraus < tol && rep.max_distance_sim_universal < tol &&
               rep.max_distance_kraus_universal < tol;
    return rep;
}

}  // namespace qclone::teleport
