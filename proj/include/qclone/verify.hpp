// verify.hpp
// Named check suites, one per module, shared by the `verify` CLI subcommand
// and the acceptance test binary. Every check carries its measured value,
// the expected value or bound, and the tolerance it was tested at.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qclone/capacity.hpp"
#include "qclone/eavesdrop.hpp"
#include "qclone/optimize.hpp"
#include "qclone/qmath.hpp"
#include "qclone/statedep.hpp"
#include "qclone/teleport.hpp"
#include "qclone/universal.hpp"

namespace qclone::verify {

struct Check {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Suite {
    std::string name;
    std::vector<Check> checks;
    std::vector<std::string> flags;  // non-failing observations

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::uint64_t shots = 100000;
    int inputs = 100;  // Haar-random inputs per sampled check
    std::map<std::string, double> tolerance_overrides;

    double tol(const std::string& name, double fallback) const {
        const auto it = tolerance_overrides.find(name);
        return it == tolerance_overrides.end() ? fallback : it->second;
    }
};

namespace detail {

inline Check near(const std::string& name, double value, double expected, double tol) {
    return Check{name, value, expected, tol, std::abs(value - expected) <= tol};
}
inline Check at_most(const std::string& name, double value, double bound, double slack = 0.0) {
    return Check{name, value, bound, slack, value <= bound + slack};
}
inline Check at_least(const std::string& name, double value, double bound, double slack = 0.0) {
    return Check{name, value, bound, slack, value >= bound - slack};
}

}  // namespace detail

// Universal cloner: fidelity 5/6 and shrink factor 2/3 on Haar-random
// inputs, output symmetry, orientation invariance.
inline Suite verify_universal(const VerifyOptions& opt = {}) {
    Suite suite{"universal", {}, {}};
    const auto iso = universal::build_optimal_isometry();
    RandomSource rng(opt.seed);
    double worst_fid = 5.0 / 6.0, worst_eta = 2.0 / 3.0, max_sym = 0.0, max_cross = 0.0;
    for (int i = 0; i < opt.inputs; ++i) {
        const auto psi = random_pure_qubit(rng);
        const auto out = universal::clone(iso, psi);
        const double f = fidelity_pure(out.rho1, psi);
        if (std::abs(f - 5.0 / 6.0) > std::abs(worst_fid - 5.0 / 6.0)) worst_fid = f;
        const double eta = universal::shrink_factor(iso, psi);
        if (std::abs(eta - 2.0 / 3.0) > std::abs(worst_eta - 2.0 / 3.0)) worst_eta = eta;
        max_sym = std::max(max_sym, trace_distance(out.rho1, out.rho2));
        const auto s_in = bloch_from_density(DensityOperator::pure(psi));
        const auto s_out = bloch_from_density(out.rho1);
        max_cross = std::max(max_cross, s_in.cross(s_out).norm());
    }
    suite.checks.push_back(detail::near("universal.fidelity-5/6", worst_fid, 5.0 / 6.0,
                                        opt.tol("universal.fidelity", 1e-12)));
    suite.checks.push_back(detail::near("universal.eta-2/3", worst_eta, 2.0 / 3.0,
                                        opt.tol("universal.eta", 1e-12)));
    suite.checks.push_back(detail::at_most("universal.symmetry-trace-distance", max_sym,
                                           opt.tol("universal.symmetry", 1e-12)));
    suite.checks.push_back(detail::at_most("universal.orientation-cross-product", max_cross,
                                           opt.tol("universal.orientation", 1e-10)));
    return suite;
}

// Teleportation channel: three-way equivalence, Kraus completeness, POVM
// elements, shot statistics against Pr(Phi) = 1/3 for input |0>.
inline Suite verify_teleport(const VerifyOptions& opt = {}) {
    Suite suite{"teleport", {}, {}};
    const auto eq = teleport::verify_channel_equivalence(opt.inputs, opt.seed);
    const double tol_eq = opt.tol("teleport.equivalence", 1e-12);
    suite.checks.push_back(
        detail::at_most("teleport.sim-vs-kraus", eq.max_distance_sim_kraus, tol_eq));
    suite.checks.push_back(
        detail::at_most("teleport.sim-vs-universal", eq.max_distance_sim_universal, tol_eq));
    suite.checks.push_back(
        detail::at_most("teleport.kraus-vs-universal", eq.max_distance_kraus_universal, tol_eq));

    const auto ch = teleport::kraus_channel();
    ComplexMatrix sum(2, 2);
    for (const auto& g : ch.groups)
        for (const auto& a : g.ops) sum = sum + a.adjoint() * a;
    suite.checks.push_back(detail::at_most("teleport.kraus-completeness",
                                           (sum - ComplexMatrix::identity(2)).max_abs(),
                                           opt.tol("teleport.completeness", 1e-14)));
    ComplexMatrix ePhi(2, 2);
    ePhi(0, 0) = 1.0 / 3.0;
    ePhi(1, 1) = 2.0 / 3.0;
    suite.checks.push_back(detail::at_most("teleport.povm-phi",
                                           (ch.group("Phi").povm - ePhi).max_abs(),
                                           opt.tol("teleport.povm", 1e-15)));

    RandomSource rng(opt.seed + 1);
    const auto run = teleport::run_teleport_clone(StateVector::basis(2, 0), opt.shots, rng);
    const double freq = static_cast<double>(run.outcomes[0].count + run.outcomes[1].count) /
                        static_cast<double>(opt.shots);
    const double p = 1.0 / 3.0;
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(opt.shots));
    suite.checks.push_back(detail::near("teleport.phi-frequency-3sigma", freq, p, 3.0 * sigma));
    return suite;
}

// State-dependent cloner: cross-formula consistency on the theta grid plus
// the Bloch-vector claims.
inline Suite verify_statedep(const VerifyOptions& opt = {}) {
    Suite suite{"statedep", {}, {}};
    double max_geo = 0.0, max_constructed = 0.0, max_overlap = 0.0, max_local = 0.0;
    double min_fl1 = 1.0, min_mod = 1.0;
    const int grid = 200;
    for (int i = 0; i <= grid; ++i) {
        const double theta = (statedep::kPi / 4.0) * i / grid;
        const statedep::TwoStateEnsemble e(theta);
        max_geo = std::max(max_geo,
                           std::abs(statedep::global_fidelity_geometric(statedep::geometry(e)) -
                                    statedep::global_fidelity_opt(e)));
        const auto alpha = statedep::apply(e, statedep::InputLabel::A);
        const auto beta = statedep::apply(e, statedep::InputLabel::B);
        max_constructed =
            std::max(max_constructed, std::abs(statedep::global_fidelity(e, alpha.joint,
                                                                         beta.joint) -
                                               statedep::global_fidelity_opt(e)));
        max_overlap =
            std::max(max_overlap, std::abs(alpha.joint.inner(beta.joint).real() - e.overlap()));
        const auto [a, b] = statedep::input_states(e);
        const double fl1 = statedep::local_fidelity_1(e.overlap());
        max_local = std::max(max_local, std::abs(fidelity_pure(alpha.rho_clone, a) - fl1));
        min_fl1 = std::min(min_fl1, fl1);
        min_mod = std::min(min_mod, statedep::bloch_modulus(e));
    }
    suite.checks.push_back(detail::at_most("statedep.geometric-vs-closed-form", max_geo,
                                           opt.tol("statedep.geometry", 1e-12)));
    suite.checks.push_back(detail::at_most("statedep.constructed-vs-optimal", max_constructed,
                                           opt.tol("statedep.constructed", 1e-10)));
    suite.checks.push_back(detail::at_most("statedep.output-overlap-vs-S", max_overlap,
                                           opt.tol("statedep.overlap", 1e-12)));
    suite.checks.push_back(detail::at_most("statedep.local-fidelity-formula-vs-simulation",
                                           max_local, opt.tol("statedep.local", 1e-10)));
    suite.checks.push_back(
        detail::at_least("statedep.min-local-fidelity-above-5/6", min_fl1, 5.0 / 6.0 + 1e-9));
    suite.checks.push_back(
        detail::at_least("statedep.min-bloch-modulus-above-2/3", min_mod, 2.0 / 3.0 + 1e-9));
    return suite;
}

// Eavesdropping cloners: dominance chain with the printed gap maxima, the
// cloner-coincidence condition, and the closed form vs constructive path.
inline Suite verify_eavesdrop(const VerifyOptions& opt = {}) {
    Suite suite{"eavesdrop", {}, {}};
    double min21 = 1.0, min32 = 1.0;
    double max21 = -1.0, arg21 = 0.0, max32 = -1.0, arg32 = 0.0;
    const int grid = 500;
    for (int i = 0; i < grid; ++i) {
        const double s = static_cast<double>(i) / (grid - 1);
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
    suite.checks.push_back(
        detail::at_least("eavesdrop.chain-fl2-ge-fl1", min21, 0.0, opt.tol("eavesdrop.chain", 1e-12)));
    suite.checks.push_back(
        detail::at_least("eavesdrop.chain-fl3-ge-fl2", min32, 0.0, opt.tol("eavesdrop.chain", 1e-12)));
    suite.checks.push_back(
        detail::near("eavesdrop.max-gap-fl2-fl1", max21, 0.000651, opt.tol("eavesdrop.gap", 1e-4)));
    suite.checks.push_back(detail::near("eavesdrop.argmax-gap-fl2-fl1", arg21, 0.579924, 0.01));
    suite.checks.push_back(
        detail::near("eavesdrop.max-gap-fl3-fl2", max32, 0.001134, opt.tol("eavesdrop.gap", 1e-4)));
    suite.checks.push_back(detail::near("eavesdrop.argmax-gap-fl3-fl2", arg32, 0.5, 0.01));
    if (std::abs(max32 - 0.001134) > 2e-5) {
        suite.flags.push_back(
            "max(F_l3 - F_l2) = " + std::to_string(max32) +
            " deviates from the printed 0.001134 by more than 2e-5 (flagged, not failing)");
    }

    double max_mismatch = 0.0, max_formula = 0.0;
    for (int i = 1; i < 100; ++i) {
        const double s = static_cast<double>(i) / 100.0;
        const auto rep = eavesdrop::cloner_condition_check(s);
        max_mismatch = std::max({max_mismatch, rep.max_mismatch_a, rep.max_mismatch_b});
        const eavesdrop::EaveInteraction at{rep.alpha, rep.phi, 0.5 * std::asin(s)};
        max_formula = std::max(max_formula, std::abs(eavesdrop::local_fidelity_2(s) -
                                                     eavesdrop::eave_fidelity(at)));
    }
    suite.checks.push_back(detail::at_most("eavesdrop.cloner-condition-probe-vs-receiver",
                                           max_mismatch, opt.tol("eavesdrop.condition", 1e-10)));
    suite.checks.push_back(detail::at_most("eavesdrop.fl2-closed-vs-constructive", max_formula,
                                           opt.tol("eavesdrop.fl2", 1e-10)));
    return suite;
}

// Numerical re-derivations of the optimality claims.
inline Suite verify_optimize(const VerifyOptions& opt = {}) {
    Suite suite{"optimize", {}, {}};
    optimize::SolveOptions sopt;
    sopt.seed = opt.seed * 1000003ULL + 20210ULL;

    const auto eta = optimize::maximize_universal_eta(1e-8, sopt);
    suite.checks.push_back(detail::near("optimize.appendix-A-eta", eta.best_value, 2.0 / 3.0,
                                        opt.tol("optimize.eta", 1e-6)));
    suite.checks.push_back(detail::at_most("optimize.appendix-A-residual",
                                           eta.converged ? eta.constraint_residual : 1.0, 1e-8));
    const auto dec = optimize::decode_universal_parameters(eta.best_parameters);
    suite.checks.push_back(
        detail::near("optimize.appendix-A-a-squared", dec.mag_a * dec.mag_a, 2.0 / 3.0, 1e-4));
    suite.checks.push_back(detail::near("optimize.appendix-A-c", dec.mag_c, 0.0, 1e-4));

    const auto scan = optimize::no_ancilla_scan(128);
    suite.checks.push_back(
        detail::at_most("optimize.no-ancilla-max-eta", scan.max_feasible_eta, 1e-8));
    double case_worst = 0.0;
    for (double v : scan.case_max_eta) case_worst = std::max(case_worst, v);
    suite.checks.push_back(detail::at_most("optimize.no-ancilla-case-eta", case_worst, 0.0));

    for (const auto& [label, theta] :
         {std::pair{std::string("pi/16"), statedep::kPi / 16.0},
          {std::string("pi/8"), statedep::kPi / 8.0},
          {std::string("3pi/16"), 3.0 * statedep::kPi / 16.0}}) {
        const auto gf = optimize::maximize_global_fidelity_full(theta, 1e-8, sopt);
        const double expect = statedep::global_fidelity_opt(statedep::TwoStateEnsemble(theta));
        suite.checks.push_back(detail::near("optimize.appendix-B-fg(" + label + ")",
                                            gf.best_value, expect, opt.tol("optimize.fg", 1e-8)));
        const auto gd = optimize::decode_global_fidelity_parameters(gf.best_parameters);
        suite.checks.push_back(detail::at_most("optimize.appendix-B-c0,c1(" + label + ")",
                                               std::max(gd.mag_c0, gd.mag_c1), 1e-6));
    }

    for (double s : {0.25, 0.5, 0.75}) {
        const auto lf = optimize::maximize_local_fidelity_statedep(s);
        suite.checks.push_back(detail::near(
            "optimize.local-fidelity-opt(S=" + std::to_string(s).substr(0, 4) + ")",
            lf.best_value, eavesdrop::local_fidelity_3(s), opt.tol("optimize.fl3", 1e-7)));
    }
    return suite;
}

// Depolarizing-channel capacity bound.
inline Suite verify_capacity(const VerifyOptions& opt = {}) {
    Suite suite{"capacity", {}, {}};
    suite.checks.push_back(detail::near("capacity.bound-at-0.5",
                                        capacity::q_upper_bound(0.5).bound, 0.0, 0.0));
    suite.checks.push_back(detail::near("capacity.bound-at-2/3",
                                        capacity::q_upper_bound(2.0 / 3.0).bound, 0.0, 0.0));
    suite.checks.push_back(
        detail::near("capacity.bound-at-1", capacity::q_upper_bound(1.0).bound, 1.0, 1e-12));
    suite.checks.push_back(detail::near("capacity.bound-at-0.8",
                                        capacity::q_upper_bound(0.8).bound, 0.390160,
                                        opt.tol("capacity.bound", 1e-6)));
    double min_step = 0.0;
    double prev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double eta = static_cast<double>(i) / 999.0;
        const double b = capacity::q_upper_bound(eta).bound;
        if (i > 0) min_step = std::min(min_step, b - prev);
        prev = b;
    }
    suite.checks.push_back(
        detail::at_least("capacity.nondecreasing-min-step", min_step, 0.0, 1e-15));
    return suite;
}

inline std::vector<Suite> verify_all(const VerifyOptions& opt = {}) {
    return {verify_universal(opt), verify_teleport(opt),  verify_statedep(opt),
            verify_eavesdrop(opt), verify_optimize(opt), verify_capacity(opt)};
}

inline Suite suite_by_name(const std::string& name, const VerifyOptions& opt = {}) {
    if (name == "universal") return verify_universal(opt);
    if (name == "teleport") return verify_teleport(opt);
    if (name == "statedep") return verify_statedep(opt);
    if (name == "eavesdrop") return verify_eavesdrop(opt);
    if (name == "optimize") return verify_optimize(opt);
    if (name == "capacity") return verify_capacity(opt);
    throw std::invalid_argument("unknown verification suite '" + name + "'");
}

}  // namespace qclone::verify
