// optimize.hpp
// Independent numerical re-derivation of the optimality claims: the
// universal shrink factor 2/3, the no-ancilla impossibility, the
// state-dependent global-fidelity optimum with outputs confined to
// span{|aa>,|bb>}, and the local-fidelity optimum of the symmetric family.
//
// Engine: gradient-free Nelder-Mead simplex descent with quadratic-penalty
// constraint handling (augmented with running multiplier estimates between
// escalation rounds), geometric penalty escalation and seeded multi-starts.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qclone/linalg.hpp"
#include "qclone/statedep.hpp"
#include "qclone/universal.hpp"

namespace qclone::optimize {

struct OptimizationResult {
    double best_value = 0.0;
    std::vector<double> best_parameters;
    double constraint_residual = std::numeric_limits<double>::infinity();
    long long iterations = 0;  // objective evaluations behind the best start
    bool converged = false;
    std::vector<double> converged_start_values;  // per converged start, for dispersion checks
};

// ---------------------------------------------------------------------------
// Nelder-Mead

struct NelderMeadOptions {
    int max_iterations = 4000;
    double initial_step = 0.25;
    double ftol_rel = 1e-15;
};

namespace detail {

struct NmOutcome {
    std::vector<double> x;
    double value;
    long long evaluations;
};

inline NmOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opt) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> sim(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) sim[i + 1][i] += opt.initial_step;
    std::vector<double> fv(n + 1);
    long long evals = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = f(sim[i]);
        ++evals;
    }
    std::vector<std::size_t> order(n + 1);
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;

    auto sort_order = [&] {
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    };

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    for (int it = 0; it < opt.max_iterations; ++it) {
        sort_order();
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];
        if (fv[worst] - fv[best] <= opt.ftol_rel * (std::abs(fv[best]) + 1e-30)) break;

        for (std::size_t d = 0; d < n; ++d) centroid[d] = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += sim[i][d];
        }
        for (std::size_t d = 0; d < n; ++d) centroid[d] /= static_cast<double>(n);

        for (std::size_t d = 0; d < n; ++d) xr[d] = 2.0 * centroid[d] - sim[worst][d];
        const double fr = f(xr);
        ++evals;
        if (fr < fv[best]) {
            for (std::size_t d = 0; d < n; ++d) xe[d] = 3.0 * centroid[d] - 2.0 * sim[worst][d];
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                sim[worst] = xe;
                fv[worst] = fe;
            } else {
                sim[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            sim[worst] = xr;
            fv[worst] = fr;
        } else {
            for (std::size_t d = 0; d < n; ++d) xc[d] = 0.5 * (centroid[d] + sim[worst][d]);
            const double fc = f(xc);
            ++evals;
            if (fc < fv[worst]) {
                sim[worst] = xc;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == order[0]) continue;
                    for (std::size_t d = 0; d < n; ++d)
                        sim[i][d] = sim[order[0]][d] + 0.5 * (sim[i][d] - sim[order[0]][d]);
                    fv[i] = f(sim[i]);
                    ++evals;
                }
            }
        }
    }
    sort_order();
    return NmOutcome{sim[order[0]], fv[order[0]], evals};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constrained multi-start driver

struct SolveOptions {
    int starts = 20;
    std::uint64_t seed = 20210;
    int penalty_rounds = 6;
    double penalty_factor = 10.0;
    double penalty_mu0 = 10.0;
    int nm_iterations = 4000;
    int nm_restarts_per_round = 3;
    double tolerance = 1e-8;       // post-hoc feasibility requirement
    double value_floor = -1e300;   // starts below this after solving are discarded
};

namespace detail {

// maximizes `objective` subject to residuals(x) == 0 from one start
inline NmOutcome solve_one_start(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::function<std::vector<double>(const std::vector<double>&)>& residuals,
    std::vector<double> x, const SolveOptions& opt) {
    const std::size_t m = residuals(x).size();
    std::vector<double> lambda(m, 0.0);
    double mu = opt.penalty_mu0;
    long long evals = 0;

    auto merit = [&](const std::vector<double>& p) {
        const double g = objective(p);
        const auto r = residuals(p);
        double quad = 0.0, lin = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            quad += r[i] * r[i];
            lin += lambda[i] * r[i];
        }
        return -g + lin + mu * quad;
    };

    double step = 0.3;
    for (int round = 0; round < opt.penalty_rounds; ++round) {
        NelderMeadOptions nm;
        nm.max_iterations = opt.nm_iterations;
        nm.initial_step = step;
        for (int rep = 0; rep < opt.nm_restarts_per_round; ++rep) {
            auto out = nelder_mead(merit, x, nm);
            x = std::move(out.x);
            evals += out.evaluations;
            nm.initial_step *= 0.2;
        }
        const auto r = residuals(x);
        for (std::size_t i = 0; i < m; ++i) lambda[i] += 2.0 * mu * r[i];
        mu *= opt.penalty_factor;
        step = std::max(0.02 * std::pow(0.4, round), 1e-6);
    }
    // polish at the final multiplier estimates
    NelderMeadOptions nm;
    nm.max_iterations = opt.nm_iterations;
    nm.initial_step = 1e-4;
    for (int rep = 0; rep < 3; ++rep) {
        auto out = nelder_mead(merit, x, nm);
        x = std::move(out.x);
        evals += out.evaluations;
        nm.initial_step *= 0.1;
    }
    return NmOutcome{std::move(x), 0.0, evals};
}

inline OptimizationResult solve_multistart(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::function<std::vector<double>(const std::vector<double>&)>& residuals,
    const std::function<std::vector<double>(RandomSource&)>& make_start,
    const SolveOptions& opt) {
    OptimizationResult result;
    for (int s = 0; s < opt.starts; ++s) {
        RandomSource rng(opt.seed + 7919ULL * static_cast<std::uint64_t>(s));
        auto out = solve_one_start(objective, residuals, make_start(rng), opt);
        const double value = objective(out.x);
        double res = 0.0;
        for (double r : residuals(out.x)) res = std::max(res, std::abs(r));
        if (res < opt.tolerance && value > opt.value_floor) {
            result.converged_start_values.push_back(value);
            if (!result.converged || value > result.best_value) {
                result.best_value = value;
                result.best_parameters = out.x;
                result.constraint_residual = res;
                result.iterations = out.evaluations;
                result.converged = true;
            }
        }
    }
    return result;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Universal cloner: maximal shrink factor over the general two-column ansatz
//
// The two candidate columns live in the 8-dimensional joint space and are
// parameterized freely (32 reals); each evaluation first projects them onto
// the isometry manifold (normalization + Gram-Schmidt), then the remaining
// symmetry and isotropy constraints are handled by the penalty machinery.

namespace detail {

struct UniversalBlocks {
    // column 0 blocks: vA (|00>), vB1 (|01>), vB2 (|10>), vC (|11>)
    // column 1 blocks: vCt (|00>), vBt2 (|01>), vBt1 (|10>), vAt (|11>)
    std::array<std::complex<double>, 2> vA, vB1, vB2, vC, vAt, vBt1, vBt2, vCt;
};

inline void project_columns(const std::vector<double>& p,
                            std::array<std::complex<double>, 8>& c0,
                            std::array<std::complex<double>, 8>& c1) {
    for (std::size_t i = 0; i < 8; ++i) {
        c0[i] = {p[2 * i], p[2 * i + 1]};
        c1[i] = {p[16 + 2 * i], p[16 + 2 * i + 1]};
    }
    double n0 = 0.0;
    for (auto& z : c0) n0 += std::norm(z);
    n0 = std::sqrt(std::max(n0, 1e-300));
    for (auto& z : c0) z /= n0;
    std::complex<double> proj = 0.0;
    for (std::size_t i = 0; i < 8; ++i) proj += std::conj(c0[i]) * c1[i];
    for (std::size_t i = 0; i < 8; ++i) c1[i] -= proj * c0[i];
    double n1 = 0.0;
    for (auto& z : c1) n1 += std::norm(z);
    n1 = std::sqrt(std::max(n1, 1e-300));
    for (auto& z : c1) z /= n1;
}

inline UniversalBlocks blocks_from_columns(const std::array<std::complex<double>, 8>& c0,
                                           const std::array<std::complex<double>, 8>& c1) {
    UniversalBlocks b;
    for (std::size_t k = 0; k < 2; ++k) {
        b.vA[k] = c0[0 + k];
        b.vB1[k] = c0[2 + k];
        b.vB2[k] = c0[4 + k];
        b.vC[k] = c0[6 + k];
        b.vCt[k] = c1[0 + k];
        b.vBt2[k] = c1[2 + k];
        b.vBt1[k] = c1[4 + k];
        b.vAt[k] = c1[6 + k];
    }
    return b;
}

inline std::complex<double> bdot(const std::array<std::complex<double>, 2>& u,
                                 const std::array<std::complex<double>, 2>& v) {
    return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];  // <u|v>
}

inline double bnorm2(const std::array<std::complex<double>, 2>& u) {
    return std::norm(u[0]) + std::norm(u[1]);
}

// Symmetry and isotropy constraints (i)-(vii) of the coefficient/overlap
// system, their (1 <-> 2) copies, the exchange-symmetry magnitude ties and
// the symmetry-condition overlap equalities, written on the folded vectors
// v_X = coefficient * ancilla ket.
inline std::vector<double> universal_residuals_of_blocks(const UniversalBlocks& b) {
    const double a2 = bnorm2(b.vA), c2 = bnorm2(b.vC);
    const double at2 = bnorm2(b.vAt), ct2 = bnorm2(b.vCt);
    const double b1m = std::sqrt(bnorm2(b.vB1)), b2m = std::sqrt(bnorm2(b.vB2));
    const double bt1m = std::sqrt(bnorm2(b.vBt1)), bt2m = std::sqrt(bnorm2(b.vBt2));
    const double eta = a2 - c2;

    std::vector<double> r;
    r.reserve(28);
    // symmetry of the reduced outputs: |b1| = |b2| (and tilded)
    r.push_back(b1m - b2m);
    r.push_back(bt1m - bt2m);
    // 0 <-> 1 exchange symmetry ties
    r.push_back(std::sqrt(a2) - std::sqrt(at2));
    r.push_back(b1m - bt1m);
    r.push_back(b2m - bt2m);
    r.push_back(std::sqrt(c2) - std::sqrt(ct2));
    // (i)
    r.push_back(eta - (at2 - ct2));
    // (ii), (iii)
    auto t = bdot(b.vBt1, b.vA) + bdot(b.vAt, b.vB1);
    r.push_back(t.real() - eta);
    r.push_back(t.imag());
    // (iv)
    t = bdot(b.vB1, b.vCt) + bdot(b.vC, b.vBt1);
    r.push_back(t.real());
    r.push_back(t.imag());
    // (v)
    t = bdot(b.vB2, b.vA) + bdot(b.vC, b.vB1);
    r.push_back(t.real());
    r.push_back(t.imag());
    // (vi)
    t = bdot(b.vBt2, b.vAt) + bdot(b.vCt, b.vBt1);
    r.push_back(t.real());
    r.push_back(t.imag());
    // (vii)
    t = bdot(b.vCt, b.vA) - bdot(b.vAt, b.vC);
    r.push_back(t.real());
    r.push_back(t.imag());
    // (1 <-> 2) copies of (ii)-(vi)
    t = bdot(b.vBt2, b.vA) + bdot(b.vAt, b.vB2);
    r.push_back(t.real() - eta);
    r.push_back(t.imag());
    t = bdot(b.vB2, b.vCt) + bdot(b.vC, b.vBt2);
    r.push_back(t.real());
    r.push_back(t.imag());
    t = bdot(b.vB1, b.vA) + bdot(b.vC, b.vB2);
    r.push_back(t.real());
    r.push_back(t.imag());
    t = bdot(b.vBt1, b.vAt) + bdot(b.vCt, b.vBt2);
    r.push_back(t.real());
    r.push_back(t.imag());
    // overlap-magnitude equalities from the symmetry condition
    r.push_back(std::abs(bdot(b.vB1, b.vBt2)) - std::abs(bdot(b.vB2, b.vBt1)));
    r.push_back(std::abs(bdot(b.vB1, b.vBt1)) - std::abs(bdot(b.vB2, b.vBt2)));
    return r;
}

}  // namespace detail

struct UniversalAnsatzDecode {
    double mag_a = 0.0, mag_b1 = 0.0, mag_b2 = 0.0, mag_c = 0.0;
    double mag_a_tilde = 0.0, mag_b1_tilde = 0.0, mag_b2_tilde = 0.0, mag_c_tilde = 0.0;
    double eta = 0.0;  // |a|^2 - |c|^2
    std::vector<Complex> column0, column1;
};

inline UniversalAnsatzDecode decode_universal_parameters(const std::vector<double>& p) {
    if (p.size() != 32) {
        throw std::invalid_argument("decode_universal_parameters: expected 32 parameters");
    }
    std::array<std::complex<double>, 8> c0, c1;
    detail::project_columns(p, c0, c1);
    const auto b = detail::blocks_from_columns(c0, c1);
    UniversalAnsatzDecode d;
    d.mag_a = std::sqrt(detail::bnorm2(b.vA));
    d.mag_b1 = std::sqrt(detail::bnorm2(b.vB1));
    d.mag_b2 = std::sqrt(detail::bnorm2(b.vB2));
    d.mag_c = std::sqrt(detail::bnorm2(b.vC));
    d.mag_a_tilde = std::sqrt(detail::bnorm2(b.vAt));
    d.mag_b1_tilde = std::sqrt(detail::bnorm2(b.vBt1));
    d.mag_b2_tilde = std::sqrt(detail::bnorm2(b.vBt2));
    d.mag_c_tilde = std::sqrt(detail::bnorm2(b.vCt));
    d.eta = d.mag_a * d.mag_a - d.mag_c * d.mag_c;
    d.column0.assign(c0.begin(), c0.end());
    d.column1.assign(c1.begin(), c1.end());
    return d;
}

// Independent feasibility evaluator: recomputes every constraint (including
// the isometry conditions on the projected columns) directly from the
// parameter vector, with no penalty bookkeeping involved.
inline std::vector<double> universal_constraint_residuals(const std::vector<double>& p) {
    std::array<std::complex<double>, 8> c0, c1;
    detail::project_columns(p, c0, c1);
    double n0 = 0.0, n1 = 0.0;
    std::complex<double> dot = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        n0 += std::norm(c0[i]);
        n1 += std::norm(c1[i]);
        dot += std::conj(c0[i]) * c1[i];
    }
    auto r = detail::universal_residuals_of_blocks(detail::blocks_from_columns(c0, c1));
    r.push_back(n0 - 1.0);
    r.push_back(n1 - 1.0);
    r.push_back(dot.real());
    r.push_back(dot.imag());
    return r;
}

// Maximizes eta = 2|a|^2 + 2|b|^2 - 1 over the ansatz under the full
// constraint set; the optimum is 2/3.
inline OptimizationResult maximize_universal_eta(double tolerance = 1e-8,
                                                 SolveOptions opt = {}) {
    opt.tolerance = tolerance;
    auto objective = [](const std::vector<double>& p) {
        std::array<std::complex<double>, 8> c0, c1;
        detail::project_columns(p, c0, c1);
        const auto b = detail::blocks_from_columns(c0, c1);
        const double a2 = detail::bnorm2(b.vA);
        const double bb = 0.5 * (detail::bnorm2(b.vB1) + detail::bnorm2(b.vB2));
        return 2.0 * a2 + 2.0 * bb - 1.0;
    };
    auto residuals = [](const std::vector<double>& p) {
        std::array<std::complex<double>, 8> c0, c1;
        detail::project_columns(p, c0, c1);
        return detail::universal_residuals_of_blocks(detail::blocks_from_columns(c0, c1));
    };
    auto make_start = [](RandomSource& rng) {
        // diverse block-magnitude profiles: squared weights uniform on the
        // simplex, directions and phases Gaussian
        std::vector<double> x(32);
        for (int col = 0; col < 2; ++col) {
            std::array<double, 4> w{};
            double tot = 0.0;
            for (auto& v : w) {
                v = rng.uniform() + 1e-3;
                tot += v;
            }
            for (int blk = 0; blk < 4; ++blk) {
                double g[4];
                double n2 = 0.0;
                for (auto& v : g) {
                    v = rng.normal();
                    n2 += v * v;
                }
                const double scale = std::sqrt(w[blk] / tot / std::max(n2, 1e-12));
                for (int k = 0; k < 4; ++k) x[16 * col + 4 * blk + k] = g[k] * scale;
            }
        }
        return x;
    };
    return detail::solve_multistart(objective, residuals, make_start, opt);
}

// ---------------------------------------------------------------------------
// No-ancilla impossibility scan
//
// With every ancilla overlap replaced by the scalar 1 and the exchange
// symmetry ties in force, feasibility is scanned over the magnitude simplex
// |a|^2 + 2|b|^2 + |c|^2 = 1 with the phase degrees of freedom treated
// optimally (each constraint is tested against the best possible phase
// assignment, a relaxation that can only enlarge the feasible set):
//   (v), (vi)  are satisfiable iff |b| (|a| - |c|) = 0,
//   (ii)+(iii) are satisfiable iff |eta| <= 2 |a||b|,
//   (i), (iv), (vii) are always satisfiable under the magnitude ties.
struct NoAncillaScanReport {
    int resolution = 0;
    long long points_scanned = 0;
    long long feasible_points = 0;
    double max_feasible_eta = 0.0;
    // the four case combinations: {|a|=|c|, |a~|=|c~|}, {|a|=|c|, |b~|=0},
    // {|b|=0, |a~|=|c~|}, {|b|=0, |b~|=0}
    std::array<double, 4> case_max_eta{};
};

inline NoAncillaScanReport no_ancilla_scan(int resolution = 128, double tol = 1e-8) {
    if (resolution < 100) {
        throw std::invalid_argument("no_ancilla_scan: resolution must be at least 100");
    }
    NoAncillaScanReport rep;
    rep.resolution = resolution;
    rep.max_feasible_eta = -1.0;
    for (int i = 0; i < resolution; ++i) {
        const double a2 = static_cast<double>(i) / (resolution - 1);
        const double rem = 1.0 - a2;
        for (int j = 0; j < resolution; ++j) {
            const double b2 = 0.5 * rem * static_cast<double>(j) / (resolution - 1);
            const double c2 = rem - 2.0 * b2;
            ++rep.points_scanned;
            const double am = std::sqrt(a2), bm = std::sqrt(b2), cm = std::sqrt(c2);
            const double eta = a2 - c2;
            const bool v_ok = bm * std::abs(am - cm) <= tol;          // (v) and (vi)
            const bool ii_ok = std::abs(eta) <= 2.0 * am * bm + tol;  // (ii) and (iii)
            if (v_ok && ii_ok) {
                ++rep.feasible_points;
                rep.max_feasible_eta = std::max(rep.max_feasible_eta, eta);
            }
        }
    }

    // case combinations forcing eta = 0 exactly
    for (int cs = 0; cs < 4; ++cs) {
        double worst = 0.0;
        for (int i = 0; i < resolution; ++i) {
            const double t = static_cast<double>(i) / (resolution - 1);
            double eta;
            if (cs == 0 || cs == 1) {
                // |a| = |c| (= sqrt(t/2) on the simplex): eta = |a|^2 - |c|^2
                const double m = std::sqrt(0.5 * t);
                eta = m * m - m * m;
            } else {
                // |b| = 0 (and tilded): constraint (ii) reads
                // eta = Re[b~1* a + a~* b1] = 0 with both b terms absent
                eta = 0.0;
            }
            worst = std::max(worst, std::abs(eta));
        }
        rep.case_max_eta[cs] = worst;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// State-dependent global fidelity over outputs with out-of-subspace parts
//
// |alpha> = a0|aa> + b0|bb> + c0|C0>, |beta> = a1|aa> + b1|bb> + c1|C1>
// with |C0>, |C1> orthogonal to span{|aa>,|bb>}; parameters are
// (Re/Im a0, b0, a1, b1, c0, Re/Im c1, <C0|C1>) = 12 reals, c0 and <C0|C1>
// real without loss of generality.

namespace detail {

struct GlobalFidelityEval {
    double s2;  // S^2

    double objective(const std::vector<double>& p) const {
        const std::complex<double> a0{p[0], p[1]}, b0{p[2], p[3]};
        const std::complex<double> a1{p[4], p[5]}, b1{p[6], p[7]};
        return 0.5 * (std::norm(a0 + b0 * s2) + std::norm(b1 + a1 * s2));
    }

    std::vector<double> residuals(const std::vector<double>& p) const {
        const std::complex<double> a0{p[0], p[1]}, b0{p[2], p[3]};
        const std::complex<double> a1{p[4], p[5]}, b1{p[6], p[7]};
        const double c0 = p[8];
        const std::complex<double> c1{p[9], p[10]};
        const double g = p[11];  // <C0|C1>
        const double s = std::sqrt(s2);

        const auto cross = std::conj(a0) * a1 + std::conj(b0) * b1 +
                           s2 * (std::conj(a0) * b1 + std::conj(b0) * a1) + c0 * c1 * g;
        std::vector<double> r(5);
        r[0] = cross.real() - s;
        r[1] = cross.imag();
        r[2] = std::norm(a0) + std::norm(b0) + 2.0 * s2 * (std::conj(a0) * b0).real() + c0 * c0 -
               1.0;
        r[3] = std::norm(a1) + std::norm(b1) + 2.0 * s2 * (std::conj(a1) * b1).real() +
               std::norm(c1) - 1.0;
        r[4] = std::max(0.0, std::abs(g) - 1.0);  // Gram feasibility of the two unit kets
        return r;
    }
};

}  // namespace detail

struct GlobalFidelityDecode {
    Complex a0, b0, a1, b1, c1;
    double c0 = 0.0;
    double overlap_c0c1 = 0.0;
    double mag_c0 = 0.0, mag_c1 = 0.0;
};

inline GlobalFidelityDecode decode_global_fidelity_parameters(const std::vector<double>& p) {
    if (p.size() != 12) {
        throw std::invalid_argument("decode_global_fidelity_parameters: expected 12 parameters");
    }
    GlobalFidelityDecode d;
    d.a0 = {p[0], p[1]};
    d.b0 = {p[2], p[3]};
    d.a1 = {p[4], p[5]};
    d.b1 = {p[6], p[7]};
    d.c0 = p[8];
    d.c1 = {p[9], p[10]};
    d.overlap_c0c1 = p[11];
    d.mag_c0 = std::abs(d.c0);
    d.mag_c1 = std::abs(d.c1);
    return d;
}

inline OptimizationResult maximize_global_fidelity_full(double theta, double tolerance = 1e-8,
                                                        SolveOptions opt = {}) {
    if (theta <= 0.0 || theta >= statedep::kPi / 4.0) {
        throw std::invalid_argument("maximize_global_fidelity_full: theta must lie in (0, pi/4)");
    }
    opt.tolerance = tolerance;
    const double s = std::sin(2.0 * theta);
    detail::GlobalFidelityEval ev{s * s};
    auto objective = [ev](const std::vector<double>& p) { return ev.objective(p); };
    auto residuals = [ev](const std::vector<double>& p) { return ev.residuals(p); };
    auto make_start = [](RandomSource& rng) {
        std::vector<double> x(12);
        for (auto& v : x) v = 0.7 * rng.normal();
        x[11] = 2.0 * rng.uniform() - 1.0;
        return x;
    };
    return detail::solve_multistart(objective, residuals, make_start, opt);
}

// ---------------------------------------------------------------------------
// Local-fidelity optimum over the symmetric state-dependent family
//
// The family U|00> = a|00> + b(|01>+|10>) + c|11>, U|10> mirrored, with real
// coefficients and unitary columns is one-dimensional: for |b| <= 1/2,
// a^2 = [1 - 2b^2 +- sqrt(1 - 4b^2)]/2 and c = -b^2/a. The local fidelity is
// scanned over b (both branches) and refined by golden-section search.

namespace detail {

inline double statedep_local_fidelity(double b, int branch, double theta) {
    const double b2 = b * b;
    const double disc = 1.0 - 4.0 * b2;
    if (disc < 0.0) return -1.0;
    const double a2 = 0.5 * (1.0 - 2.0 * b2 + (branch == 0 ? std::sqrt(disc) : -std::sqrt(disc)));
    if (a2 <= 1e-14) return -1.0;
    const double a = std::sqrt(a2);
    const double c = -b2 / a;
    const double ct = std::cos(theta), st = std::sin(theta);
    const double al0 = a * ct + c * st;
    const double al1 = b * (ct + st);
    const double al2 = c * ct + a * st;
    // F = <a| rho_1 |a> for the 2-qubit pure output (al0, al1, al1, al2)
    return ct * ct * (al0 * al0 + al1 * al1) + 2.0 * ct * st * al1 * (al0 + al2) +
           st * st * (al1 * al1 + al2 * al2);
}

}  // namespace detail

struct GridRefineOptions {
    int grid_points = 4001;
    int refine_iterations = 200;
};

inline OptimizationResult maximize_local_fidelity_statedep(double s,
                                                           GridRefineOptions opt = {}) {
    if (s <= 0.0 || s >= 1.0) {
        throw std::invalid_argument("maximize_local_fidelity_statedep: S must lie in (0, 1)");
    }
    const double theta = 0.5 * std::asin(s);
    OptimizationResult result;
    double best_b = 0.0;
    int best_branch = 0;
    long long evals = 0;
    for (int branch = 0; branch < 2; ++branch) {
        for (int i = 0; i < opt.grid_points; ++i) {
            const double b = -0.5 + static_cast<double>(i) / (opt.grid_points - 1);
            const double f = detail::statedep_local_fidelity(b, branch, theta);
            ++evals;
            if (f > result.best_value) {
                result.best_value = f;
                best_b = b;
                best_branch = branch;
            }
        }
    }
    // golden-section refinement around the best grid point
    const double h = 1.0 / (opt.grid_points - 1);
    double lo = std::max(-0.5, best_b - h), hi = std::min(0.5, best_b + h);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = detail::statedep_local_fidelity(x1, best_branch, theta);
    double f2 = detail::statedep_local_fidelity(x2, best_branch, theta);
    for (int it = 0; it < opt.refine_iterations && hi - lo > 1e-15; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = detail::statedep_local_fidelity(x2, best_branch, theta);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = detail::statedep_local_fidelity(x1, best_branch, theta);
        }
        evals += 1;
    }
    const double xm = 0.5 * (lo + hi);
    const double fm = detail::statedep_local_fidelity(xm, best_branch, theta);
    if (fm > result.best_value) {
        result.best_value = fm;
        best_b = xm;
    }
    result.best_parameters = {best_b, static_cast<double>(best_branch)};
    result.constraint_residual = 0.0;  // unitarity holds by construction
    result.iterations = evals;
    result.converged = true;
    result.converged_start_values = {result.best_value};
    return result;
}

}  // namespace qclone::optimize
