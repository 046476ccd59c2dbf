#pragma once

// Property suites behind `verify-all` and the acceptance runner. Each suite
// draws a seeded corpus, checks the certified inequalities/identities at
// their stated tolerances and reports the worst slack it saw. Suites are
// deliberately cross-routed: constants are recomputed from independent
// formulas (the quadratic coefficients vs the closed forms), inequalities
// are evaluated against quadrature rather than against the code that
// produced them.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ultrasphere/ckp.hpp"
#include "ultrasphere/common.hpp"
#include "ultrasphere/core.hpp"
#include "ultrasphere/figures.hpp"
#include "ultrasphere/flow.hpp"
#include "ultrasphere/improve.hpp"
#include "ultrasphere/numerics.hpp"
#include "ultrasphere/region.hpp"
#include "ultrasphere/spectral.hpp"
#include "ultrasphere/table.hpp"

namespace ultrasphere::verify {

struct Report {
    std::string suite;
    int cases_run = 0;
    double worst_slack = kInf;
    bool pass = true;
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::string> failures;

    void tally(double slack, double tol, const std::string& what) {
        ++cases_run;
        worst_slack = std::min(worst_slack, slack);
        if (!(slack >= -tol)) fail(what + " (slack " + format_double(slack) + ")");
    }

    void require(bool ok, const std::string& what) {
        ++cases_run;
        if (!ok) fail(what);
    }

    void fail(const std::string& what) {
        pass = false;
        if (failures.size() < 20) failures.push_back(what);
    }
};

namespace corpus {

// exp of a low-degree random profile: positive, smooth, O(1) amplitude
inline GridFunction positive_u(std::shared_ptr<const Basis> basis, Rng& rng) {
    const double a1 = rng.uniform(-0.6, 0.6), a2 = rng.uniform(-0.5, 0.5);
    const double a3 = rng.uniform(-0.3, 0.3), a4 = rng.uniform(-0.4, 0.4);
    return GridFunction::sample(
        basis,
        [&](double x) { return std::exp(a1 * x + a2 * x * x + a3 * x * x * x + a4 * std::sin(2.0 * x)); },
        true);
}

inline GridFunction signed_u(std::shared_ptr<const Basis> basis, Rng& rng) {
    const double c0 = rng.uniform(-1.0, 1.0), c1 = rng.uniform(-1.0, 1.0);
    const double c2 = rng.uniform(-0.8, 0.8), c3 = rng.uniform(-0.5, 0.5);
    const double cs = rng.uniform(-0.7, 0.7);
    return GridFunction::sample(basis, [&](double x) {
        return c0 + c1 * x + c2 * x * x + c3 * x * x * x + cs * std::sin(2.5 * x);
    });
}

inline GridFunction normalized_l2(const GridFunction& u) {
    const double n = std::sqrt(norm2sq(u));
    std::vector<double> v(u.values());
    for (double& x : v) x /= n;
    return GridFunction(u.basis_ptr(), std::move(v));
}

// the seeded flow family 1 + a x + b x^2 + c sin(pi x / 2), |a|+|b|+|c| <= 0.5
inline GridFunction flow_initial(std::shared_ptr<const Basis> basis, Rng& rng) {
    double a = rng.uniform(-1.0, 1.0), b = rng.uniform(-1.0, 1.0), c = rng.uniform(-1.0, 1.0);
    const double target = rng.uniform(0.15, 0.5);
    const double scale = target / (std::abs(a) + std::abs(b) + std::abs(c));
    a *= scale;
    b *= scale;
    c *= scale;
    return GridFunction::sample(
        basis,
        [&](double x) { return 1.0 + a * x + b * x * x + c * std::sin(1.5707963267948966 * x); },
        true);
}

}  // namespace corpus

// ---- suite 1: exact constants ----------------------------------------------

inline Report constants_suite() {
    Report rep;
    rep.suite = "constants";
    rep.provenance = {{"gamma1-at-p2", "(4d-1)/(d+2)^2"},
                      {"thresholds-d2", "9 +- 4 sqrt 3"},
                      {"double-roots", "beta(1,d)=1, beta(2*,d)=(d-2)/(d-3)"},
                      {"ckp-constants", "kappa(1)=1, |kappa'(2)|=1/8"}};
    for (int d = 1; d <= 10; ++d) {
        const double want = (4.0 * d - 1.0) / ((d + 2.0) * (d + 2.0));
        rep.tally(1e-12 - std::abs(improve::gamma1(2.0, d) - want), 0.0,
                  "gamma1(2,d) mismatch at d=" + std::to_string(d));
    }
    const auto pm = region::p_thresholds(2.0);
    rep.require(pm.has_value(), "p thresholds undefined at d=2");
    if (pm) {
        const double lo = 9.0 - 4.0 * std::sqrt(3.0), hi = 9.0 + 4.0 * std::sqrt(3.0);
        rep.tally(1e-10 - std::abs(pm->first - lo), 0.0, "p_-(2) != 9-4sqrt3");
        rep.tally(1e-10 - std::abs(pm->second - hi), 0.0, "p_+(2) != 9+4sqrt3");
        rep.tally(5e-5 - std::abs(pm->first - 2.0718), 0.0, "p_-(2) != 2.0718 to 4 decimals");
        rep.tally(5e-5 - std::abs(pm->second - 15.9282), 0.0, "p_+(2) != 15.9282 to 4 decimals");
    }
    for (int d = 4; d <= 8; ++d) {
        const auto at1 = region::beta_roots(1.0, d);
        rep.require(at1.has_value(), "beta roots undefined at p=1");
        if (at1) {
            rep.tally(1e-10 - std::abs(at1->first - 1.0), 0.0, "beta_-(1,d) != 1");
            rep.tally(1e-10 - std::abs(at1->second - 1.0), 0.0, "beta_+(1,d) != 1");
        }
        const double pstar = 2.0 * d / (d - 2.0);
        const double want = (d - 2.0) / (d - 3.0);
        const auto atc = region::beta_roots(pstar, d);
        rep.require(atc.has_value(), "beta roots undefined at p=2*");
        if (atc) {
            rep.tally(1e-10 - std::abs(atc->first - want), 0.0, "beta_-(2*,d) mismatch");
            rep.tally(1e-10 - std::abs(atc->second - want), 0.0, "beta_+(2*,d) mismatch");
        }
    }
    rep.require(ckp::kappa(1.0) == 1.0, "kappa(1) != 1");
    rep.require(ckp::kKappaPrimeAt2 == 0.125, "|kappa'(2)| != 1/8");
    // both one-sided difference quotients of kappa approach 1/8 in modulus
    const double left = std::abs((ckp::kappa(2.0 - 1e-7) - 0.0) / (-1e-7));
    const double right = std::abs((ckp::kappa(2.0 + 1e-7) - 0.0) / (1e-7));
    rep.tally(1e-6 - std::abs(left - 0.125), 0.0, "kappa'(2-) != -1/8");
    rep.tally(1e-6 - std::abs(right - 0.125), 0.0, "kappa'(2+) != 1/8");
    return rep;
}

// ---- suite 2: region classification -----------------------------------------

inline Report region_suite(std::uint64_t seed) {
    Report rep;
    rep.suite = "region";
    rep.provenance = {{"sign-classification", "gamma >= 0 case table"},
                      {"nonempty-boundary", "d=2 flip at 9+4sqrt3"},
                      {"disc-closed-form", "b^2-a = d(p-1)(2d/(d-2)-p)/((d-2)(d+2)^2)"}};
    Rng rng(seed);
    for (int t = 0; t < 500; ++t) {
        const double p = rng.uniform(1.0, 12.0);
        const double d = t % 3 == 0 ? rng.uniform_int(1, 10) : rng.uniform(1.0, 10.0);
        const auto cls = region::classify(p, d);
        for (int j = 0; j < 50; ++j) {
            const double beta = rng.uniform(-2.0, 6.0);
            const double g = improve::gamma_beta(beta, p, d);
            if (std::abs(g) <= 1e-10) {
                ++rep.cases_run;
                continue;  // boundary band
            }
            const bool want = g > 0.0;
            rep.require(cls.contains(beta) == want,
                        "classify disagrees with gamma sign at p=" + format_double(p) +
                            ", d=" + format_double(d) + ", beta=" + format_double(beta));
        }
    }
    // root-function consistency
    for (int t = 0; t < 1000; ++t) {
        const double p = rng.uniform(1.0, 12.0);
        const double d = rng.uniform(1.0, 10.0);
        const auto rc = region::coeffs(p, d);
        if (std::abs(rc.a) < 1e-6 || rc.disc < 1e-12) continue;
        const auto roots = region::beta_roots(p, d);
        rep.require(roots.has_value(), "roots missing with a != 0, disc > 0");
        if (roots) {
            rep.tally(1e-9 - std::abs(improve::gamma_beta(roots->first, p, d)), 0.0,
                      "gamma(beta_-) != 0");
            rep.tally(1e-9 - std::abs(improve::gamma_beta(roots->second, p, d)), 0.0,
                      "gamma(beta_+) != 0");
        }
        const double closed = region::disc_closed_form(p, d);
        rep.tally(1e-12 - std::abs(rc.disc - closed) / std::max(1.0, std::abs(closed)), 0.0,
                  "disc closed form mismatch");
    }
    // nonemptiness flips exactly once through 9+4sqrt3 on a 1e-4 grid
    int flips = 0;
    bool prev = region::admissible_set(15.90, 2.0).nonempty;
    rep.require(prev, "expected nonempty admissible set at p=15.90, d=2");
    for (int i = 1; i <= 500; ++i) {
        const double p = 15.90 + 1e-4 * i;
        const bool cur = region::admissible_set(p, 2.0).nonempty;
        if (cur != prev) ++flips;
        prev = cur;
    }
    rep.require(flips == 1, "admissible set should flip exactly once near 9+4sqrt3, saw " +
                                std::to_string(flips));
    rep.require(!region::admissible_set(15.95, 2.0).nonempty,
                "expected empty admissible set at p=15.95, d=2");
    return rep;
}

// ---- suite 3: main improved inequality --------------------------------------

struct MainIneqOptions {
    // Test-harness hook: offsets the gamma1 value used when assembling the
    // improvement functions. The suite cross-checks that value against the
    // quadratic-coefficient route, so any offset beyond 1e-12 must fail.
    double gamma1_offset = 0.0;
};

namespace detail {

inline double phi_with_g1(double s, double p, double d, double g1) {
    const double h = 1.0 + (p - 2.0) * s;
    const double inner = s / h;
    if (p <= 2.0) return h * improve::varphi1_with(inner, p, d, g1);
    const auto adm = region::admissible_set(p, d);
    if (!adm.nonempty) throw domain_error("phi_with_g1: empty admissible set");
    const auto eval = [&](double beta) {
        return beta <= 1.0 + 1e-9 ? improve::varphi1_with(inner, p, d, g1)
                                  : improve::varphi_beta(inner, beta, p, d);
    };
    const double lo = adm.lo();
    const double hi = adm.bounded()
                          ? adm.hi()
                          : improve::detail::plateau_limit(eval, lo);
    double best = eval(lo);
    for (int i = 1; i < 17; ++i) best = std::max(best, eval(lo + (hi - lo) * i / 16.0));
    const auto ref = num::golden_max(eval, lo, hi, 1e-7 * (1.0 + hi - lo));
    return h * std::max(best, ref.second);
}

}  // namespace detail

inline Report main_inequality_suite(std::uint64_t seed, const MainIneqOptions& opts = {}) {
    Report rep;
    rep.suite = "main-inequality";
    rep.provenance = {{"improved-interpolation", "d Phi(e) <= i"},
                      {"improved-log-sobolev", "log-entropy <= (4/g*) log(1+g*/(2d) i)"},
                      {"gamma1-consistency", "gamma(1) equals -(a-2b+1)"}};
    Rng rng(seed);
    const std::vector<std::pair<double, double>> configs = {
        {1.2, 10.0}, {1.5, 2.0}, {2.5, 5.0}, {3.0, 3.0}, {4.0, 1.0}};
    for (const auto& [p, d] : configs) {
        const double g1 = improve::gamma1(p, d) + opts.gamma1_offset;
        // independent route: gamma(1) = -(a - 2b + 1) from the quadratic coefficients
        const auto rc = region::coeffs(p, d);
        const double g1_region = -(rc.a - 2.0 * rc.b + 1.0);
        rep.require(std::abs(g1 - g1_region) <= 1e-12,
                    "gamma1 disagrees with the coefficient route at p=" + format_double(p) +
                        ", d=" + format_double(d));
        auto basis = shared_basis(d, 64);
        for (int t = 0; t < 50; ++t) {
            GridFunction u = [&] {
                if (t % 10 == 0) {  // near-sharp lowest-mode profile
                    const double eps = rng.uniform(0.02, 0.25);
                    return corpus::normalized_l2(GridFunction::sample(
                        basis, [eps](double x) { return 1.0 + eps * x; }, true));
                }
                return corpus::normalized_l2(corpus::positive_u(basis, rng));
            }();
            const double e = entropy(u, p);
            const double i = fisher(u);
            const double slack = i - d * detail::phi_with_g1(e, p, d, g1);
            rep.tally(slack, 1e-8, "d Phi(e) > i at p=" + format_double(p) +
                                       ", d=" + format_double(d));
        }
    }
    for (double d : {2.0, 3.0}) {
        const double g1star = improve::gamma1(2.0, d) + opts.gamma1_offset;
        const auto rc = region::coeffs(2.0, d);
        rep.require(std::abs(g1star - (-(rc.a - 2.0 * rc.b + 1.0))) <= 1e-12,
                    "gamma1* disagrees with the coefficient route at d=" + format_double(d));
        auto basis = shared_basis(d, 64);
        for (int t = 0; t < 25; ++t) {
            GridFunction u = corpus::positive_u(basis, rng);
            const double n2 = norm2sq(u);
            const double lhs = log_entropy(u) / n2;
            const double rhs = improve::improved_log_sobolev_rhs_with(fisher(u) / n2, d, g1star);
            rep.tally(rhs - lhs, 1e-8, "improved log-Sobolev fails at d=" + format_double(d));
        }
    }
    return rep;
}

// ---- suite 4: beta -> 1 limit ------------------------------------------------

inline Report beta_limit_suite() {
    Report rep;
    rep.suite = "beta-limit";
    rep.provenance = {{"varphi-collapse", "varphi_beta -> varphi1 as beta -> 1+"}};
    const double p = 2.5, d = 5.0;
    double worst = 0.0;
    // grid over (0, 1.9]: the admissible range is (0, 2), but d(varphi)/d(beta)
    // grows unboundedly toward the endpoint where varphi1 itself diverges, so
    // the 1e-4 collapse tolerance is meaningful only away from it
    for (int i = 1; i <= 38; ++i) {
        const double s = 0.05 * i;
        const double diff =
            std::abs(improve::varphi_beta(s, 1.0 + 1e-5, p, d) - improve::varphi1(s, p, d));
        worst = std::max(worst, diff);
        ++rep.cases_run;
    }
    rep.worst_slack = 1e-4 - worst;
    if (!(worst < 1e-4))
        rep.fail("max |varphi_{1+1e-5} - varphi1| = " + format_double(worst) + " >= 1e-4");
    return rep;
}

// ---- suite 5: flows ----------------------------------------------------------

inline Report flow_suite(std::uint64_t seed) {
    Report rep;
    rep.suite = "flow";
    rep.provenance = {{"mass-conservation", "int w^{beta p} constant"},
                      {"lyapunov", "i - d e nonincreasing"},
                      {"energy-decay", "-(1/(2b^2)) E' >= gamma int |w'|^4/w^2 nu^2"},
                      {"differential-inequality", "e'' + d e' >= (g1/2)|e'|^2/(1-(p-2)e)"}};
    struct Cfg {
        double beta, p, d;
    };
    const std::vector<Cfg> configs = {
        {1.0, 1.5, 2.0}, {1.0, 2.5, 2.0}, {4.0 / 3.0, 3.0, 3.0}, {1.8, 2.5, 5.0}};
    Rng rng(seed);
    for (const auto& c : configs) {
        flow::FlowConfig fc;
        fc.beta = c.beta;
        fc.p = c.p;
        fc.d = c.d;
        auto basis = shared_basis(c.d, fc.N);
        for (int run = 0; run < 10; ++run) {
            GridFunction w0 = corpus::flow_initial(basis, rng);
            flow::FlowTrace tr;
            try {
                tr = flow::run_flow(w0, fc);
            } catch (const std::exception& ex) {
                rep.fail(std::string("run_flow failed: ") + ex.what());
                continue;
            }
            rep.tally(1e-6 - tr.mass_drift_rel(), 0.0, "mass drift beyond 1e-6");
            rep.tally(1e-10 - tr.max_energy_increment(c.d), 0.0, "i - d e increased");
            rep.tally(tr.min_decay_residual(), 1e-6, "energy-decay inequality violated");
            // convergence toward the constant with the conserved mass
            const double wbar = std::pow(tr.mass.back(), 1.0 / (c.beta * c.p));
            double dev0 = 0.0, dev1 = 0.0;
            for (int i = 0; i < basis->size(); ++i) {
                dev0 = std::max(dev0, std::abs(w0.values()[i] - wbar));
                dev1 = std::max(dev1, std::abs(tr.final_w[i] - wbar));
            }
            rep.require(dev1 < dev0, "sup distance to the constant did not decrease");
            if (c.beta == 1.0) {
                const auto di = flow::check_diff_inequality(tr, c.p, c.d);
                rep.tally(di.min_residual, 1e-4, "differential inequality residual < -1e-4");
                rep.tally(1e-4 - di.eprime_identity_error, 0.0,
                          "entropy production identity e' = -2i off by more than 1e-4");
            }
        }
    }
    return rep;
}

// ---- suite 6: spectral --------------------------------------------------------

inline Report spectral_suite(std::uint64_t seed) {
    Report rep;
    rep.suite = "spectral";
    rep.provenance = {{"eigenvalues", "lambda_k = k(k+d-1)"},
                      {"hypercontractivity", "||exp(t* L) u||_2 <= ||u||_p"},
                      {"orthogonality-bound", "fisher >= d Phi_k(||u||_p^2)"},
                      {"chi-dominance", "chi2 <= max(chi1, chi3)"}};
    Rng rng(seed);

    // discrete eigenvalues of -L on polynomials of degree <= 10, with the
    // operator applied through the pointwise formula nu f'' - d x f'
    for (double d : {2.0, 3.0, 5.0}) {
        auto basis = shared_basis(d, 64);
        const int m = 11;
        std::vector<double> M(m * m, 0.0);
        for (int k = 0; k < m; ++k) {
            std::vector<double> ck(basis->size(), 0.0);
            ck[k] = 1.0;
            const auto q1 = basis->derivative(ck);
            const auto q2 = basis->second_derivative(ck);
            std::vector<double> Lq(basis->size());
            for (int i = 0; i < basis->size(); ++i) {
                const double x = basis->node(i);
                Lq[i] = (1.0 - x * x) * q2[i] - d * x * q1[i];
            }
            const auto row = basis->analyze(Lq);
            for (int j = 0; j < m; ++j) M[j * m + k] = -row[j];
        }
        auto ev = num::symmetric_eigenvalues(M, m);
        for (int k = 0; k < m; ++k) {
            const double want = k * (k + d - 1.0);
            rep.tally(1e-8 - std::abs(ev[k] - want), 0.0,
                      "eigenvalue mismatch at k=" + std::to_string(k) + ", d=" + format_double(d));
        }
    }

    // hypercontractivity at t*
    const std::vector<std::pair<double, double>> hc = {{1.5, 2.0}, {1.2, 3.0}};
    for (const auto& [p, d] : hc) {
        auto basis = shared_basis(d, 64);
        for (int t = 0; t < 50; ++t) {
            GridFunction u = corpus::signed_u(basis, rng);
            const auto [lhs, rhs] = spectral::hypercontractivity_check(u, p);
            rep.tally(rhs - lhs, 1e-9, "hypercontractivity violated at p=" + format_double(p));
        }
    }

    // orthogonality-improved bound: fisher >= d Phi_k(||u||_p^2), ||u||_2 = 1
    struct OC {
        double d, p;
        int k;
    };
    for (const OC& oc : {OC{2.0, 1.5, 1}, OC{3.0, 1.2, 2}}) {
        auto basis = shared_basis(oc.d, 64);
        const double alpha = spectral::eigen_data(oc.k, oc.d).alpha;
        for (int t = 0; t < 50; ++t) {
            GridFunction u = corpus::normalized_l2(
                spectral::project_orthogonal(corpus::signed_u(basis, rng), oc.k));
            const double np = norm_p(u, oc.p);
            const double slack = fisher(u) - oc.d * spectral::Phi_k(np * np, oc.p, alpha);
            rep.tally(slack, 1e-8, "orthogonality-improved bound violated");
            // proof-step chain at gamma in {0.5, 1, 1.5}
            const auto coeffs = spectral::SpectralCoeffs::analyze(u);
            const double tstar = spectral::nelson_time(oc.p, oc.d);
            for (double g : {0.5, 1.0, 1.5}) {
                double mid = 0.0;
                for (int j = oc.k + 1; j < coeffs.size(); ++j) {
                    const double lam = spectral::eigenvalue(j, oc.d);
                    mid += coeffs.coeffs()[j] * coeffs.coeffs()[j] * (-std::expm1(-g * lam * tstar));
                }
                const double lam1 = spectral::eigenvalue(oc.k + 1, oc.d);
                const double lhs = 1.0 - std::pow(np, g);  // ||u||_2 = 1
                const double rhs = -std::expm1(-g * lam1 * tstar) / lam1 * fisher(u);
                rep.tally(mid - lhs, 1e-9, "proof-step lower chain violated");
                rep.tally(rhs - mid, 1e-9, "proof-step upper chain violated");
            }
        }
        // Phi_k grows without bound toward s = 0 (log rate)
        rep.require(spectral::Phi_k(1e-12, oc.p, alpha) > spectral::Phi_k(1e-6, oc.p, alpha) &&
                        spectral::Phi_k(1e-6, oc.p, alpha) > spectral::Phi_k(0.5, oc.p, alpha),
                    "Phi_k not increasing toward 0");
    }

    // the tenfold blow-up factor check at the primary configuration
    {
        const double alpha = spectral::eigen_data(1, 2.0).alpha;
        rep.require(spectral::Phi_k(1e-6, 1.5, alpha) > 10.0 * spectral::Phi_k(0.5, 1.5, alpha),
                    "Phi_k(1e-6) <= 10 Phi_k(0.5) at (d,p,k) = (2, 3/2, 1)");
    }

    // chi dominance on a 1000-point grid at d=2, p=3/2, k=1 (alpha_1 = 3)
    {
        const double p = 1.5, alpha = spectral::eigen_data(1, 2.0).alpha;
        rep.require(alpha == 3.0, "alpha_1 != 3 at d=2");
        for (double g : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75}) {
            double worst = kInf;
            for (int i = 1; i <= 1000; ++i) {
                const double x = i / 1000.0;
                const double c2 = spectral::chi2(x, g, p, alpha);
                const double cap = std::max(spectral::chi1(x, p, alpha), spectral::chi3(x, p));
                worst = std::min(worst, cap - c2);
            }
            rep.tally(worst, 1e-12, "chi2 > max(chi1, chi3) at gamma=" + format_double(g));
        }
    }

    // heat-flow Parseval and the monotone coefficient
    {
        auto basis = shared_basis(3.0, 64);
        for (int t = 0; t < 10; ++t) {
            GridFunction u = corpus::signed_u(basis, rng);
            const auto c = spectral::SpectralCoeffs::analyze(u);
            const double tt = rng.uniform(0.01, 0.5);
            const auto damped = spectral::heat_semigroup(c, tt);
            const double via_grid = norm2sq(damped.to_grid(basis));
            rep.tally(1e-10 - std::abs(via_grid - damped.norm2sq()), 0.0,
                      "heat-flow Parseval mismatch");
        }
        for (double p : {1.2, 1.5, 1.8}) {
            double prev = -kInf;
            bool inc = true;
            for (int i = 0; i <= 40; ++i) {
                const double a = 1.0 + 7.0 * i / 40.0;
                const double v = a / (1.0 - std::pow(p - 1.0, a));
                inc = inc && v > prev;
                prev = v;
            }
            rep.require(inc, "alpha/(1-(p-1)^alpha) not increasing at p=" + format_double(p));
        }
    }
    return rep;
}

// ---- suite 7: Csiszar-Kullback-Pinsker ---------------------------------------

inline Report ckp_suite(std::uint64_t seed) {
    Report rep;
    rep.suite = "ckp";
    rep.provenance = {{"bregman", "e_psi >= 0"},
                      {"ckgen", "e_psi >= q(q-1) 2^{-2/q} min(...) ||f-g||_q^2"},
                      {"four-regimes", "kappa(p) per regime"},
                      {"poincare-at-1", "constant 1, equality"}};
    Rng rng(seed);
    auto basis = shared_basis(2.0, 64);

    for (double q : {1.0, 1.25, 1.5, 1.75, 2.0}) {
        for (int t = 0; t < 500; ++t) {
            GridFunction f = corpus::positive_u(basis, rng);
            GridFunction g = corpus::positive_u(basis, rng);
            if (q == 1.0) {
                // match masses for the classical inequality
                const double scale = integral(g) / integral(f);
                std::vector<double> v(f.values());
                for (double& x : v) x *= scale;
                f = GridFunction(basis, std::move(v), true);
            }
            const auto repq = ckp::ckgen_bound(f, g, q);
            rep.tally(repq.e_psi, 1e-10, "Bregman divergence negative at q=" + format_double(q));
            rep.tally(repq.slack(), 1e-10, "generalized CKP bound violated at q=" + format_double(q));
        }
    }

    for (double p : {1.5, 2.0, 3.0, 5.0, 2.0 - 1e-4, 2.0 + 1e-4, 4.0 - 1e-4, 4.0 + 1e-4}) {
        const int runs = (p == 1.5 || p == 2.0 || p == 3.0 || p == 5.0) ? 500 : 50;
        for (int t = 0; t < runs; ++t) {
            GridFunction u = corpus::positive_u(basis, rng);
            const auto r = ckp::corollary_ck(u, p);
            rep.tally(r.slack(), 1e-10, "four-regime bound violated at p=" + format_double(p));
        }
    }

    // p = 1 is an identity (Poincare-equivalent form with constant 1)
    for (int t = 0; t < 100; ++t) {
        GridFunction u = corpus::positive_u(basis, rng);
        const auto r = ckp::corollary_ck(u, 1.0);
        rep.tally(1e-12 - std::abs(r.slack()), 0.0, "p=1 case is not an identity");
    }
    rep.require(ckp::kappa(1.0) == 1.0, "kappa(1) != 1");

    // convexity bound behind the p > 2 regimes
    for (double p : {2.5, 3.0, 5.0, 8.0}) {
        double worst = kInf;
        for (int i = 0; i <= 1000; ++i) {
            const double t = i / 1000.0;
            worst = std::min(worst, 1.0 - t - 2.0 / p * (1.0 - std::pow(t, 0.5 * p)));
        }
        rep.tally(worst, 1e-12, "t -> 1 - t - (2/p)(1-t^{p/2}) dips negative at p=" +
                                    format_double(p));
    }
    return rep;
}

// Per-regime breakdown used by the `ckp` CLI subcommand: one report per
// exponent regime plus one for the generalized bound across q.
inline std::vector<Report> ckp_regime_reports(std::uint64_t seed) {
    std::vector<Report> out;
    Rng rng(seed);
    auto basis = shared_basis(2.0, 64);
    {
        Report rep;
        rep.suite = "ckgen (q in [1,2])";
        for (double q : {1.0, 1.25, 1.5, 1.75, 2.0}) {
            for (int t = 0; t < 100; ++t) {
                GridFunction f = corpus::positive_u(basis, rng);
                GridFunction g = corpus::positive_u(basis, rng);
                if (q == 1.0) {
                    const double scale = integral(g) / integral(f);
                    std::vector<double> v(f.values());
                    for (double& x : v) x *= scale;
                    f = GridFunction(basis, std::move(v), true);
                }
                rep.tally(ckp::ckgen_bound(f, g, q).slack(), 1e-10,
                          "generalized bound violated at q=" + format_double(q));
            }
        }
        out.push_back(std::move(rep));
    }
    struct RegimeCfg {
        double p;
        const char* name;
    };
    for (const RegimeCfg& rc : {RegimeCfg{1.5, "regime p in [1,2)"}, RegimeCfg{2.0, "regime p = 2"},
                                RegimeCfg{3.0, "regime p in (2,4)"}, RegimeCfg{5.0, "regime p >= 4"}}) {
        Report rep;
        rep.suite = rc.name;
        for (int t = 0; t < 500; ++t) {
            GridFunction u = corpus::positive_u(basis, rng);
            rep.tally(ckp::corollary_ck(u, rc.p).slack(), 1e-10, "bound violated");
        }
        out.push_back(std::move(rep));
    }
    return out;
}

// ---- suite 8: figures ---------------------------------------------------------

inline Report figures_suite(const std::string& outdir = "") {
    Report rep;
    rep.suite = "figures";
    rep.provenance = {{"profile-figure", "d=5, p=2.5, nine beta values"},
                      {"determinism", "byte-identical re-emission"}};
    using figures::Figure;
    const std::vector<std::pair<Figure, std::string>> figs = {
        {Figure::fig1, "fig1"},   {Figure::fig2, "fig2"},     {Figure::fig3_2, "fig3_2"},
        {Figure::fig4, "fig4"},   {Figure::fig5_1, "fig5_1"}, {Figure::fig5_2, "fig5_2"}};
    figures::FigureConfig cfg;
    cfg.d = 5.0;
    cfg.p = 2.5;
    for (const auto& [which, name] : figs) {
        figures::FigureConfig local = cfg;
        if (which == Figure::fig2) local.d = 3.0;
        if (which == Figure::fig5_1 || which == Figure::fig5_2) {
            local.p = 1.5;
            local.d = 2.0;
        }
        const Table t1 = figures::emit_figure(which, local);
        const Table t2 = figures::emit_figure(which, local);
        const std::string csv1 = to_csv(t1), csv2 = to_csv(t2);
        rep.require(csv1 == csv2, name + " emission not deterministic");
        rep.require(!t1.rows.empty(), name + " is empty");
        if (!outdir.empty()) write_file(outdir + "/" + name + ".csv", csv1);
    }
    // the profile figure uses the nine tabulated beta values and every
    // varphi_beta(e) - e entry is strictly positive for e > 0
    const Table f4 = figures::fig4();
    rep.require(f4.columns.size() == 1 + 18, "fig4 column count unexpected");
    double worst = kInf;
    for (const auto& row : f4.rows)
        for (std::size_t c = 1; c <= 9; ++c) worst = std::min(worst, row[c]);
    rep.tally(worst, 0.0, "some varphi_beta(e) - e <= 0 in fig4");
    rep.require(f4.columns[1].find("2.383") != std::string::npos &&
                    f4.columns[9].find("1.45") != std::string::npos,
                "fig4 beta list is not the tabulated one");
    return rep;
}

inline std::vector<Report> run_all(std::uint64_t seed, const std::string& figures_outdir = "") {
    return {constants_suite(),
            region_suite(seed),
            main_inequality_suite(seed),
            beta_limit_suite(),
            flow_suite(seed),
            spectral_suite(seed),
            ckp_suite(seed),
            figures_suite(figures_outdir)};
}

}  // namespace ultrasphere::verify
