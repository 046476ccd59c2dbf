#pragma once

// Numerical evolution of the mass-preserving flows
//   linear    (beta = 1):  w_t = L w + kappa nu |w'|^2 / w,          kappa = p-1
//   nonlinear (beta > 1):  w_t = w^{2-2beta} (L w + kappa nu |w'|^2/w),
//                                                           kappa = beta(p-2)+1
// with nu = 1-x^2. The nu factor on the gradient term is what makes
// int w^{beta p} dnu_d invariant and, for beta = 1, makes g = w^p obey the
// heat equation g_t = L g. Along either flow, with f = w^beta,
//   - (1/(2 beta^2)) d/dt [ i(f) - d e(f) ] >= gamma(beta) int |w'|^4/w^2 nu^2,
// and i - d e is nonincreasing whenever gamma(beta) >= 0.

#include <cmath>
#include <vector>

#include "ultrasphere/common.hpp"
#include "ultrasphere/core.hpp"
#include "ultrasphere/improve.hpp"
#include "ultrasphere/numerics.hpp"

namespace ultrasphere::flow {

enum class Scheme { explicit_adaptive, semi_implicit };

struct FlowConfig {
    double p = 2.5;
    double d = 2.0;
    double beta = 1.0;  // 1 selects the linear flow
    double dt_initial = 1e-4;
    double t_end = 1.0;
    int N = 48;
    Scheme scheme = Scheme::explicit_adaptive;
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    double positivity_floor = 1e-13;
    double mass_step_tol = 1e-9;    // per-step relative drift triggering rejection
    double lyapunov_tol = 1e-10;    // allowed increment of i - d e per step

    double kappa() const { return beta * (p - 2.0) + 1.0; }
    bool linear() const { return std::abs(beta - 1.0) < 1e-12; }
};

// Time series along a run, recorded at every accepted step. e and i are the
// entropy/Fisher functionals of f = w^beta; mass is int w^{beta p};
// decay_lhs is -(1/(2 beta^2)) (i - d e)' by centered differences (NaN at the
// endpoints); decay_rhs is gamma(beta) int |w'|^4/w^2 nu^2.
struct FlowTrace {
    std::vector<double> times;
    std::vector<double> entropy_e;
    std::vector<double> fisher_i;
    std::vector<double> mass;
    std::vector<double> decay_lhs;
    std::vector<double> decay_rhs;
    std::vector<double> final_w;  // terminal nodal values

    double energy(std::size_t k, double d) const { return fisher_i[k] - d * entropy_e[k]; }

    double max_energy_increment(double d) const {
        double worst = -kInf;
        for (std::size_t k = 1; k < times.size(); ++k)
            worst = std::max(worst, energy(k, d) - energy(k - 1, d));
        return worst;
    }

    double mass_drift_rel() const {
        double lo = mass[0], hi = mass[0];
        for (double m : mass) {
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        return (hi - lo) / std::abs(mass[0]);
    }

    double min_decay_residual() const {
        double worst = kInf;
        for (std::size_t k = 0; k < times.size(); ++k)
            if (std::isfinite(decay_lhs[k])) worst = std::min(worst, decay_lhs[k] - decay_rhs[k]);
        return worst;
    }
};

// Right-hand side at the nodes; throws positivity_error when w touches the
// floor (the flows must not silently clamp).
inline std::vector<double> flow_rhs(const Basis& B, const std::vector<double>& w, double kappa,
                                    double beta, double floor = 1e-13) {
    for (double v : w)
        if (!(v > floor)) throw positivity_error("flow_rhs: w at or below positivity floor");
    const auto c = B.analyze(w);
    auto Lw = B.apply_operator(w);
    const auto w1 = B.derivative(c);
    std::vector<double> rhs(w.size());
    const bool lin = std::abs(beta - 1.0) < 1e-12;
    for (int i = 0; i < B.size(); ++i) {
        const double x = B.node(i);
        const double nu = 1.0 - x * x;
        double v = Lw[i] + kappa * nu * w1[i] * w1[i] / w[i];
        if (!lin) v *= std::pow(w[i], 2.0 - 2.0 * beta);
        rhs[i] = v;
    }
    return rhs;
}

namespace detail {

inline double mass_of(const Basis& B, const std::vector<double>& w, double bp) {
    double acc = 0.0;
    for (int i = 0; i < B.size(); ++i) acc += B.weight(i) * std::pow(w[i], bp);
    return acc;
}

inline double quartic_term(const Basis& B, const std::vector<double>& w) {
    const auto c = B.analyze(w);
    const auto w1 = B.derivative(c);
    double acc = 0.0;
    for (int i = 0; i < B.size(); ++i) {
        const double nu = 1.0 - B.node(i) * B.node(i);
        acc += B.weight(i) * std::pow(w1[i], 4) / (w[i] * w[i]) * nu * nu;
    }
    return acc;
}

struct StepOutcome {
    std::vector<double> w;
    double error = 0.0;  // scaled embedded-error estimate
    bool positive = true;
};

// Dormand-Prince 5(4) pair.
inline StepOutcome dopri_step(const Basis& B, const std::vector<double>& w, double dt, double kappa,
                              double beta, const FlowConfig& cfg) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                        e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const int n = B.size();
    const auto stage = [&](const std::vector<double>& base) {
        return flow_rhs(B, base, kappa, beta, cfg.positivity_floor);
    };
    const auto axpy = [&](std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
        std::vector<double> out(w);
        for (auto& [coef, vec] : terms)
            for (int i = 0; i < n; ++i) out[i] += dt * coef * (*vec)[i];
        return out;
    };

    const auto k1 = stage(w);
    const auto k2 = stage(axpy({{a21, &k1}}));
    const auto k3 = stage(axpy({{a31, &k1}, {a32, &k2}}));
    const auto k4 = stage(axpy({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const auto k5 = stage(axpy({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const auto k6 = stage(axpy({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    StepOutcome out;
    out.w = axpy({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const auto k7 = stage(out.w);

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
        const double le = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                e7 * k7[i]);
        const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(w[i]);
        err += (le / sc) * (le / sc);
        if (!(out.w[i] > cfg.positivity_floor)) out.positive = false;
    }
    out.error = std::sqrt(err / n);
    return out;
}

// First-order IMEX step: L treated implicitly, the gradient term explicitly.
// Solves (I - dt D L) w_new = w + dt D kappa nu |w'|^2/w with
// D = diag(w^{2-2beta}).
inline std::vector<double> imex_step(const Basis& B, const std::vector<double>& w, double dt,
                                     double kappa, double beta, const FlowConfig& cfg) {
    const int n = B.size();
    for (double v : w)
        if (!(v > cfg.positivity_floor)) throw positivity_error("imex_step: positivity lost");
    const auto c = B.analyze(w);
    const auto w1 = B.derivative(c);
    const bool lin = std::abs(beta - 1.0) < 1e-12;

    // dense operator matrix: L e_j sampled at the nodes
    std::vector<double> M(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        std::vector<double> ej(n, 0.0);
        ej[j] = 1.0;
        const auto col = B.apply_operator(ej);
        for (int i = 0; i < n; ++i) M[i * n + j] = col[i];
    }
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
        const double nu = 1.0 - B.node(i) * B.node(i);
        const double pref = lin ? 1.0 : std::pow(w[i], 2.0 - 2.0 * beta);
        rhs[i] = w[i] + dt * pref * kappa * nu * w1[i] * w1[i] / w[i];
        for (int j = 0; j < n; ++j) M[i * n + j] = (i == j ? 1.0 : 0.0) - dt * pref * M[i * n + j];
    }
    // LU with partial pivoting
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int pr = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(M[i * n + k]) > std::abs(M[pr * n + k])) pr = i;
        if (pr != k) {
            for (int j = 0; j < n; ++j) std::swap(M[k * n + j], M[pr * n + j]);
            std::swap(rhs[k], rhs[pr]);
        }
        if (M[k * n + k] == 0.0) throw numeric_error("imex_step: singular system");
        for (int i = k + 1; i < n; ++i) {
            const double f = M[i * n + k] / M[k * n + k];
            M[i * n + k] = 0.0;
            for (int j = k + 1; j < n; ++j) M[i * n + j] -= f * M[k * n + j];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<double> out(n);
    for (int i = n - 1; i >= 0; --i) {
        double acc = rhs[i];
        for (int j = i + 1; j < n; ++j) acc -= M[i * n + j] * out[j];
        out[i] = acc / M[i * n + i];
    }
    return out;
}

}  // namespace detail

struct StepResult {
    GridFunction w;
    double dt_used = 0.0;
};

namespace detail {

// Forward Euler with rejection halving on positivity or mass drift; the
// simple reference step behind step_linear / step_nonlinear.
inline StepResult euler_step(const GridFunction& w, const FlowConfig& cfg, double dt) {
    const Basis& B = w.basis();
    const double bp = cfg.beta * cfg.p;
    const double m0 = mass_of(B, w.values(), bp);
    while (true) {
        if (dt < 1e-12)
            throw numeric_error("flow step: dt underflow below 1e-12 (stiff failure)");
        try {
            const auto rhs = flow_rhs(B, w.values(), cfg.kappa(), cfg.beta, cfg.positivity_floor);
            std::vector<double> next(w.values());
            for (int i = 0; i < B.size(); ++i) next[i] += dt * rhs[i];
            bool pos = true;
            for (double v : next) pos = pos && v > cfg.positivity_floor;
            if (pos) {
                const double m1 = mass_of(B, next, bp);
                // Euler conserves mass only to O(dt^2); scale the guard with dt
                if (std::abs(m1 - m0) <= std::max(cfg.mass_step_tol, 10.0 * dt * dt) * std::abs(m0))
                    return {GridFunction(w.basis_ptr(), std::move(next), true), dt};
            }
        } catch (const positivity_error&) {
        }
        dt *= 0.5;
    }
}

}  // namespace detail

// Single explicit Euler step of the linear flow (kappa = p-1). Positivity
// violations reject the step and halve dt until it fits.
inline StepResult step_linear(const GridFunction& w, const FlowConfig& cfg, double dt) {
    if (!cfg.linear()) throw domain_error("step_linear: cfg.beta must be 1");
    if (!(w.min_value() > 0.0)) throw domain_error("step_linear: w must be positive");
    return detail::euler_step(w, cfg, dt);
}

// Single explicit Euler step of the nonlinear flow (kappa = beta(p-2)+1).
inline StepResult step_nonlinear(const GridFunction& w, const FlowConfig& cfg, double dt) {
    if (!(cfg.beta > 1.0)) throw domain_error("step_nonlinear: cfg.beta must exceed 1");
    if (!(w.min_value() > 0.0)) throw domain_error("step_nonlinear: w must be positive");
    return detail::euler_step(w, cfg, dt);
}

// Full run with adaptive Dormand-Prince stepping (or fixed-step IMEX when
// cfg.scheme says so), recording the trace at every accepted step. A
// Lyapunov increment of i - d e beyond cfg.lyapunov_tol aborts the run: the
// monotonicity is exact for the continuum flow, so a violation flags a
// discretization bug rather than a property of the data.
inline FlowTrace run_flow(const GridFunction& w0, const FlowConfig& cfg) {
    if (!(w0.min_value() > 0.0)) throw domain_error("run_flow: w0 must be positive");
    if (w0.basis().size() != cfg.N || w0.basis().measure().d != cfg.d)
        throw domain_error("run_flow: w0 basis does not match cfg (d, N)");
    const Basis& B = w0.basis();
    const double kappa = cfg.kappa();
    const double gamma = improve::gamma_beta(cfg.beta, cfg.p, cfg.d);
    const double bp = cfg.beta * cfg.p;

    FlowTrace tr;
    const auto record = [&](double t, const std::vector<double>& w) {
        std::vector<double> f(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            f[i] = cfg.linear() ? w[i] : std::pow(w[i], cfg.beta);
        GridFunction gf(w0.basis_ptr(), std::move(f));
        tr.times.push_back(t);
        tr.entropy_e.push_back(entropy(gf, cfg.p));
        tr.fisher_i.push_back(fisher(gf));
        tr.mass.push_back(detail::mass_of(B, w, bp));
        tr.decay_rhs.push_back(gamma * detail::quartic_term(B, w));
    };

    std::vector<double> w = w0.values();
    double t = 0.0;
    record(t, w);
    double dt = cfg.dt_initial;

    while (t < cfg.t_end - 1e-14) {
        dt = std::min(dt, cfg.t_end - t);
        if (dt < 1e-12) throw numeric_error("run_flow: dt underflow below 1e-12 (stiff failure)");

        if (cfg.scheme == Scheme::semi_implicit) {
            std::vector<double> next;
            try {
                next = detail::imex_step(B, w, dt, kappa, cfg.beta, cfg);
            } catch (const positivity_error&) {
                dt *= 0.5;
                continue;
            }
            bool pos = true;
            for (double v : next) pos = pos && v > cfg.positivity_floor;
            const double drift =
                std::abs(detail::mass_of(B, next, bp) - tr.mass.back()) / std::abs(tr.mass[0]);
            if (!pos || drift > std::max(cfg.mass_step_tol, 10.0 * dt * dt)) {
                dt *= 0.5;
                continue;
            }
            w = std::move(next);
            t += dt;
            record(t, w);
            continue;
        }

        detail::StepOutcome st;
        try {
            st = detail::dopri_step(B, w, dt, kappa, cfg.beta, cfg);
        } catch (const positivity_error&) {
            dt *= 0.5;
            continue;
        }
        if (!st.positive || st.error > 1.0) {
            dt *= st.positive ? std::max(0.2, 0.9 * std::pow(st.error, -0.2)) : 0.5;
            continue;
        }
        const double drift = std::abs(detail::mass_of(B, st.w, bp) - tr.mass.back());
        if (drift > cfg.mass_step_tol * std::abs(tr.mass[0])) {
            dt *= 0.5;
            continue;
        }
        w = std::move(st.w);
        t += dt;
        record(t, w);
        const std::size_t k = tr.times.size() - 1;
        const double inc = tr.energy(k, cfg.d) - tr.energy(k - 1, cfg.d);
        if (inc > cfg.lyapunov_tol)
            throw numeric_error("run_flow: i - d e increased beyond tolerance (discretization bug)");
        dt *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(st.error, 1e-10), -0.2)));
    }

    tr.final_w = w;
    // centered differences of the energy on the nonuniform time grid
    const std::size_t m = tr.times.size();
    tr.decay_lhs.assign(m, kNaN);
    for (std::size_t k = 1; k + 1 < m; ++k) {
        const double h1 = tr.times[k] - tr.times[k - 1];
        const double h2 = tr.times[k + 1] - tr.times[k];
        const double Em = tr.energy(k - 1, cfg.d), E0 = tr.energy(k, cfg.d),
                     Ep = tr.energy(k + 1, cfg.d);
        const double dE = -h2 / (h1 * (h1 + h2)) * Em + (h2 - h1) / (h1 * h2) * E0 +
                          h1 / (h2 * (h1 + h2)) * Ep;
        tr.decay_lhs[k] = -dE / (2.0 * cfg.beta * cfg.beta);
    }
    return tr;
}

// Residuals of the differential inequality satisfied along the linear flow,
//   e'' + d e' >= (gamma1/2) |e'|^2 / (1 - (p-2) e),
// by uniform cubic-spline resampling of the recorded entropy and centered
// differences. Also reports how well e' tracks -2i (the entropy production
// identity in this time normalization).
struct DiffIneqResult {
    std::vector<double> residuals;
    double min_residual = kInf;
    double eprime_identity_error = 0.0;  // max |e'/(-2) - i| / max(1, |i|)
    bool coarse_warning = false;
};

inline DiffIneqResult check_diff_inequality(const FlowTrace& tr, double p, double d) {
    DiffIneqResult out;
    const std::size_t n = tr.times.size();
    if (n < 8) {
        out.coarse_warning = true;
        return out;
    }
    const double g1 = improve::gamma1(p, d);
    const int m = 401;
    const double t0 = tr.times.front(), t1 = tr.times.back();
    const double h = (t1 - t0) / (m - 1);
    double median_dt = (t1 - t0) / static_cast<double>(n - 1);
    if (median_dt > 2.0 * h) out.coarse_warning = true;

    num::CubicSpline se(tr.times, tr.entropy_e);
    num::CubicSpline si(tr.times, tr.fisher_i);
    std::vector<double> e(m), iv(m);
    for (int j = 0; j < m; ++j) {
        const double t = t0 + h * j;
        e[j] = se(t);
        iv[j] = si(t);
    }
    for (int j = 1; j + 1 < m; ++j) {
        const double e1 = (e[j + 1] - e[j - 1]) / (2.0 * h);
        const double e2 = (e[j + 1] - 2.0 * e[j] + e[j - 1]) / (h * h);
        const double res = e2 + d * e1 - 0.5 * g1 * e1 * e1 / (1.0 - (p - 2.0) * e[j]);
        out.residuals.push_back(res);
        out.min_residual = std::min(out.min_residual, res);
        const double err = std::abs(-0.5 * e1 - iv[j]) / std::max(1.0, std::abs(iv[j]));
        out.eprime_identity_error = std::max(out.eprime_identity_error, err);
    }
    return out;
}

}  // namespace ultrasphere::flow
