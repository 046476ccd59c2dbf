#pragma once

// Figure-data tables: the threshold curves p_+-(d), the root curves
// beta_+-(p,d) with the admissible-set boundary, the improvement profiles
// varphi_beta(e) - e for a fixed beta list, the one-parameter improvement
// ratio in xi = ||f||_p/||f||_2, and the chi-ratio curves of the
// orthogonality-improved bounds. Every emitter is a pure function of its
// arguments, so identical configurations produce identical bytes.

#include <cmath>
#include <string>
#include <vector>

#include "ultrasphere/improve.hpp"
#include "ultrasphere/region.hpp"
#include "ultrasphere/spectral.hpp"
#include "ultrasphere/table.hpp"

namespace ultrasphere::figures {

// d -> p_-(d), p_+(d) on d in [1.01, 4].
inline Table fig1() {
    Table t;
    t.columns = {"d", "p_minus", "p_plus"};
    const int n = 600;
    for (int i = 0; i <= n; ++i) {
        const double d = 1.01 + (4.0 - 1.01) * i / n;
        const auto pm = region::p_thresholds(d);
        t.add_row({d, pm ? pm->first : kNaN, pm ? pm->second : kNaN});
    }
    return t;
}

// p -> beta_-(p,d), beta_+(p,d) for one d, with the reference curve
// beta0 = 4/(6-p), the constraint lines 1 and 2/(4-p), and the admissible
// interval end points (NaN where the set is empty).
inline Table fig2(double d, double p_max = 0.0) {
    Table t;
    t.columns = {"p",      "beta_minus", "beta_plus", "beta0",
                 "cap",    "adm_lo",     "adm_hi",    "nonempty"};
    const MeasureParams mp = MeasureParams::make(d);
    double hi = p_max;
    if (hi <= 0.0) hi = std::isfinite(mp.critical_exponent())
                            ? mp.critical_exponent() + 1.0
                            : (d >= 2.0 ? 18.0 : 12.0);
    const int n = 1200;
    for (int i = 1; i <= n; ++i) {
        const double p = 1.0 + (hi - 1.0) * i / n;
        const auto roots = region::beta_roots(p, d);
        const auto adm = region::admissible_set(p, d);
        const double cap = p < 4.0 ? 2.0 / (4.0 - p) : kNaN;
        t.add_row({p, roots ? roots->first : kNaN, roots ? roots->second : kNaN, 4.0 / (6.0 - p),
                   cap, adm.nonempty ? adm.lo() : kNaN,
                   adm.nonempty ? (std::isinf(adm.hi()) ? kNaN : adm.hi()) : kNaN,
                   adm.nonempty ? 1.0 : 0.0});
    }
    return t;
}

// The d = 2 detail: the coefficient a changes sign on (9-4sqrt3, 9+4sqrt3).
inline Table fig3_2() { return fig2(2.0, 18.0); }

// varphi_beta(e) - e and varphi_beta(e) - varphi_beta0(e) over the
// admissible entropy range for a fixed beta list (default: the nine values
// used for the d = 5, p = 2.5 profile plot).
inline Table fig4(double d = 5.0, double p = 2.5, std::vector<double> betas = {}) {
    if (betas.empty())
        betas = {2.383, 2.267, 2.15, 2.033, 1.917, 1.8, 1.683, 1.567, 1.45};
    Table t;
    t.columns = {"e"};
    for (double b : betas) t.columns.push_back("phi_minus_e_beta_" + format_label(b));
    for (double b : betas) t.columns.push_back("phi_beta_minus_phi_beta0_" + format_label(b));
    const double beta0 = 4.0 / (6.0 - p);
    const double e_max = 1.0 / (p - 2.0);
    const int n = 99;
    for (int i = 1; i <= n; ++i) {
        const double e = e_max * i / (n + 1.0);
        std::vector<double> row{e};
        const double ref = improve::varphi_beta(e, beta0, p, d);
        for (double b : betas) row.push_back(improve::varphi_beta(e, b, p, d) - e);
        for (double b : betas) row.push_back(improve::varphi_beta(e, b, p, d) - ref);
        t.add_row(std::move(row));
    }
    return t;
}

// Improvement ratio of the linear-flow profile against the plain inequality,
// as a function of xi = ||f||_p/||f||_2:
//   xi -> (2(2-p)/(2(2-p)-gamma1)) (xi^{2+gamma1/(p-2)} - 1)/(xi^2 - 1),
// plotted on (0,1) for p < 2 and (1, xi_max) for p > 2.
inline double fig5_1_ratio(double xi, double p, double d) {
    const double g1 = improve::gamma1(p, d);
    return 2.0 * (2.0 - p) / (2.0 * (2.0 - p) - g1) * (std::pow(xi, 2.0 + g1 / (p - 2.0)) - 1.0) /
           (xi * xi - 1.0);
}

inline Table fig5_1(double p = 1.5, double d = 2.0) {
    Table t;
    t.columns = {"xi", "improvement_ratio"};
    const int n = 400;
    const double lo = p < 2.0 ? 0.005 : 1.005;
    const double hi = p < 2.0 ? 0.995 : 4.0;
    for (int i = 0; i <= n; ++i) {
        const double xi = lo + (hi - lo) * i / n;
        t.add_row({xi, fig5_1_ratio(xi, p, d)});
    }
    return t;
}

// chi^(2)/chi^(1) over a gamma list plus chi^(3)/chi^(1), on x in (0,1).
inline Table fig5_2(double d = 2.0, double p = 1.5, int k = 1, std::vector<double> gammas = {}) {
    if (gammas.empty()) gammas = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75};
    const double alpha = spectral::eigen_data(k, d).alpha;
    Table t;
    t.columns = {"xi"};
    for (double g : gammas) t.columns.push_back("chi2_over_chi1_gamma_" + format_label(g));
    t.columns.push_back("chi3_over_chi1");
    const int n = 399;
    for (int i = 1; i <= n; ++i) {
        const double x = static_cast<double>(i) / (n + 1);
        std::vector<double> row{x};
        const double c1 = spectral::chi1(x, p, alpha);
        for (double g : gammas) row.push_back(spectral::chi2(x, g, p, alpha) / c1);
        row.push_back(spectral::chi3(x, p) / c1);
        t.add_row(std::move(row));
    }
    return t;
}

// Phi, Psi and the maximizing beta on an s-grid.
inline Table phi_psi_table(double p, double d, int n = 60) {
    Table t;
    t.columns = {"s", "Phi", "Psi", "beta_at_max"};
    const double s_hi = p < 2.0 ? 0.9 / (2.0 - p) : 2.0 / std::max(1.0, p - 2.0);
    for (int i = 1; i <= n; ++i) {
        const double s = s_hi * i / n;
        const double inner = s / (1.0 + (p - 2.0) * s);
        const double beta = p > 2.0 ? improve::varphi_sup(inner, p, d).argmax_beta : 1.0;
        t.add_row({s, improve::Phi(s, p, d), improve::Psi(s, p, d), beta});
    }
    return t;
}

enum class Figure { fig1, fig2, fig3_2, fig4, fig5_1, fig5_2 };

struct FigureConfig {
    double p = 2.5;
    double d = 5.0;
    int k = 1;
    std::vector<double> betas;
    std::vector<double> gammas;
};

inline Table emit_figure(Figure which, const FigureConfig& cfg) {
    switch (which) {
        case Figure::fig1: return fig1();
        case Figure::fig2: return fig2(cfg.d);
        case Figure::fig3_2: return fig3_2();
        case Figure::fig4: return fig4(cfg.d, cfg.p, cfg.betas);
        case Figure::fig5_1: return fig5_1(cfg.p, cfg.d);
        case Figure::fig5_2: return fig5_2(cfg.d, cfg.p, cfg.k, cfg.gammas);
    }
    throw domain_error("emit_figure: unknown figure");
}

}  // namespace ultrasphere::figures
