#pragma once

// Generalized Csiszar-Kullback-Pinsker machinery: the Bregman relative
// functional e_psi with psi(s) = s^q (q > 1) or s log s (q = 1), the lower
// bound
//   e_psi[f|g] >= q(q-1) 2^{-2/q} min(||f||_q, ||g||_q)^{q-2} ||f-g||_q^2,
// and its four packaged consequences controlling ||u^r - ubar^r||_q by the
// entropy-type difference of the L^p and L^2 norms, with explicit constants
// kappa(p) per regime.

#include <cmath>
#include <map>
#include <string>

#include "ultrasphere/core.hpp"

namespace ultrasphere::ckp {

enum class UbarRule { norm_p, norm_2, norm_p_minus_2 };

// Exponent package (q, r, s) and constant kappa for the regime of p:
//   p in [1,2): q = 2/p,     r = p,   ubar = ||u||_p
//   p = 2:      log-entropy form with |kappa'(2)| = 1/8, ubar = ||u||_2
//   p in (2,4): q = p/2,     r = 2,   ubar = ||u||_2
//   p >= 4:     q = p/(p-2), r = p-2, ubar = ||u||_{p-2}
struct CkpRegime {
    double p = 2.0;
    double q = 1.0;
    double r = 2.0;
    double s = 2.0;  // max(2, p)
    double kappa = 0.125;
    UbarRule ubar = UbarRule::norm_2;
};

inline constexpr double kKappaPrimeAt2 = 0.125;  // |kappa'(2)|, shared by both one-sided limits

inline double kappa(double p) {
    if (!(p >= 1.0)) throw domain_error("ckp::kappa: need p >= 1");
    if (p < 2.0) return std::pow(2.0, 1.0 - p) * (2.0 - p) / (p * p);
    if (p == 2.0) return kKappaPrimeAt2;
    if (p < 4.0) return std::pow(2.0, -1.0 - 4.0 / p) * (p - 2.0);
    return std::pow(2.0, 4.0 / p) / ((p - 2.0) * (p - 2.0));
}

inline CkpRegime regime(double p) {
    if (!(p >= 1.0)) throw domain_error("ckp::regime: need p >= 1");
    CkpRegime rg;
    rg.p = p;
    rg.s = std::max(2.0, p);
    rg.kappa = kappa(p);
    if (p < 2.0) {
        rg.q = 2.0 / p;
        rg.r = p;
        rg.ubar = UbarRule::norm_p;
    } else if (p == 2.0) {
        rg.q = 1.0;
        rg.r = 2.0;
        rg.ubar = UbarRule::norm_2;
    } else if (p < 4.0) {
        rg.q = p / 2.0;
        rg.r = 2.0;
        rg.ubar = UbarRule::norm_2;
    } else {
        rg.q = p / (p - 2.0);
        rg.r = p - 2.0;
        rg.ubar = UbarRule::norm_p_minus_2;
    }
    return rg;
}

// Bregman divergence int [psi(f) - psi(g) - psi'(g)(f-g)] dnu_d.
inline double e_psi(const GridFunction& f, const GridFunction& g, double q) {
    if (!(q >= 1.0) || !(q <= 2.0)) throw domain_error("e_psi: need q in [1,2]");
    if (f.size() != g.size()) throw domain_error("e_psi: mismatched grids");
    if (f.min_value() < 0.0 || g.min_value() < 0.0)
        throw domain_error("e_psi: f, g must be nonnegative");
    const bool log_case = q == 1.0;
    if (log_case && !(g.min_value() > 1e-12))
        throw domain_error("e_psi: q = 1 requires g > 0 (floor 1e-12)");
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        const double fi = f.values()[i], gi = g.values()[i];
        double term;
        if (log_case) {
            const double flogf = fi > 0.0 ? fi * std::log(fi) : 0.0;
            term = flogf - gi * std::log(gi) - (1.0 + std::log(gi)) * (fi - gi);
        } else {
            term = std::pow(fi, q) - std::pow(gi, q) - q * std::pow(gi, q - 1.0) * (fi - gi);
        }
        acc += f.basis().weight(i) * term;
    }
    return acc;
}

struct RelEntropyReport {
    double e_psi = 0.0;        // entropy-type left-hand side
    double lower_bound = 0.0;  // the certified right-hand side
    double q = 2.0;
    std::map<std::string, double> norms;

    double slack() const { return e_psi - lower_bound; }
    bool holds(double tol = 1e-10) const { return slack() >= -tol; }
};

inline double norm_q_of_difference(const GridFunction& f, const GridFunction& g, double q) {
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i)
        acc += f.basis().weight(i) * std::pow(std::abs(f.values()[i] - g.values()[i]), q);
    return std::pow(acc, 1.0 / q);
}

// e_psi against its quantitative lower bound. q = 1 is the classical
// Csiszar-Kullback-Pinsker inequality and requires matched masses.
inline RelEntropyReport ckgen_bound(const GridFunction& f, const GridFunction& g, double q) {
    RelEntropyReport rep;
    rep.q = q;
    rep.e_psi = e_psi(f, g, q);
    if (q == 1.0) {
        const double mf = integral(f), mg = integral(g);
        if (std::abs(mf - mg) > 1e-8 * std::max(1.0, std::max(mf, mg)))
            throw domain_error("ckgen_bound: q = 1 needs matched masses");
        const double m = 0.5 * (mf + mg);
        const double l1 = norm_q_of_difference(f, g, 1.0);
        rep.lower_bound = l1 * l1 / (4.0 * m);
        rep.norms = {{"mass", m}, {"diff_l1", l1}};
        return rep;
    }
    const double nf = norm_p(f, q), ng = norm_p(g, q);
    const double nd = norm_q_of_difference(f, g, q);
    const double coeff = q * (q - 1.0) / std::pow(2.0, 2.0 / q);
    rep.lower_bound = coeff * std::min(std::pow(nf, q - 2.0), std::pow(ng, q - 2.0)) * nd * nd;
    rep.norms = {{"f_q", nf}, {"g_q", ng}, {"diff_q", nd}};
    return rep;
}

namespace detail {

inline GridFunction power_of(const GridFunction& u, double r) {
    std::vector<double> v(u.values());
    for (double& x : v) x = std::pow(x, r);
    return GridFunction(u.basis_ptr(), std::move(v));
}

}  // namespace detail

// The four-regime corollary. Left-hand sides:
//   p in [1,2): ||u||_2^2 - ||u||_p^2
//   p = 2:      int u^2 log(u^2/||u||_2^2)
//   p > 2:      ||u||_p^2 - ||u||_2^2
// Right-hand sides kappa(p) * (norm factor) * ||u^r - ubar^r||_q^2 with ubar
// as in regime(p); the p = 2 prefactor is 2|kappa'(2)| / ||u||_2^2.
inline RelEntropyReport corollary_ck(const GridFunction& u, double p) {
    if (u.min_value() < 0.0) throw domain_error("corollary_ck: u must be nonnegative");
    const CkpRegime rg = regime(p);
    RelEntropyReport rep;
    rep.q = rg.q;
    const double n2 = norm_p(u, 2.0);
    const double np = norm_p(u, p);
    if (p == 2.0) {
        const double ubar = n2;
        GridFunction u2 = detail::power_of(u, 2.0);
        GridFunction g2 = GridFunction::constant(u.basis_ptr(), ubar * ubar);
        const double l1 = norm_q_of_difference(u2, g2, 1.0);
        rep.e_psi = log_entropy(u);
        rep.lower_bound = 2.0 * kKappaPrimeAt2 / (n2 * n2) * l1 * l1;
        rep.norms = {{"u_2", n2}, {"diff_1", l1}};
        return rep;
    }
    double ubar;
    switch (rg.ubar) {
        case UbarRule::norm_p: ubar = np; break;
        case UbarRule::norm_2: ubar = n2; break;
        case UbarRule::norm_p_minus_2: ubar = norm_p(u, p - 2.0); break;
        default: throw domain_error("corollary_ck: bad regime");
    }
    GridFunction ur = detail::power_of(u, rg.r);
    GridFunction gr = GridFunction::constant(u.basis_ptr(), std::pow(ubar, rg.r));
    const double nd = norm_q_of_difference(ur, gr, rg.q);
    double factor;
    if (p < 2.0)
        factor = std::pow(n2, 2.0 * (1.0 - p));
    else if (p < 4.0)
        factor = std::pow(np, -2.0);
    else
        factor = std::pow(np, 2.0 * (3.0 - p));
    rep.e_psi = p < 2.0 ? n2 * n2 - np * np : np * np - n2 * n2;
    rep.lower_bound = rg.kappa * factor * nd * nd;
    rep.norms = {{"u_2", n2}, {"u_p", np}, {"ubar", ubar}, {"diff_q", nd}};
    return rep;
}

// Packaged bound (1/(p-2)) [||u||_p^2 - ||u||_2^2] >= C ||u||_s^{2(1-r)}
// ||u^r - ubar^r||_q^2 with C = kappa(p)/|p-2|. Returns the right-hand side
// after asserting the inequality on the inputs.
inline double prop_ck_bound(const GridFunction& u, double p) {
    if (p == 2.0)
        throw domain_error("prop_ck_bound: p = 2 is the log-entropy branch of corollary_ck");
    if (!(p > 1.0)) throw domain_error("prop_ck_bound: need p > 1");
    const RelEntropyReport rep = corollary_ck(u, p);
    // corollary LHS = |p-2| * entropy(u, p); rescale both sides
    const double rhs = rep.lower_bound / std::abs(p - 2.0);
    const double lhs = entropy(u, p);
    if (lhs - rhs < -1e-10 * std::max(1.0, std::abs(lhs)))
        throw numeric_error("prop_ck_bound: certified inequality violated (internal bug)");
    return rhs;
}

}  // namespace ultrasphere::ckp
