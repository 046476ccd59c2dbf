#pragma once

// Test-only oracles, independent of the library's quadrature and transform
// paths:
//  - even moments of dnu_d from the Beta-function identity,
//  - integrals against dnu_d via composite Simpson in the theta variable
//    (x = cos theta turns the weight into (sin theta)^{d-1}, smooth for
//    d >= 1, so no endpoint singularity is involved),
//  - an RK4 integration of the varphi_beta ODE,
//  - explicit Euler steps built on the public flow right-hand side.

#include <cmath>
#include <functional>
#include <vector>

#include "ultrasphere/flow.hpp"

namespace oracle {

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// int x^{2m} dnu_d = B(m+1/2, d/2) / B(1/2, d/2); odd moments vanish.
inline double moment(int power, double d) {
    if (power % 2 == 1) return 0.0;
    const double m = power / 2.0;
    return std::exp(log_beta(m + 0.5, 0.5 * d) - log_beta(0.5, 0.5 * d));
}

// int g dnu_d by composite Simpson on theta in [0, pi].
inline double integrate_nu(const std::function<double(double)>& g, double d, int panels = 4096) {
    const double pi = 3.14159265358979323846;
    const double zd = std::sqrt(pi) * std::exp(std::lgamma(0.5 * d) - std::lgamma(0.5 * (d + 1.0)));
    const auto f = [&](double th) {
        return g(std::cos(th)) * std::pow(std::sin(th), d - 1.0);
    };
    const double h = pi / panels;
    double acc = f(0.0) + f(pi);
    for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return acc * h / 3.0 / zd;
}

// RK4 for varphi' = 1 + varphi (gamma/(2 beta^2)) (1-(p-2)t)^{-delta}.
inline double ode_varphi_beta(double s, double beta, double p, double d, int steps = 20000) {
    const double g = ultrasphere::improve::gamma_beta(beta, p, d);
    const double delta = ultrasphere::improve::delta_beta(beta, p);
    const double c = g / (2.0 * beta * beta);
    const auto rhs = [&](double t, double phi) {
        return 1.0 + phi * c * std::pow(1.0 - (p - 2.0) * t, -delta);
    };
    const double h = s / steps;
    double t = 0.0, phi = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double k1 = rhs(t, phi);
        const double k2 = rhs(t + 0.5 * h, phi + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, phi + 0.5 * h * k2);
        const double k4 = rhs(t + h, phi + h * k3);
        phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return phi;
}

// one raw explicit Euler step of the flow (no rejection logic)
inline std::vector<double> euler_flow(const ultrasphere::Basis& B, std::vector<double> w,
                                      double kappa, double beta, double dt, int substeps) {
    for (int s = 0; s < substeps; ++s) {
        const auto r = ultrasphere::flow::flow_rhs(B, w, kappa, beta);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += dt / substeps * r[i];
    }
    return w;
}

}  // namespace oracle
