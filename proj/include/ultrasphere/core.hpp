#pragma once

// Ground layer for the ultraspherical setting on (-1,1): the probability
// measure dnu_d = Z_d^{-1} (1-x^2)^{d/2-1} dx, Gauss quadrature for it, the
// orthonormal polynomial basis diagonalizing the operator
//     L f = (1-x^2) f'' - d x f',
// grid functions sampled at the quadrature nodes, the entropy and Fisher
// information functionals, and the two integral identities relating L to the
// nonlinear terms of the flows.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "ultrasphere/common.hpp"
#include "ultrasphere/numerics.hpp"

namespace ultrasphere {

// Dimension parameter d (real, >= 1) and derived constants. d enters only
// through the weight exponent d/2-1 and the operator drift, so non-integer
// values are fully supported.
struct MeasureParams {
    double d = 2.0;
    double Z = 2.0;  // sqrt(pi) * Gamma(d/2) / Gamma((d+1)/2)

    static MeasureParams make(double d) {
        if (!(d >= 1.0)) throw domain_error("MeasureParams: need d >= 1");
        MeasureParams mp;
        mp.d = d;
        mp.Z = std::sqrt(3.14159265358979323846) *
               std::exp(std::lgamma(0.5 * d) - std::lgamma(0.5 * (d + 1.0)));
        return mp;
    }

    // 2d/(d-2) for d > 2, +inf otherwise.
    double critical_exponent() const { return d > 2.0 ? 2.0 * d / (d - 2.0) : kInf; }

    // (2d^2+1)/(d-1)^2 for d > 1, +inf at d = 1.
    double sharp_exponent() const {
        return d > 1.0 ? (2.0 * d * d + 1.0) / ((d - 1.0) * (d - 1.0)) : kInf;
    }
};

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;  // sum to 1 (probability measure)
    int order = 0;
};

namespace detail {

// Off-diagonal entries b_k = sqrt(beta_k) of the Jacobi matrix for the monic
// orthogonal polynomials of (1-x^2)^{d/2-1}:
//   beta_1 = 1/(d+1),   beta_k = k(k+d-2) / ((2k+d-1)(2k+d-3))  for k >= 2.
inline double recurrence_beta(int k, double d) {
    if (k == 1) return 1.0 / (d + 1.0);
    return k * (k + d - 2.0) / ((2.0 * k + d - 1.0) * (2.0 * k + d - 3.0));
}

}  // namespace detail

// Gauss rule for dnu_d via the Golub-Welsch eigenproblem of the symmetric
// Jacobi matrix (zero diagonal, off-diagonal sqrt(beta_k)).
inline QuadratureRule build_quadrature(const MeasureParams& mp, int n) {
    if (n < 2) throw domain_error("build_quadrature: need N >= 2");
    std::vector<double> diag(n, 0.0), sub(n - 1), first(n, 0.0);
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(detail::recurrence_beta(k, mp.d));
    first[0] = 1.0;
    try {
        num::tridiag_eigen_firstcomp(diag, sub, first);
    } catch (const numeric_error&) {
        throw numeric_error("build_quadrature: node solver failed for N=" + std::to_string(n) +
                            ", d=" + std::to_string(mp.d));
    }
    QuadratureRule rule;
    rule.order = n;
    rule.nodes = std::move(diag);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) rule.weights[i] = first[i] * first[i];
    return rule;
}

// Quadrature nodes plus tabulated values/derivatives of the orthonormal
// polynomials q_0..q_{N-1}. The q_k are eigenfunctions of L with eigenvalues
// -lambda_k, lambda_k = k(k+d-1), which makes the operator and spectral
// derivatives exact on the interpolant.
class Basis {
  public:
    static std::shared_ptr<const Basis> make(double d, int n) {
        return std::shared_ptr<const Basis>(new Basis(MeasureParams::make(d), n));
    }

    const MeasureParams& measure() const { return mp_; }
    const QuadratureRule& rule() const { return rule_; }
    int size() const { return n_; }
    double node(int i) const { return rule_.nodes[i]; }
    double weight(int i) const { return rule_.weights[i]; }
    double eigenvalue(int k) const { return lam_[k]; }
    // Orthonormal by construction; tests confirm <q_j, q_k> = delta_jk by quadrature.
    double basis_norm(int) const { return 1.0; }
    double value(int k, int i) const { return val_[k * n_ + i]; }

    std::vector<double> analyze(std::span<const double> values) const {
        std::vector<double> c(n_, 0.0);
        for (int k = 0; k < n_; ++k) {
            double acc = 0.0;
            const double* row = &val_[k * n_];
            for (int i = 0; i < n_; ++i) acc += rule_.weights[i] * values[i] * row[i];
            c[k] = acc;
        }
        return c;
    }

    std::vector<double> synthesize(std::span<const double> coeffs) const { return combine(val_, coeffs); }
    std::vector<double> derivative(std::span<const double> coeffs) const { return combine(d1_, coeffs); }
    std::vector<double> second_derivative(std::span<const double> coeffs) const {
        return combine(d2_, coeffs);
    }

    // L applied through the eigen-expansion.
    std::vector<double> apply_operator(std::span<const double> values) const {
        std::vector<double> c = analyze(values);
        for (int k = 0; k < n_; ++k) c[k] *= -lam_[k];
        return synthesize(c);
    }

  private:
    Basis(MeasureParams mp, int n) : mp_(mp), n_(n), rule_(build_quadrature(mp, n)) {
        lam_.resize(n_);
        for (int k = 0; k < n_; ++k) lam_[k] = k * (k + mp_.d - 1.0);
        val_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
        d1_.assign(val_.size(), 0.0);
        d2_.assign(val_.size(), 0.0);
        std::vector<double> b(n_ + 1, 0.0);
        for (int k = 1; k <= n_; ++k) b[k] = std::sqrt(detail::recurrence_beta(k, mp_.d));
        // q_{k+1} = (x q_k - b_k q_{k-1}) / b_{k+1}, orthonormal three-term recurrence
        for (int i = 0; i < n_; ++i) {
            const double x = rule_.nodes[i];
            val_[0 * n_ + i] = 1.0;
            if (n_ > 1) val_[1 * n_ + i] = x / b[1];
            d1_[1 * n_ + i] = 1.0 / b[1];
            for (int k = 1; k + 1 < n_; ++k) {
                const double qk = val_[k * n_ + i], qkm = val_[(k - 1) * n_ + i];
                const double dk = d1_[k * n_ + i], dkm = d1_[(k - 1) * n_ + i];
                const double sk = d2_[k * n_ + i], skm = d2_[(k - 1) * n_ + i];
                val_[(k + 1) * n_ + i] = (x * qk - b[k] * qkm) / b[k + 1];
                d1_[(k + 1) * n_ + i] = (qk + x * dk - b[k] * dkm) / b[k + 1];
                d2_[(k + 1) * n_ + i] = (2.0 * dk + x * sk - b[k] * skm) / b[k + 1];
            }
        }
    }

    std::vector<double> combine(const std::vector<double>& table, std::span<const double> coeffs) const {
        std::vector<double> out(n_, 0.0);
        for (int k = 0; k < n_; ++k) {
            const double c = coeffs[k];
            if (c == 0.0) continue;
            const double* row = &table[k * n_];
            for (int i = 0; i < n_; ++i) out[i] += c * row[i];
        }
        return out;
    }

    MeasureParams mp_;
    int n_;
    QuadratureRule rule_;
    std::vector<double> lam_;
    std::vector<double> val_, d1_, d2_;  // row k holds q_k at the nodes
};

// Process-wide cache; bases are immutable once built.
inline std::shared_ptr<const Basis> shared_basis(double d, int n) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, std::shared_ptr<const Basis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{d, n}];
    if (!slot) slot = Basis::make(d, n);
    return slot;
}

// A function known by its values at the quadrature nodes. Operations on it
// act on the degree-(N-1) interpolant.
class GridFunction {
  public:
    GridFunction(std::shared_ptr<const Basis> basis, std::vector<double> values,
                 bool require_positive = false)
        : basis_(std::move(basis)), values_(std::move(values)) {
        if (!basis_ || static_cast<int>(values_.size()) != basis_->size())
            throw domain_error("GridFunction: values must match the quadrature nodes");
        if (require_positive) {
            for (double v : values_)
                if (!(v > 0.0)) throw domain_error("GridFunction: positivity required");
            positive_ = true;
        }
    }

    template <typename F>
    static GridFunction sample(std::shared_ptr<const Basis> basis, F&& f,
                               bool require_positive = false) {
        std::vector<double> v(basis->size());
        for (int i = 0; i < basis->size(); ++i) v[i] = f(basis->node(i));
        return GridFunction(std::move(basis), std::move(v), require_positive);
    }

    static GridFunction constant(std::shared_ptr<const Basis> basis, double c) {
        return GridFunction(std::move(basis), std::vector<double>(basis ? basis->size() : 0, c),
                            c > 0.0);
    }

    const std::vector<double>& values() const { return values_; }
    const Basis& basis() const { return *basis_; }
    std::shared_ptr<const Basis> basis_ptr() const { return basis_; }
    int size() const { return static_cast<int>(values_.size()); }
    bool positive() const { return positive_; }

    double min_value() const {
        double m = values_[0];
        for (double v : values_) m = std::min(m, v);
        return m;
    }
    double max_value() const {
        double m = values_[0];
        for (double v : values_) m = std::max(m, v);
        return m;
    }

  private:
    std::shared_ptr<const Basis> basis_;
    std::vector<double> values_;
    bool positive_ = false;
};

// ---- quadrature functionals ------------------------------------------------

inline double integral(const GridFunction& f) {
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) acc += f.basis().weight(i) * f.values()[i];
    return acc;
}

inline double inner(const GridFunction& f, const GridFunction& g) {
    if (f.size() != g.size() || f.basis().measure().d != g.basis().measure().d)
        throw domain_error("inner: mismatched grids");
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) acc += f.basis().weight(i) * f.values()[i] * g.values()[i];
    return acc;
}

inline double norm2sq(const GridFunction& f) { return inner(f, f); }

// L^p norm of |f| against dnu_d.
inline double norm_p(const GridFunction& f, double p) {
    if (!(p >= 1.0)) throw domain_error("norm_p: need p >= 1");
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i)
        acc += f.basis().weight(i) * std::pow(std::abs(f.values()[i]), p);
    return std::pow(acc, 1.0 / p);
}

inline double mean(const GridFunction& f) { return integral(f); }

// ---- operator and derived functionals --------------------------------------

inline GridFunction apply_L(const GridFunction& f) {
    return GridFunction(f.basis_ptr(), f.basis().apply_operator(f.values()));
}

// Full logarithmic entropy: integral of f^2 log(f^2 / ||f||_2^2).
inline double log_entropy(const GridFunction& f) {
    const double n2 = norm2sq(f);
    if (!(n2 > 0.0)) throw domain_error("log_entropy: zero function");
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        const double v2 = f.values()[i] * f.values()[i];
        if (v2 > 0.0) acc += f.basis().weight(i) * v2 * std::log(v2 / n2);
    }
    return acc;
}

// Generalized entropy e = (||f||_p^2 - ||f||_2^2)/(p-2). At p = 2 this is
// continued by its limit, half the logarithmic entropy, so the map
// p -> entropy(f, p) is continuous through p = 2.
inline double entropy(const GridFunction& f, double p) {
    if (!(p >= 1.0)) throw domain_error("entropy: need p >= 1");
    if (f.min_value() < 0.0) throw domain_error("entropy: f must be nonnegative");
    if (std::abs(p - 2.0) < 1e-12) return 0.5 * log_entropy(f);
    const double np = norm_p(f, p);
    return (np * np - norm2sq(f)) / (p - 2.0);
}

// Fisher information: integral of |f'|^2 (1-x^2) dnu_d, computed from the
// spectral derivative of the interpolant. Equals <f, -L f>.
inline double fisher(const GridFunction& f) {
    const auto c = f.basis().analyze(f.values());
    const auto df = f.basis().derivative(c);
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        const double x = f.basis().node(i);
        acc += f.basis().weight(i) * df[i] * df[i] * (1.0 - x * x);
    }
    return acc;
}

struct Functionals {
    double entropy_e = 0.0;
    double fisher_i = 0.0;
    double p = 2.0;
};

inline Functionals functionals(const GridFunction& f, double p) {
    return Functionals{entropy(f, p), fisher(f), p};
}

// Residuals of the two integral identities
//   I1:  int (Lw)^2            = int |w''|^2 nu^2 + d int |w'|^2 nu
//   I2:  int (|w'|^2/w) nu Lw  = d/(d+2) int (|w'|^4/w^2) nu^2
//                                - 2 (d-1)/(d+2) int (|w'|^2 w''/w) nu^2
// evaluated on the interpolant of w; returns (|I1 residual|, |I2 residual|).
inline std::pair<double, double> check_identities(const GridFunction& w) {
    if (!(w.min_value() > 0.0)) throw domain_error("check_identities: w must be positive");
    const Basis& B = w.basis();
    const double d = B.measure().d;
    const auto c = B.analyze(w.values());
    const auto w1 = B.derivative(c);
    const auto w2 = B.second_derivative(c);
    const auto Lw = B.apply_operator(w.values());

    double lhs1 = 0.0, rhs1a = 0.0, rhs1b = 0.0;
    double lhs2 = 0.0, q4 = 0.0, mixed = 0.0;
    for (int i = 0; i < B.size(); ++i) {
        const double x = B.node(i), wt = B.weight(i);
        const double nu = 1.0 - x * x;
        const double wi = w.values()[i];
        lhs1 += wt * Lw[i] * Lw[i];
        rhs1a += wt * w2[i] * w2[i] * nu * nu;
        rhs1b += wt * w1[i] * w1[i] * nu;
        lhs2 += wt * (w1[i] * w1[i] / wi) * nu * Lw[i];
        q4 += wt * std::pow(w1[i], 4) / (wi * wi) * nu * nu;
        mixed += wt * (w1[i] * w1[i] * w2[i] / wi) * nu * nu;
    }
    const double res1 = lhs1 - (rhs1a + d * rhs1b);
    const double res2 = lhs2 - (d / (d + 2.0) * q4 - 2.0 * (d - 1.0) / (d + 2.0) * mixed);
    return {std::abs(res1), std::abs(res2)};
}

}  // namespace ultrasphere
