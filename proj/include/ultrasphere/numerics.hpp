#pragma once

// Small numerical kernels shared across the library: the symmetric
// tridiagonal eigensolver backing the Golub-Welsch construction, adaptive
// panel integration, golden-section maximization, monotone bisection and a
// natural cubic spline for trace resampling.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "ultrasphere/common.hpp"

namespace ultrasphere::num {

// Implicit-shift QL iteration for a symmetric tridiagonal matrix, carrying a
// single auxiliary vector through the rotations (the classical Golub-Welsch
// arrangement: seed `vec` with e_1 and the outputs are the first components
// of the normalized eigenvectors). `diag` returns the eigenvalues sorted
// ascending, with `vec` permuted alongside.
inline void tridiag_eigen_firstcomp(std::vector<double>& diag, std::vector<double>& sub,
                                    std::vector<double>& vec) {
    const int n = static_cast<int>(diag.size());
    if (n <= 1) return;
    const double prec = std::numeric_limits<double>::epsilon();
    std::vector<double> e(sub);
    e.resize(n, 0.0);

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m < n - 1 && std::abs(e[m]) > prec * (std::abs(diag[m]) + std::abs(diag[m + 1]))) ++m;
            if (m == l) break;
            if (++iter > 50)
                throw numeric_error("tridiag_eigen_firstcomp: QL iteration did not converge");

            double g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = diag[m] - diag[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    diag[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                f = vec[i + 1];
                vec[i + 1] = s * vec[i] + c * f;
                vec[i] = c * vec[i] - s * f;
            }
            if (underflow) continue;
            diag[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // insertion sort, eigenvalue count is small
    for (int i = 1; i < n; ++i) {
        double dv = diag[i], zv = vec[i];
        int j = i - 1;
        while (j >= 0 && diag[j] > dv) {
            diag[j + 1] = diag[j];
            vec[j + 1] = vec[j];
            --j;
        }
        diag[j + 1] = dv;
        vec[j + 1] = zv;
    }
}

// Eigenvalues of a dense symmetric matrix (row-major n*n) by cyclic Jacobi
// rotations; returns them sorted ascending. Used for the small discrete
// operator matrices in the verification suites.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> A, int n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A[p * n + q] * A[p * n + q];
        if (off < 1e-26 * n * n) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (A[q * n + q] - A[p * n + p]) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A[k * n + p], akq = A[k * n + q];
                    A[k * n + p] = c * akp - s * akq;
                    A[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A[p * n + k], aqk = A[q * n + k];
                    A[p * n + k] = c * apk - s * aqk;
                    A[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = A[i * n + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

// 16-point Gauss-Legendre nodes/weights on [-1,1] via Newton refinement of
// the Legendre recurrence (gauleg). Cached after the first call.
inline const std::pair<std::array<double, 16>, std::array<double, 16>>& gl16() {
    static const auto cache = [] {
        std::pair<std::array<double, 16>, std::array<double, 16>> nw{};
        const int n = 16;
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nw.first[i] = -x;
            nw.first[n - 1 - i] = x;
            double w = 2.0 / ((1.0 - x * x) * pp * pp);
            nw.second[i] = w;
            nw.second[n - 1 - i] = w;
        }
        return nw;
    }();
    return cache;
}

namespace detail {

template <typename F>
double gl16_panel(const F& f, double a, double b) {
    const auto& [xs, ws] = gl16();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 16; ++i) acc += ws[i] * f(mid + half * xs[i]);
    return acc * half;
}

template <typename F>
double integrate_rec(const F& f, double a, double b, double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gl16_panel(f, a, mid);
    const double right = gl16_panel(f, mid, b);
    const double err = std::abs(left + right - whole);
    if (err <= tol || depth >= 30) {
        if (depth >= 30 && err > 64.0 * tol)
            throw numeric_error("adaptive quadrature did not converge");
        return left + right;
    }
    return integrate_rec(f, a, mid, left, 0.5 * tol, depth + 1) +
           integrate_rec(f, mid, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive integration by panel bisection with embedded 16-point rules.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-11) {
    if (a == b) return 0.0;
    const double whole = detail::gl16_panel(f, a, b);
    return detail::integrate_rec(f, a, b, whole, abs_tol, 0);
}

// Golden-section maximization of a unimodal objective on [a,b]; returns the
// argument/value pair of the best point seen.
template <typename F>
std::pair<double, double> golden_max(const F& f, double a, double b, double xtol = 1e-9,
                                     int max_iter = 200) {
    constexpr double invphi = 0.6180339887498948482;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Bisection solve f(x) = target for increasing f on [lo,hi].
template <typename F>
double bisect_increasing(const F& f, double target, double lo, double hi, double xtol = 1e-12,
                         int max_iter = 200) {
    const double slack = 1e-9 * std::max(1.0, std::abs(target));
    const double flo = f(lo) - target;
    const double fhi = f(hi) - target;
    if (flo > 0.0) {
        if (flo <= slack) return lo;
        throw domain_error("bisect_increasing: target below bracket");
    }
    if (fhi < 0.0) {
        if (-fhi <= slack) return hi;
        throw domain_error("bisect_increasing: target above bracket");
    }
    for (int it = 0; it < max_iter && (hi - lo) > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) - target <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
  public:
    CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 3 || y_.size() != n) throw domain_error("CubicSpline: need >= 3 points");
        m_.assign(n, 0.0);
        std::vector<double> rhs(n, 0.0), diag(n, 0.0), sub(n, 0.0), sup(n, 0.0);
        diag[0] = diag[n - 1] = 1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            sub[i] = h0 / 6.0;
            diag[i] = (h0 + h1) / 3.0;
            sup[i] = h1 / 6.0;
            rhs[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        }
        // Thomas algorithm
        for (std::size_t i = 1; i < n; ++i) {
            const double w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m_[n - 1] = rhs[n - 1] / diag[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
    }

    double operator()(double t) const {
        const std::size_t n = x_.size();
        std::size_t lo = 0, hi = n - 1;
        if (t <= x_.front()) {
            hi = 1;
        } else if (t >= x_.back()) {
            lo = n - 2;
        } else {
            while (hi - lo > 1) {
                const std::size_t mid = (lo + hi) / 2;
                (x_[mid] <= t ? lo : hi) = mid;
            }
        }
        const double h = x_[lo + 1] - x_[lo];
        const double a = (x_[lo + 1] - t) / h, b = (t - x_[lo]) / h;
        return a * y_[lo] + b * y_[lo + 1] +
               ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[lo + 1]) * h * h / 6.0;
    }

  private:
    std::vector<double> x_, y_, m_;
};

}  // namespace ultrasphere::num
