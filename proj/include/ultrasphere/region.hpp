#pragma once

// Coefficients a(p,d), b(p,d) of the decay quadratic -gamma(beta) =
// a beta^2 - 2 b beta + 1, its roots beta_-, beta_+, the thresholds p_-(d),
// p_+(d) where a vanishes, the full sign classification of gamma, and the
// admissible flow-exponent set
//   B(p,d) = {beta : gamma(beta) > 0, beta >= 1, beta <= 2/(4-p) if p < 4}
// for p > 2, with B(p,d) = {1} for 1 <= p <= 2.

#include <cmath>
#include <optional>
#include <utility>

#include "ultrasphere/common.hpp"

namespace ultrasphere::region {

// Comparisons against exact vanishing points use this band; the special
// points of the classification (p = 3 at d = 4, p = 9/4 at d = 3, ...) land
// on it only up to rounding of p itself.
inline constexpr double kZeroBand = 1e-12;

struct RegionCoeffs {
    double a = 0.0;     // 2 - p + ((d-1)(p-1)/(d+2))^2
    double b = 0.0;     // (d+3-p)/(d+2)
    double disc = 0.0;  // b^2 - a
};

inline RegionCoeffs coeffs(double p, double d) {
    if (!(p >= 1.0) || !(d >= 1.0)) throw domain_error("region::coeffs: need p >= 1, d >= 1");
    RegionCoeffs rc;
    const double t = (d - 1.0) * (p - 1.0) / (d + 2.0);
    rc.a = 2.0 - p + t * t;
    rc.b = (d + 3.0 - p) / (d + 2.0);
    rc.disc = rc.b * rc.b - rc.a;
    return rc;
}

// Closed form of b^2 - a: expanding the definitions gives
//   (d+2)^2 (b^2 - a) = d (d-2) (p-1) (2d/(d-2) - p) = d (p-1) (2d - p(d-2)),
// polynomial in d, reducing to (p-1)/2 at d = 2. Positive exactly for
// p in (1, 2*) when d > 2 and for p > 1 when d <= 2.
inline double disc_closed_form(double p, double d) {
    return d * (p - 1.0) * (2.0 * d - p * (d - 2.0)) / ((d + 2.0) * (d + 2.0));
}

// Roots of a(p,d) = 0 in p. Two real roots exist exactly for d in (1,4]
// (double root at d = 4); at d = 1 the coefficient is linear in p and for
// d > 4 the discriminant 3d(4-d) is negative.
inline std::optional<std::pair<double, double>> p_thresholds(double d) {
    if (!(d >= 1.0)) throw domain_error("region::p_thresholds: need d >= 1");
    if (d <= 1.0 + kZeroBand || d > 4.0) return std::nullopt;
    const double root = std::sqrt(3.0 * d * (4.0 - d));
    const double den = 2.0 * (d - 1.0) * (d - 1.0);
    const double mid = 3.0 * (d * d + 2.0);
    return std::make_pair((mid - (d + 2.0) * root) / den, (mid + (d + 2.0) * root) / den);
}

// Roots beta_-/beta_+ of gamma(beta) = 0, i.e. of a beta^2 - 2 b beta + 1.
// Requires a != 0 and disc >= 0 (a small negative disc from rounding is
// treated as a double root). a = 0 is the half-line regime of classify().
inline std::optional<std::pair<double, double>> beta_roots(double p, double d) {
    const RegionCoeffs rc = coeffs(p, d);
    if (std::abs(rc.a) < kZeroBand) return std::nullopt;
    double disc = rc.disc;
    if (std::abs(disc) < kZeroBand) disc = 0.0;  // double root up to rounding
    if (disc < 0.0) return std::nullopt;
    const double s = std::sqrt(disc);
    const double r1 = (rc.b - s) / rc.a;
    const double r2 = (rc.b + s) / rc.a;
    return std::make_pair(std::min(r1, r2), std::max(r1, r2));
}

enum class IntervalKind { bounded, two_rays, half_line, empty, all };

// Solution set of gamma(beta) >= 0. Conventions:
//   bounded   -> [lo, hi]
//   two_rays  -> (-inf, lo] U [hi, +inf)
//   half_line -> [lo, +inf) when hi = +inf, (-inf, hi] when lo = -inf
//   empty/all -> no finite data ("all" cannot occur: gamma(0) = -1)
struct BetaInterval {
    IntervalKind kind = IntervalKind::empty;
    double lo = kNaN;
    double hi = kNaN;

    bool contains(double beta) const {
        switch (kind) {
            case IntervalKind::bounded: return beta >= lo && beta <= hi;
            case IntervalKind::two_rays: return beta <= lo || beta >= hi;
            case IntervalKind::half_line: return std::isinf(hi) ? beta >= lo : beta <= hi;
            case IntervalKind::empty: return false;
            case IntervalKind::all: return true;
        }
        return false;
    }
};

// Sign classification of gamma(beta): by the sign of a, then of b when a
// vanishes. Reproduces the integer-d case table and extends it to real d.
inline BetaInterval classify(double p, double d) {
    const RegionCoeffs rc = coeffs(p, d);
    BetaInterval out;
    if (std::abs(rc.a) < kZeroBand) {
        if (rc.b > kZeroBand) {
            out.kind = IntervalKind::half_line;
            out.lo = 1.0 / (2.0 * rc.b);
            out.hi = kInf;
        } else if (rc.b < -kZeroBand) {
            out.kind = IntervalKind::half_line;
            out.lo = -kInf;
            out.hi = 1.0 / (2.0 * rc.b);
        } else {
            out.kind = IntervalKind::empty;  // a = b = 0: gamma == -1
        }
        return out;
    }
    if (rc.a > 0.0) {
        if (std::abs(rc.disc) < kZeroBand) {
            // double root: gamma <= 0 everywhere, {gamma >= 0} is one point
            const double r = rc.b / rc.a;
            out.kind = IntervalKind::bounded;
            out.lo = out.hi = r;
            return out;
        }
        if (rc.disc < 0.0) {
            out.kind = IntervalKind::empty;
            return out;
        }
        const auto roots = *beta_roots(p, d);
        out.kind = IntervalKind::bounded;
        out.lo = roots.first;
        out.hi = roots.second;
        return out;
    }
    // a < 0: disc = b^2 - a > 0 always
    const auto roots = *beta_roots(p, d);
    out.kind = IntervalKind::two_rays;
    out.lo = roots.first;
    out.hi = roots.second;
    return out;
}

// B(p,d) after interposing beta >= 1 and the upper bound 2/(4-p) for p < 4.
// The stored interval is the closure; `nonempty` refers to the actual set
// (which needs gamma(beta) strictly positive somewhere in it).
struct AdmissibleSet {
    BetaInterval interval;  // bounded, half_line ([lo,inf)) or empty
    bool nonempty = false;

    double lo() const { return interval.lo; }
    double hi() const { return interval.hi; }
    bool bounded() const { return interval.kind == IntervalKind::bounded; }
};

inline AdmissibleSet admissible_set(double p, double d) {
    if (!(p >= 1.0)) throw domain_error("region::admissible_set: need p >= 1");
    AdmissibleSet out;
    if (p <= 2.0) {
        out.interval.kind = IntervalKind::bounded;
        out.interval.lo = out.interval.hi = 1.0;
        out.nonempty = true;  // the singleton {1}
        return out;
    }
    const double cap = p < 4.0 ? 2.0 / (4.0 - p) : kInf;
    const BetaInterval sign = classify(p, d);
    double lo = kNaN, hi = kNaN;
    switch (sign.kind) {
        case IntervalKind::bounded:
            lo = std::max(1.0, sign.lo);
            hi = std::min(cap, sign.hi);
            break;
        case IntervalKind::two_rays:
            // the lower ray ends below beta = 0 (the roots have product 1/a < 0)
            lo = std::max(1.0, sign.hi);
            hi = cap;
            break;
        case IntervalKind::half_line:
            if (std::isinf(sign.hi)) {
                lo = std::max(1.0, sign.lo);
                hi = cap;
            }
            break;
        case IntervalKind::empty:
        case IntervalKind::all:
            break;
    }
    if (!(lo <= hi) || std::isnan(lo)) {
        out.interval.kind = IntervalKind::empty;
        return out;
    }
    if (std::isinf(hi)) {
        out.interval.kind = IntervalKind::half_line;
        out.interval.lo = lo;
        out.interval.hi = kInf;
        out.nonempty = true;  // gamma > 0 on (max(1,root), inf) up the ray
    } else {
        out.interval.kind = IntervalKind::bounded;
        out.interval.lo = lo;
        out.interval.hi = hi;
        // strict positivity somewhere inside requires genuine width
        out.nonempty = hi - lo > kZeroBand;
    }
    return out;
}

}  // namespace ultrasphere::region
