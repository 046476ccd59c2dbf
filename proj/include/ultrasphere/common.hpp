#pragma once

// Shared error types and a deterministic random source used by the
// verification corpora.

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace ultrasphere {

// Precondition violations (bad parameters, inadmissible arguments).
class domain_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Numerical failures (non-convergence, stiffness, tolerance blow-ups).
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A positive quantity dropped below its floor. Flows treat this as a step
// rejection; anything else treats it as a hard error.
class positivity_error : public numeric_error {
  public:
    using numeric_error::numeric_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Deterministic uniform/normal generator. mt19937_64 has a pinned stream, and
// we derive doubles ourselves so corpora do not depend on the standard
// library's (unpinned) distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Box-Muller; no spare caching so the call sequence stays obvious.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform() * (hi - lo + 1 - 1e-12));
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace ultrasphere
