#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ultrasphere/numerics.hpp"
#include "ultrasphere/spectral.hpp"

using namespace ultrasphere;

TEST_CASE("eigen data") {
    const auto e12 = spectral::eigen_data(1, 2.0);
    CHECK(e12.lambda == 2.0);
    REQUIRE(e12.dim.has_value());
    CHECK(*e12.dim == 3);
    CHECK(e12.alpha == 3.0);

    const auto e0 = spectral::eigen_data(0, 3.7);
    CHECK(e0.lambda == 0.0);
    CHECK(e0.alpha == doctest::Approx(1.0).epsilon(1e-15));  // lambda_1/d = 1
    CHECK(!e0.dim.has_value());                              // non-integer d
    // alpha_0 = 1 makes the k = 0 coefficient the classical d/(2-p)
    const double p = 1.4;
    CHECK(e0.alpha / (1.0 - std::pow(p - 1.0, e0.alpha)) ==
          doctest::Approx(1.0 / (2.0 - p)).epsilon(1e-14));

    const auto e33 = spectral::eigen_data(3, 3.0);
    CHECK(e33.lambda == 15.0);
    CHECK(*e33.dim == 16);  // binom(4,1)... (2k+d-1)(k+d-2)!/(k!(d-1)!) = 16 on S^3

    // circle: two Fourier modes per positive frequency
    CHECK(*spectral::eigen_data(4, 1.0).dim == 2);
    CHECK(*spectral::eigen_data(0, 1.0).dim == 1);

    // strictly increasing eigenvalues, lambda_1 = d
    for (double d : {1.0, 2.5, 6.0}) {
        CHECK(spectral::eigenvalue(1, d) == doctest::Approx(d));
        for (int k = 0; k < 10; ++k)
            CHECK(spectral::eigenvalue(k + 1, d) > spectral::eigenvalue(k, d));
    }
    CHECK_THROWS_AS(spectral::eigen_data(-1, 2.0), domain_error);
}

TEST_CASE("discrete operator reproduces k(k+d-1) through the pointwise route") {
    for (double d : {2.0, 3.0, 5.0}) {
        auto B = shared_basis(d, 64);
        const int m = 11;
        std::vector<double> M(m * m, 0.0);
        for (int k = 0; k < m; ++k) {
            std::vector<double> ck(B->size(), 0.0);
            ck[k] = 1.0;
            const auto q1 = B->derivative(ck);
            const auto q2 = B->second_derivative(ck);
            std::vector<double> Lq(B->size());
            for (int i = 0; i < B->size(); ++i) {
                const double x = B->node(i);
                Lq[i] = (1.0 - x * x) * q2[i] - d * x * q1[i];
            }
            const auto row = B->analyze(Lq);
            for (int j = 0; j < m; ++j) M[j * m + k] = -row[j];
        }
        const auto ev = num::symmetric_eigenvalues(M, m);
        for (int k = 0; k < m; ++k)
            CHECK(std::abs(ev[k] - k * (k + d - 1.0)) < 1e-8);
    }
}

TEST_CASE("heat semigroup") {
    auto B = shared_basis(2.0, 48);
    Rng rng(3);
    auto u = GridFunction::sample(B, [&](double x) { return 1.0 + 0.3 * x - 0.2 * x * x; });
    const auto c = spectral::SpectralCoeffs::analyze(u);

    const auto id = spectral::heat_semigroup(c, 0.0);
    for (int j = 0; j < c.size(); ++j) CHECK(id.coeffs()[j] == c.coeffs()[j]);

    auto flat = spectral::SpectralCoeffs::analyze(GridFunction::constant(B, 2.0));
    const auto flat_later = spectral::heat_semigroup(flat, 3.0);
    CHECK(flat_later.coeffs()[0] == doctest::Approx(flat.coeffs()[0]).epsilon(1e-15));

    // single mode j = 2 at d = 2 damps by exp(-lambda_2 t) = exp(-0.6)
    std::vector<double> mode(B->size(), 0.0);
    mode[2] = 1.0;
    const auto damped = spectral::heat_semigroup(spectral::SpectralCoeffs(mode, 2.0), 0.1);
    CHECK(damped.coeffs()[2] == doctest::Approx(std::exp(-0.6)).epsilon(1e-14));

    // L2 norm never increases
    const auto later = spectral::heat_semigroup(c, 0.25);
    CHECK(later.norm2sq() <= c.norm2sq());
    CHECK_THROWS_AS(spectral::heat_semigroup(c, -0.1), domain_error);

    // Parseval against the grid route
    CHECK(norm2sq(later.to_grid(B)) == doctest::Approx(later.norm2sq()).epsilon(1e-12));
}

TEST_CASE("nelson time") {
    CHECK(spectral::nelson_time(1.5, 2.0) == doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-15));
    CHECK(spectral::nelson_time(2.0 - 1e-9, 3.0) < 1e-9);
    for (auto [p, d] : std::vector<std::pair<double, double>>{{1.2, 2.0}, {1.8, 5.0}}) {
        const double t = spectral::nelson_time(p, d);
        CHECK(t > 0.0);
        CHECK(std::exp(2.0 * d * t) == doctest::Approx(1.0 / (p - 1.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(spectral::nelson_time(2.0, 2.0), domain_error);
    CHECK_THROWS_AS(spectral::nelson_time(0.9, 2.0), domain_error);
}

TEST_CASE("orthogonal projection") {
    auto B = shared_basis(2.0, 48);
    auto flat = GridFunction::constant(B, 1.7);
    const auto kept = spectral::project_orthogonal(flat, 3);
    for (int i = 0; i < B->size(); ++i)
        CHECK(kept.values()[i] == doctest::Approx(1.7).epsilon(1e-13));

    auto fx = GridFunction::sample(B, [](double x) { return x; });
    const auto px = spectral::project_orthogonal(fx, 1);
    CHECK(norm2sq(px) < 1e-20);  // x spans the degree-1 mode and has zero mean

    // a pure degree-3 mode survives k = 2 projection untouched
    std::vector<double> c(B->size(), 0.0);
    c[3] = 1.0;
    GridFunction q3(B, B->synthesize(c));
    const auto pq3 = spectral::project_orthogonal(q3, 2);
    for (int i = 0; i < B->size(); ++i)
        CHECK(pq3.values()[i] == doctest::Approx(q3.values()[i]).epsilon(1e-12));

    const auto cc = B->analyze(spectral::project_orthogonal(
        GridFunction::sample(B, [](double x) { return std::exp(x); }), 2).values());
    CHECK(std::abs(cc[1]) < 1e-12);
    CHECK(std::abs(cc[2]) < 1e-12);
}

TEST_CASE("spectral bounds: coefficients, domain checks, verification") {
    auto B = shared_basis(2.0, 64);
    const double p = 1.5;

    // constant: both sides vanish for the extended bound
    auto flat = GridFunction::constant(B, 1.2);
    spectral::SpectralBound be{spectral::BoundKind::beckner_extended, 1, p, {}};
    CHECK(std::abs(spectral::spectral_bound_rhs(flat, be)) < 1e-12);
    CHECK(std::abs(fisher(flat)) < 1e-12);

    // coefficient at (d=2, p=3/2, k=1): 2*3/(1-(1/2)^3) = 48/7 > d/(2-p) = 4
    const double alpha = spectral::eigen_data(1, 2.0).alpha;
    const double coef = 2.0 * alpha / (1.0 - std::pow(p - 1.0, alpha));
    CHECK(coef == doctest::Approx(48.0 / 7.0).epsilon(1e-14));
    CHECK(coef > 2.0 / (2.0 - p));

    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        const double c1 = rng.uniform(-1.0, 1.0), c2 = rng.uniform(-0.7, 0.7),
                     c3 = rng.uniform(-0.5, 0.5);
        auto raw = GridFunction::sample(B, [&](double x) {
            return 1.0 + c1 * x + c2 * x * x + c3 * std::sin(2.0 * x);
        });
        auto u = spectral::project_orthogonal(raw, 1);
        const double i = fisher(u);
        CHECK(i >= spectral::spectral_bound_rhs(u, be) - 1e-8);
        spectral::SpectralBound gf{spectral::BoundKind::gamma_family, 1, p, 1.3};
        CHECK(i >= spectral::spectral_bound_rhs(u, gf) - 1e-8);
        spectral::SpectralBound pk{spectral::BoundKind::phi_k, 1, p, {}};
        CHECK(i >= spectral::spectral_bound_rhs(u, pk) - 1e-8);
    }

    // orthogonality precondition is enforced
    auto skew = GridFunction::sample(B, [](double x) { return 1.0 + x; });
    CHECK_THROWS_AS(spectral::spectral_bound_rhs(skew, be), domain_error);

    // log_form hypothesis check names the failed condition
    auto nearly_flat = GridFunction::sample(B, [](double x) { return 1.0 + 1e-3 * (3.0 * x * x - 1.0); });
    spectral::SpectralBound lf{spectral::BoundKind::log_form, 1, p, {}};
    try {
        spectral::spectral_bound_rhs(nearly_flat, lf);
        CHECK(false);
    } catch (const domain_error& e) {
        CHECK(std::string(e.what()).find("(p-1)^{alpha_k/2}") != std::string::npos);
    }
}

TEST_CASE("chi dominance and Phi_k blow-up") {
    const double p = 1.5, alpha = 3.0;
    for (double g : {0.5, 1.0, 1.5}) {
        for (int i = 1; i <= 1000; ++i) {
            const double x = i / 1000.0;
            CHECK(spectral::chi2(x, g, p, alpha) <=
                  std::max(spectral::chi1(x, p, alpha), spectral::chi3(x, p)) + 1e-12);
        }
    }
    CHECK(spectral::Phi_k(1e-6, p, alpha) > 10.0 * spectral::Phi_k(0.5, p, alpha));
    // Phi_k agrees with the chi max under s = x^2
    for (int i = 1; i < 20; ++i) {
        const double x = i / 20.0;
        CHECK(spectral::Phi_k(x * x, p, alpha) ==
              doctest::Approx(std::max(spectral::chi1(x, p, alpha), spectral::chi3(x, p)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("hypercontractivity at t*") {
    auto B2 = shared_basis(2.0, 64);
    auto flat = GridFunction::constant(B2, 0.7);
    const auto [l0, r0] = spectral::hypercontractivity_check(flat, 1.5);
    CHECK(l0 == doctest::Approx(r0).epsilon(1e-12));  // equality on constants

    auto u = GridFunction::sample(B2, [](double x) { return 1.0 + 0.4 * x; });
    const auto [l1, r1] = spectral::hypercontractivity_check(u, 1.5);
    CHECK(l1 <= r1 + 1e-9);

    auto B3 = shared_basis(3.0, 64);
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> c(B3->size(), 0.0);
        for (int k = 0; k <= 5; ++k) c[k] = rng.uniform(-1.0, 1.0);
        GridFunction poly(B3, B3->synthesize(c));
        std::vector<double> v(poly.values());
        double mn = 0.0;
        for (double x : v) mn = std::min(mn, x);
        for (double& x : v) x += 1.0 - 2.0 * mn;  // shift positive
        GridFunction up(B3, std::move(v), true);
        const auto [lhs, rhs] = spectral::hypercontractivity_check(up, 1.2);
        CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("hypercontractivity at non-integer dimension parameter") {
    auto B = shared_basis(2.5, 64);
    Rng rng(37);
    for (int t = 0; t < 15; ++t) {
        const double c1 = rng.uniform(-0.8, 0.8), c2 = rng.uniform(-0.6, 0.6);
        auto u = GridFunction::sample(
            B, [c1, c2](double x) { return 1.0 + c1 * x + c2 * std::sin(2.0 * x); });
        const auto [lhs, rhs] = spectral::hypercontractivity_check(u, 1.4);
        CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("proof-step chain on an orthogonal corpus") {
    auto B = shared_basis(2.0, 64);
    Rng rng(29);
    const int k = 1;
    const double p = 1.5, d = 2.0;
    const double tstar = spectral::nelson_time(p, d);
    for (int t = 0; t < 20; ++t) {
        const double c2 = rng.uniform(-0.6, 0.6), c3 = rng.uniform(-0.4, 0.4);
        auto u0 = GridFunction::sample(
            B, [&](double x) { return 1.0 + c2 * (x * x - 0.5) + c3 * x * x * x; });
        auto u = spectral::project_orthogonal(u0, k);
        std::vector<double> v(u.values());
        const double n = std::sqrt(norm2sq(u));
        for (double& x : v) x /= n;
        u = GridFunction(B, std::move(v));
        const auto c = spectral::SpectralCoeffs::analyze(u);
        const double np = norm_p(u, p);
        for (double g : {0.5, 1.0, 1.5}) {
            double mid = 0.0;
            for (int j = k + 1; j < c.size(); ++j)
                mid += c.coeffs()[j] * c.coeffs()[j] *
                       (-std::expm1(-g * spectral::eigenvalue(j, d) * tstar));
            const double lam1 = spectral::eigenvalue(k + 1, d);
            const double lhs = 1.0 - std::pow(np, g);
            const double rhs = -std::expm1(-g * lam1 * tstar) / lam1 * fisher(u);
            CHECK(lhs <= mid + 1e-9);
            CHECK(mid <= rhs + 1e-9);
        }
    }
}
