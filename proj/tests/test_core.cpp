#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ultrasphere/core.hpp"

using namespace ultrasphere;

TEST_CASE("measure normalization and derived exponents") {
    const auto m1 = MeasureParams::make(1.0);
    const auto m2 = MeasureParams::make(2.0);
    const auto m3 = MeasureParams::make(3.0);
    CHECK(m1.Z == doctest::Approx(3.14159265358979323846).epsilon(1e-14));
    CHECK(m2.Z == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m3.Z == doctest::Approx(0.5 * 3.14159265358979323846).epsilon(1e-14));
    CHECK(m3.critical_exponent() == doctest::Approx(6.0));
    CHECK(std::isinf(m2.critical_exponent()));
    CHECK(m3.sharp_exponent() == doctest::Approx(19.0 / 4.0));
    CHECK(std::isinf(m1.sharp_exponent()));
    CHECK_THROWS_AS(MeasureParams::make(0.5), domain_error);
}

TEST_CASE("quadrature weights are a probability measure") {
    for (double d : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
        const auto rule = build_quadrature(MeasureParams::make(d), 64);
        double s = 0.0;
        for (double w : rule.weights) s += w;
        CHECK(std::abs(s - 1.0) < 1e-13);
        for (double x : rule.nodes) CHECK(std::abs(x) < 1.0);
    }
    const auto r8 = build_quadrature(MeasureParams::make(2.0), 8);
    double s = 0.0;
    for (double w : r8.weights) s += w;
    CHECK(std::abs(s - 1.0) < 1e-14);
    CHECK_THROWS_AS(build_quadrature(MeasureParams::make(2.0), 1), domain_error);
}

TEST_CASE("second moments match the Beta-function oracle") {
    auto m2_of = [](double d, int n) {
        const auto rule = build_quadrature(MeasureParams::make(d), n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
        return acc;
    };
    CHECK(m2_of(3.0, 16) == doctest::Approx(0.25).epsilon(1e-14));   // 1/(d+1)
    CHECK(m2_of(1.0, 8) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m2_of(2.0, 8) == doctest::Approx(oracle::moment(2, 2.0)).epsilon(1e-14));
}

TEST_CASE("Gauss exactness on monomials up to degree 2N-1") {
    const double d = 2.5;
    const int n = 12;
    const auto rule = build_quadrature(MeasureParams::make(d), n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], k);
        CHECK(std::abs(acc - oracle::moment(k, d)) < 1e-13);
    }
}

TEST_CASE("basis is orthonormal under the discrete inner product") {
    auto B = shared_basis(3.5, 32);
    for (int j = 0; j <= 12; ++j)
        for (int k = 0; k <= 12; ++k) {
            double acc = 0.0;
            for (int i = 0; i < B->size(); ++i)
                acc += B->weight(i) * B->value(j, i) * B->value(k, i);
            CHECK(std::abs(acc - (j == k ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("operator kernel and eigenfunctions") {
    auto B = shared_basis(3.0, 32);
    auto ones = GridFunction::constant(B, 2.5);
    auto Lc = apply_L(ones);
    CHECK(Lc.max_value() < 1e-9);
    CHECK(Lc.min_value() > -1e-9);

    auto fx = GridFunction::sample(B, [](double x) { return x; });
    auto Lx = apply_L(fx);
    for (int i = 0; i < B->size(); ++i)
        CHECK(Lx.values()[i] == doctest::Approx(-3.0 * B->node(i)).epsilon(1e-9));

    // degree-2 mode at d=4 is an eigenfunction with lambda_2 = 2(2+3) = 10
    auto B4 = shared_basis(4.0, 32);
    std::vector<double> c(B4->size(), 0.0);
    c[2] = 1.0;
    GridFunction q2(B4, B4->synthesize(c));
    auto Lq2 = apply_L(q2);
    for (int i = 0; i < B4->size(); ++i)
        CHECK(Lq2.values()[i] == doctest::Approx(-10.0 * q2.values()[i]).epsilon(1e-9));
}

TEST_CASE("self-adjointness and integration by parts on random polynomials") {
    auto B = shared_basis(2.7, 64);
    Rng rng(1234);
    for (int t = 0; t < 25; ++t) {
        std::vector<double> c1(B->size(), 0.0), c2(B->size(), 0.0);
        for (int k = 0; k <= 32; ++k) {
            c1[k] = rng.uniform(-1.0, 1.0) / (1.0 + k);
            c2[k] = rng.uniform(-1.0, 1.0) / (1.0 + k);
        }
        GridFunction f1(B, B->synthesize(c1)), f2(B, B->synthesize(c2));
        const double a = inner(f1, apply_L(f2));
        const double b = inner(apply_L(f1), f2);
        CHECK(std::abs(a - b) < 1e-9);
        CHECK(std::abs(inner(f1, apply_L(f1)) + fisher(f1)) < 1e-9);
    }
}

TEST_CASE("entropy: constants, positivity, oracle value, p = 2 stitching") {
    auto B = shared_basis(2.0, 64);
    auto c = GridFunction::constant(B, 3.0);
    CHECK(std::abs(entropy(c, 3.0)) < 1e-14);
    CHECK(std::abs(entropy(c, 2.0)) < 1e-14);

    auto f = GridFunction::sample(B, [](double x) { return 1.0 + 0.1 * x; }, true);
    const double e4 = entropy(f, 4.0);
    CHECK(e4 > 0.0);
    const double np = std::pow(oracle::integrate_nu([](double x) { return std::pow(1.0 + 0.1 * x, 4.0); }, 2.0), 0.5);
    const double n2 = oracle::integrate_nu([](double x) { return std::pow(1.0 + 0.1 * x, 2.0); }, 2.0);
    CHECK(e4 == doctest::Approx((np - n2) / 2.0).epsilon(1e-11));

    auto g = GridFunction::sample(B, [](double x) { return std::exp(x); }, true);
    const double mid = entropy(g, 2.0);
    CHECK(std::abs(entropy(g, 2.0 + 1e-6) - mid) < 1e-4);
    CHECK(std::abs(entropy(g, 2.0 - 1e-6) - mid) < 1e-4);
    CHECK(mid == doctest::Approx(0.5 * log_entropy(g)).epsilon(1e-14));

    auto neg = GridFunction::sample(B, [](double x) { return x; });
    CHECK_THROWS_AS(entropy(neg, 3.0), domain_error);
}

TEST_CASE("fisher: kernel, linear profile, quadratic-form identity") {
    auto B = shared_basis(4.2, 48);
    CHECK(std::abs(fisher(GridFunction::constant(B, 1.0))) < 1e-15);
    const double d = 4.2;
    auto fx = GridFunction::sample(B, [](double x) { return x; });
    CHECK(fisher(fx) == doctest::Approx(d / (d + 1.0)).epsilon(1e-13));
    auto fp = GridFunction::sample(B, [](double x) { return 2.0 + x; }, true);
    const auto fn = functionals(fp, 3.0);
    CHECK(fn.fisher_i == doctest::Approx(fisher(fp)));
    CHECK(fn.fisher_i >= 0.0);
    CHECK(fn.p == 3.0);
}

TEST_CASE("entropy admissibility under the L^p normalization") {
    // for p > 2 and ||f||_p = 1 the entropy stays below 1/(p-2)
    auto B = shared_basis(3.0, 64);
    Rng rng(77);
    for (int t = 0; t < 20; ++t) {
        const double a = rng.uniform(-0.5, 0.5), b = rng.uniform(-0.4, 0.4);
        auto f = GridFunction::sample(B, [a, b](double x) { return std::exp(a * x + b * x * x); }, true);
        const double p = rng.uniform(2.1, 5.0);
        const double np = norm_p(f, p);
        std::vector<double> v(f.values());
        for (double& x : v) x /= np;
        GridFunction fn(B, std::move(v), true);
        CHECK(entropy(fn, p) < 1.0 / (p - 2.0));
    }
}

TEST_CASE("integral identities") {
    auto B3 = shared_basis(3.0, 64);
    auto [a0, b0] = check_identities(GridFunction::constant(B3, 1.0));
    CHECK(a0 < 1e-12);
    CHECK(b0 < 1e-12);

    auto w1 = GridFunction::sample(B3, [](double x) { return 2.0 + x; }, true);
    auto [a1, b1] = check_identities(w1);
    CHECK(a1 < 1e-8);
    CHECK(b1 < 1e-8);

    auto B5 = shared_basis(5.0, 64);
    auto w2 = GridFunction::sample(B5, [](double x) { return std::exp(0.5 * x); }, true);
    auto [a2, b2] = check_identities(w2);
    CHECK(a2 < 1e-8);
    CHECK(b2 < 1e-8);
}

TEST_CASE("integral identities against the independent quadrature oracle") {
    // w = 2 + x at d = 3 with analytic derivatives; every integral through
    // composite Simpson in theta, no library quadrature involved
    const double d = 3.0;
    auto w = [](double x) { return 2.0 + x; };
    auto Lw = [d](double x) { return -d * x; };  // (1-x^2) w'' - d x w' with w'' = 0, w' = 1
    const double lhs1 = oracle::integrate_nu([&](double x) { return Lw(x) * Lw(x); }, d);
    const double rhs1 = d * oracle::integrate_nu([](double x) { return 1.0 - x * x; }, d);
    CHECK(std::abs(lhs1 - rhs1) < 1e-10);  // the w'' term vanishes here

    const double lhs2 =
        oracle::integrate_nu([&](double x) { return (1.0 - x * x) / w(x) * Lw(x); }, d);
    const double rhs2 = d / (d + 2.0) *
                        oracle::integrate_nu(
                            [&](double x) {
                                const double nu = 1.0 - x * x;
                                return nu * nu / (w(x) * w(x));
                            },
                            d);
    CHECK(std::abs(lhs2 - rhs2) < 1e-10);

    // cross-validation of the library route against the oracle route
    auto B = shared_basis(d, 64);
    auto wg = GridFunction::sample(B, w, true);
    const auto Lwg = apply_L(wg);
    double lib_lhs1 = 0.0;
    for (int i = 0; i < B->size(); ++i)
        lib_lhs1 += B->weight(i) * Lwg.values()[i] * Lwg.values()[i];
    CHECK(lib_lhs1 == doctest::Approx(lhs1).epsilon(1e-11));
}

TEST_CASE("integral identities hold on a smooth positive corpus") {
    Rng rng(2024);
    for (int t = 0; t < 20; ++t) {
        const double d = rng.uniform(1.0, 6.0);
        auto B = shared_basis(d, 64);
        const double a = rng.uniform(-0.5, 0.5), b = rng.uniform(-0.4, 0.4),
                     c = rng.uniform(-0.3, 0.3);
        auto w = GridFunction::sample(
            B, [&](double x) { return std::exp(a * x + b * x * x + c * std::sin(2.0 * x)); }, true);
        auto [r1, r2] = check_identities(w);
        CHECK(r1 < 1e-8);
        CHECK(r2 < 1e-8);
    }
}

TEST_CASE("grid function preconditions") {
    auto B = shared_basis(2.0, 16);
    CHECK_THROWS_AS(GridFunction(B, std::vector<double>(8, 1.0)), domain_error);
    CHECK_THROWS_AS(GridFunction::sample(B, [](double x) { return x; }, true), domain_error);
    CHECK_THROWS_AS(check_identities(GridFunction::sample(B, [](double x) { return x; })),
                    domain_error);
}
