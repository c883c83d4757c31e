#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/reflection.hpp"

using namespace casimir;
using dispersion::DispersionModel;

namespace {
dispersion::DrudeParameters gold() {
    return {constants::omega_from_eV(9.03), constants::omega_from_meV(34.5),
            "test"};
}
} // namespace

TEST_CASE("vacuum reflects nothing") {
    const auto r = reflection::fresnel_squared(1.0, 1e14, 1e7);
    CHECK(r.A == 0.0);
    CHECK(r.B == 0.0);
}

TEST_CASE("ideal metal reflects everything") {
    const auto r = reflection::fresnel_squared(
        std::numeric_limits<double>::infinity(), 1e14, 1e7);
    CHECK(r.A == 1.0);
    CHECK(r.B == 1.0);
    const DispersionModel im = dispersion::IdealMetal{};
    const auto z = reflection::zero_frequency_limit(im, 1e6);
    CHECK(z.A == 1.0);
    CHECK(z.B == 1.0);
}

TEST_CASE("drude zero-frequency limits: TM saturates, TE dies") {
    const auto p = gold();
    const DispersionModel m = p;
    const double k_perp = 2e6;
    double prev_b = 1.0;
    for (double zeta = p.nu; zeta > p.nu * 1e-9; zeta *= 1e-3) {
        const double eps = dispersion::eval_permittivity(m, zeta);
        const double q = std::hypot(k_perp, zeta / constants::c);
        const auto r = reflection::fresnel_squared(eps, zeta, q);
        CHECK(r.B < prev_b);
        prev_b = r.B;
    }
    const double eps = dispersion::eval_permittivity(m, p.nu * 1e-9);
    const auto r = reflection::fresnel_squared(eps, p.nu * 1e-9, k_perp);
    CHECK(r.A == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.B < 1e-10);
    const auto lim = reflection::zero_frequency_limit(m, k_perp);
    CHECK(lim.A == 1.0);
    CHECK(lim.B == 0.0);
}

TEST_CASE("at the light line (p = 1) both polarizations coincide") {
    const double eps = 37.0;
    const double zeta = 1e14;
    const double q = zeta / constants::c; // k_perp = 0
    const auto r = reflection::fresnel_squared(eps, zeta, q);
    const double se = std::sqrt(eps);
    const double want = ((se - 1.0) / (se + 1.0)) * ((se - 1.0) / (se + 1.0));
    CHECK(r.A == doctest::Approx(want).epsilon(1e-13));
    CHECK(r.B == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("coefficients stay in [0,1] with A >= B over random valid inputs") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double eps = std::pow(10.0, 8.0 * u(rng));   // [1, 1e8]
        const double zeta = std::pow(10.0, 10.0 + 7.0 * u(rng));
        const double p = std::pow(10.0, 4.0 * u(rng));     // [1, 1e4]
        const double q = p * zeta / constants::c;
        const auto r = reflection::fresnel_squared(eps, zeta, q);
        CHECK(r.A >= 0.0);
        CHECK(r.A <= 1.0);
        CHECK(r.B >= 0.0);
        CHECK(r.B <= 1.0);
        CHECK(r.A >= r.B);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(reflection::fresnel_squared(2.0, 1e14, 1e5),
                    std::domain_error); // q below light line
    CHECK_THROWS_AS(reflection::fresnel_squared(2.0, 0.0, 1e7),
                    std::domain_error);
    CHECK_THROWS_AS(reflection::fresnel_squared(0.5, 1e14, 1e7),
                    std::domain_error);
    CHECK_THROWS_AS(reflection::scaled_te_coefficient(-0.1),
                    std::domain_error);
}

TEST_CASE("mode amplitudes attenuate with the propagation factor") {
    const auto r = reflection::fresnel_squared(400.0, 1e14, 2e6);
    const double y = 3.7;
    CHECK(r.lambda_tm(y) == doctest::Approx(r.A * std::exp(-y)));
    CHECK(r.lambda_te(y) == doctest::Approx(r.B * std::exp(-y)));
    CHECK(r.lambda_tm(y) < 1.0);
    CHECK(r.lambda_te(y) <= r.lambda_tm(y));
}

TEST_CASE("scaled TE coefficient") {
    CHECK(reflection::scaled_te_coefficient(0.0) == 1.0);

    // monotone decreasing
    double prev = 1.0;
    for (double x = 1e-4; x < 1e4; x *= 2.3) {
        const double b = reflection::scaled_te_coefficient(x);
        CHECK(b < prev);
        prev = b;
    }

    // asymptote: B ~ 1/(16 x^4)
    const double x = 1e3;
    CHECK(reflection::scaled_te_coefficient(x) * 16.0 * x * x * x * x ==
          doctest::Approx(1.0).epsilon(1e-5));

    // sinh substitution: B(sinh t) = e^(-4t)
    for (double t = 0.1; t < 12.0; t += 1.3)
        CHECK(reflection::scaled_te_coefficient(std::sinh(t)) ==
              doctest::Approx(std::exp(-4.0 * t)).epsilon(1e-13));

    // complement is exact
    for (double xx = 1e-9; xx < 1e3; xx *= 7.0) {
        const double b = reflection::scaled_te_coefficient(xx);
        const double c = reflection::scaled_te_complement(xx);
        CHECK(b + c == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(reflection::scaled_te_complement(1e-12) ==
          doctest::Approx(4e-12).epsilon(1e-9));
}

TEST_CASE("scaling consistency in the relaxation regime") {
    const auto p = gold();
    const double d = dispersion::low_frequency_strength(p);

    // zeta = nu/100: deviation below 5%
    {
        const double zeta = p.nu / 100.0;
        const double q = 2.0 * std::sqrt(d * zeta) / constants::c; // x = 2
        CHECK(reflection::scaling_consistency(p, zeta, q) < 0.05);
    }
    // zeta = nu * 1e-4: deviation below 1e-3
    {
        const double zeta = p.nu * 1e-4;
        const double q = 2.0 * std::sqrt(d * zeta) / constants::c;
        CHECK(reflection::scaling_consistency(p, zeta, q) < 1e-3);
    }
    // the scaling is exact when eps - 1 = D/zeta exactly
    {
        const double zeta = p.nu * 1e-3;
        const double q = 1.7 * std::sqrt(d * zeta) / constants::c;
        const double eps = 1.0 + d / zeta;
        const double b_full = reflection::fresnel_squared(eps, zeta, q).B;
        const double x = q * constants::c / std::sqrt(d * zeta);
        const double b_scaled = reflection::scaled_te_coefficient(x);
        CHECK(b_full == doctest::Approx(b_scaled).epsilon(1e-12));
    }
    CHECK_THROWS_AS(reflection::scaling_consistency(p, p.nu / 2.0, 1e7),
                    std::invalid_argument);
}

TEST_CASE("mode coordinates are mutually consistent") {
    const auto p = gold();
    const DispersionModel m = p;
    const double zeta = 1e14;
    const double eps = dispersion::eval_permittivity(m, zeta);
    const double q = 2e6;
    const double gap = 1e-6;
    const auto mc = reflection::ModeCoordinates::make(
        eps, zeta, q, gap, dispersion::low_frequency_strength(p));

    CHECK(mc.p >= 1.0);
    CHECK(mc.s >= mc.p);
    CHECK(mc.y == doctest::Approx(2.0 * q * gap));
    CHECK(mc.k_perp * mc.k_perp + (zeta / constants::c) * (zeta / constants::c) ==
          doctest::Approx(q * q).epsilon(1e-12));
    CHECK(mc.p == doctest::Approx(q * constants::c / zeta));
    CHECK(mc.s == doctest::Approx(std::sqrt(eps - 1.0 + mc.p * mc.p)));
    CHECK(mc.x == doctest::Approx(q * constants::c /
                                  std::sqrt(dispersion::low_frequency_strength(p) * zeta)));
    CHECK(mc.x0 == doctest::Approx(std::sqrt(zeta / dispersion::low_frequency_strength(p))));

    const auto no_d = reflection::ModeCoordinates::make(eps, zeta, q, gap);
    CHECK(std::isnan(no_d.x));
    CHECK(std::isnan(no_d.x0));

    CHECK_THROWS_AS(reflection::ModeCoordinates::make(eps, zeta, 1e5, gap),
                    std::domain_error);
}

TEST_CASE("reflection surface") {
    const auto p = gold();
    const DispersionModel drude = p;

    // corner: smallest zeta, k_perp > 0 approaches (A, B) -> (1, 0)
    std::vector<double> zg{1e5, 1e12, 1e15};
    std::vector<double> kg{1e5, 1e6, 1e7};
    const auto surf = reflection::reflection_surface(drude, zg, kg);
    CHECK(surf.values.size() == 9);
    CHECK(surf.at(0, 0).A > 0.999);
    CHECK(surf.at(0, 0).B < 1e-3);

    // vacuum model: all-zero matrix
    const DispersionModel vac =
        dispersion::PermittivityTable::make({1.0, 1e18}, {1.0, 1.0});
    const auto zsurf = reflection::reflection_surface(vac, zg, kg);
    for (const auto& v : zsurf.values) {
        CHECK(v.A == 0.0);
        CHECK(v.B == 0.0);
    }

    // single-point grid
    const auto one = reflection::reflection_surface(
        drude, std::vector<double>{1e14}, std::vector<double>{1e6});
    CHECK(one.values.size() == 1);

    CHECK_THROWS_AS(
        reflection::reflection_surface(drude, std::vector<double>{1e14, 1e13}, kg),
        std::invalid_argument);
    CHECK_THROWS_AS(
        reflection::reflection_surface(drude, std::vector<double>{}, kg),
        std::invalid_argument);
}
