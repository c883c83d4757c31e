#include <doctest.h>

#include <cmath>
#include <numbers>

#include "casimir/asymptotics.hpp"
#include "casimir/constants.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/numerics.hpp"
#include "casimir/reflection.hpp"
#include "casimir/special_functions.hpp"

using namespace casimir;
using std::numbers::pi;

namespace {

dispersion::DrudeParameters gold() {
    return {constants::omega_from_eV(9.03), constants::omega_from_meV(34.5),
            "test"};
}

// Quadrature of Int_0^inf f(x) dx with the x = tan(theta) map; the scaled
// TE integrands decay at least like 1/x^2, so the mapped integrand stays
// bounded up to theta = pi/2.
template <class F>
double integral_half_line(F&& f, double rel_tol = 1e-12) {
    auto g = [&](double th) {
        const double x = std::tan(th);
        return f(x) * (1.0 + x * x);
    };
    return num::integrate(g, 0.0, 0.5 * pi, rel_tol, 1e-15).value;
}

} // namespace

TEST_CASE("slope integral: closed form vs quadrature") {
    const double closed = asymptotics::mode_function_slope0();
    CHECK(closed == doctest::Approx(-0.0965735903).epsilon(1e-8));
    CHECK(closed == -(2.0 * std::log(2.0) - 1.0) / 4.0);

    const double quad = integral_half_line([](double x) {
        if (x == 0.0) return 0.0;
        const double b = reflection::scaled_te_coefficient(x);
        const double omb = reflection::scaled_te_complement(x);
        return x * num::log_one_minus_attenuated(b, omb, 0.0);
    });
    CHECK(quad == doctest::Approx(closed).epsilon(1e-8));

    // sinh-substitution route
    const double viasinh =
        num::integrate_decaying(
            [](double t) {
                return std::sinh(t) * std::cosh(t) * std::log1p(-std::exp(-4.0 * t));
            },
            0.0, 1.0, 1e-12)
            .value;
    CHECK(viasinh == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("weighted mode integral and the B moments") {
    CHECK(asymptotics::weighted_mode_integral() == doctest::Approx(1.0 / 12.0));
    CHECK(asymptotics::b_moment_1() == doctest::Approx(1.0 / 12.0));
    CHECK(asymptotics::b_moment_2() == doctest::Approx(8.0 / 105.0));

    const double i_quad = integral_half_line([](double x) {
        const double b = reflection::scaled_te_coefficient(x);
        const double omb = reflection::scaled_te_complement(x);
        return x * x * b / omb;
    });
    CHECK(i_quad == doctest::Approx(1.0 / 12.0).epsilon(1e-8));

    const double bx = integral_half_line(
        [](double x) { return reflection::scaled_te_coefficient(x) * x; });
    CHECK(bx == doctest::Approx(1.0 / 12.0).epsilon(1e-8));

    const double bx2 = integral_half_line(
        [](double x) { return reflection::scaled_te_coefficient(x) * x * x; });
    CHECK(bx2 == doctest::Approx(8.0 / 105.0).epsilon(1e-8));
}

TEST_CASE("euler_maclaurin_shifted on a decaying exponential") {
    auto g = [](double u) { return std::exp(-u); };
    const double truth = 1.0 / (std::numbers::e - 1.0) + 0.5 - 1.0;

    asymptotics::EulerMaclaurinOptions opts;
    opts.d1 = [](double u) { return -std::exp(-u); };
    opts.d3 = [](double u) { return -std::exp(-u); };
    opts.d5 = [](double u) { return -std::exp(-u); };
    const auto exact = asymptotics::euler_maclaurin_shifted(g, 1, opts);
    CHECK(std::abs(exact.value - truth) < 1e-6);
    CHECK(exact.tail_integral == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

    // finite-difference derivatives do as well
    const auto fd = asymptotics::euler_maclaurin_shifted(g, 1, {});
    CHECK(std::abs(fd.value - truth) < 1e-6);

    // larger p converges too
    const auto p3 = asymptotics::euler_maclaurin_shifted(g, 3, opts);
    CHECK(std::abs(p3.value - truth) < 1e-7);

    CHECK_THROWS_AS(asymptotics::euler_maclaurin_shifted(g, 0, {}),
                    std::domain_error);
}

TEST_CASE("euler_maclaurin_shifted rejects divergent tails") {
    auto g = [](double u) { return 1.0 / (1.0 + u); };
    CHECK_THROWS_AS(asymptotics::euler_maclaurin_shifted(g, 1, {}),
                    NumericalError);
}

TEST_CASE("power term pieces at sigma = 3/2") {
    const auto p1 = asymptotics::power_term_pieces(1.5, 1);
    CHECK(p1.boundary_sum == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(p1.regularized_sum == doctest::Approx(-0.02552083333).epsilon(1e-9));
    CHECK(p1.error_estimate == doctest::Approx(4.650298e-5).epsilon(1e-5));
    CHECK(std::abs(p1.error_estimate - 4.65e-5) < 1e-7);

    const auto p2 = asymptotics::power_term_pieces(1.5, 2);
    CHECK(std::abs(p2.regularized_sum - (-0.02549)) < 2e-5);

    // the shifted pieces approximate zeta(-3/2) ever better with p
    const double z = special::zeta_neg_3_2();
    CHECK(std::abs(p2.regularized_sum - z) < std::abs(p1.regularized_sum - z));
}

TEST_CASE("power term pieces: Bernoulli exactness on integer powers") {
    for (int p : {1, 2, 5}) {
        CHECK(asymptotics::power_term_pieces(1.0, p).boundary_sum ==
              doctest::Approx(0.0).epsilon(1e-15)); // S_1(p) = 0
        CHECK(asymptotics::power_term_pieces(1.0, p).regularized_sum ==
              doctest::Approx(-1.0 / 12.0).epsilon(1e-14)); // zeta(-1)
        CHECK(asymptotics::power_term_pieces(2.0, p).regularized_sum ==
              doctest::Approx(0.0).epsilon(1e-13)); // zeta(-2) = 0
        CHECK(asymptotics::power_term_pieces(3.0, p).regularized_sum ==
              doctest::Approx(1.0 / 120.0).epsilon(1e-12)); // zeta(-3)
    }
    CHECK(asymptotics::power_term_pieces(1.0, 1).error_estimate == 0.0);
    CHECK_THROWS_AS(asymptotics::power_term_pieces(-1.5, 1), std::domain_error);
    CHECK_THROWS_AS(asymptotics::power_term_pieces(1.5, 0), std::domain_error);
}

TEST_CASE("scale constant") {
    const auto p = gold();
    // independent constant-arithmetic oracle
    CHECK(asymptotics::scale_constant(p, 1.0) ==
          doctest::Approx(5.231861e12).epsilon(1e-6));
    CHECK(asymptotics::scale_constant(p, 2.0) ==
          doctest::Approx(2.0 * asymptotics::scale_constant(p, 1.0))
              .epsilon(1e-15));
    // slope scales as 1/nu
    auto p10 = p;
    p10.nu *= 10.0;
    CHECK(asymptotics::scale_constant_slope(p10) * 10.0 ==
          doctest::Approx(asymptotics::scale_constant_slope(p)).epsilon(1e-13));
}

TEST_CASE("leading quadratic coefficient") {
    const auto p = gold();
    const double c1 = asymptotics::leading_coefficient(p);
    CHECK(c1 == doctest::Approx(5.8146955e-13).epsilon(1e-6));
    CHECK(std::abs(c1 / 5.81e-13 - 1.0) < 0.01);

    // exact scaling in omega_p^2/nu
    auto q = p;
    q.omega_p *= 3.0;
    q.nu *= 2.0;
    CHECK(asymptotics::leading_coefficient(q) ==
          doctest::Approx(c1 * 9.0 / 2.0).epsilon(1e-13));

    // the alternate parameter set shifts the coefficient at the percent level
    const dispersion::DrudeParameters alt{constants::omega_from_eV(9.0),
                                          constants::omega_from_meV(35.0), ""};
    const double shift = std::abs(asymptotics::leading_coefficient(alt) / c1 - 1.0);
    CHECK(shift > 0.005);
    CHECK(shift < 0.04);
}

TEST_CASE("sqrt(T) correction coefficient") {
    const auto p = gold();
    const double a = 1e-6;
    const auto em = asymptotics::sqrt_t_correction(
        p, a, 0.01, asymptotics::CorrectionVariant::euler_maclaurin);
    const auto ze = asymptotics::sqrt_t_correction(
        p, a, 0.01, asymptotics::CorrectionVariant::exact_zeta);

    CHECK(em.c2 == doctest::Approx(3.030292).epsilon(1e-5));
    CHECK(std::abs(em.c2 / 3.03 - 1.0) < 0.02);
    CHECK(ze.c2 == doctest::Approx(3.026061).epsilon(1e-5));
    CHECK(em.correction_at_T == doctest::Approx(em.c2 * 0.1).epsilon(1e-12));

    // the two variants sit ~0.15% apart
    const double rel = std::abs(em.c2 - ze.c2) / em.c2;
    CHECK(rel > 5e-4);
    CHECK(rel < 3e-3);

    // linear in the separation
    const auto em2 = asymptotics::sqrt_t_correction(
        p, 2.0 * a, 0.0, asymptotics::CorrectionVariant::euler_maclaurin);
    CHECK(em2.c2 == doctest::Approx(2.0 * em.c2).epsilon(1e-14));
}

TEST_CASE("pade form of the thermal deviation") {
    const auto p = gold();
    const double c1 = asymptotics::leading_coefficient(p);
    const double c2 = asymptotics::sqrt_t_correction(p, 1e-6, 0.0).c2;

    CHECK(asymptotics::pade_delta_f(0.0, c1, c2) == 0.0);

    // two-term series remainder is third order
    const double t = 1e-4;
    const double pade = asymptotics::pade_delta_f(t, c1, c2);
    const double series = c1 * t * t * (1.0 - c2 * std::sqrt(t));
    CHECK(std::abs(pade - series) / (t * t * t) < 2.0 * c1 * c2 * c2);

    // spot value at T = 0.01 K assembled from the two coefficients
    CHECK(asymptotics::pade_delta_f(0.01, c1, c2) ==
          doctest::Approx(c1 * 1e-4 / (1.0 + c2 * 0.1)).epsilon(1e-13));

    // nonnegative and increasing on [0, 4/C2^2]
    double prev = 0.0;
    const double hi = 4.0 / (c2 * c2);
    for (int i = 1; i <= 50; ++i) {
        const double tt = hi * i / 50.0;
        const double v = asymptotics::pade_delta_f(tt, c1, c2);
        CHECK(v >= 0.0);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(asymptotics::pade_delta_f(-1.0, c1, c2), std::domain_error);
}

TEST_CASE("zeta-function route") {
    const auto p = gold();
    const double a = 1e-6;
    const double t = 0.03;
    const auto e = asymptotics::zeta_route(p, a, t);

    // T^2 term coincides with the leading coefficient exactly
    CHECK(e.t2_term == asymptotics::leading_coefficient(p) * t * t);

    // T^(5/2) term is negative and reproduces -C1 C2(exact) T^(5/2)
    CHECK(e.t52_term < 0.0);
    const double c1 = asymptotics::leading_coefficient(p);
    const double c2z =
        asymptotics::sqrt_t_correction(p, a, 0.0,
                                       asymptotics::CorrectionVariant::exact_zeta)
            .c2;
    CHECK(e.t52_term ==
          doctest::Approx(-c1 * c2z * std::pow(t, 2.5)).epsilon(1e-12));

    // cross-route: shifted-start pieces vs zeta value agree to ~0.2%
    const double c2em =
        asymptotics::sqrt_t_correction(p, a, 0.0,
                                       asymptotics::CorrectionVariant::euler_maclaurin)
            .c2;
    CHECK(std::abs(c2em / c2z - 1.0) < 3e-3);

    CHECK(special::zeta_neg_1 == doctest::Approx(-1.0 / 12.0));
    CHECK_FALSE(e.omitted_constant_note.empty());

    const auto first_only = asymptotics::zeta_route(p, a, t, 1);
    CHECK(first_only.t52_term == 0.0);
    CHECK_THROWS_AS(asymptotics::zeta_route(p, a, t, 3), std::invalid_argument);
}

TEST_CASE("scaled TE mode function matches the full integrand at low frequency") {
    const auto p = gold();
    const double a = 1e-6;
    const double t = 1e-3; // zeta_1 ~ 8e8 rad/s << nu
    const auto s = asymptotics::scaled_te(p, a, t);

    CHECK(s.scale_c == doctest::Approx(asymptotics::scale_constant(p, t)));
    CHECK(s.g(0.0) == 0.0);
    for (double m : {0.5, 1.0, 4.0}) CHECK(s.g(m) < 0.0);
    CHECK(s.alpha(1.0) ==
          doctest::Approx(2.0 * a * std::sqrt(2.0 * pi * s.scale_c)));

    const dispersion::DispersionModel model = p;
    const lifshitz::Geometry geom{a};
    for (double m : {1.0, 3.0}) {
        const double full = lifshitz::mode_integral(
            model, geom, s.matsubara_step * m, lifshitz::Polarization::TE,
            lifshitz::ModeWeight::full, 1e-12);
        const double scaled = 2.0 * pi * s.scale_c * s.g(m, 1e-12);
        CHECK(full == doctest::Approx(scaled).epsilon(1e-3));
    }
}
