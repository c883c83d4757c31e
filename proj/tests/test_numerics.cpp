#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <vector>

#include "casimir/numerics.hpp"

using namespace casimir;
using std::numbers::pi;

TEST_CASE("gk15 is exact on low-degree polynomials") {
    auto f = [](double x) { return ((3 * x - 2) * x + 7) * x * x * x - 4; };
    const auto r = num::gk15(f, -1.0, 2.5);
    // antiderivative: x^6/2 - 2x^5/5 + 7x^4/4 - 4x
    auto F = [](double x) {
        return 0.5 * std::pow(x, 6) - 0.4 * std::pow(x, 5) +
               1.75 * std::pow(x, 4) - 4 * x;
    };
    CHECK(r.value == doctest::Approx(F(2.5) - F(-1.0)).epsilon(1e-13));
    CHECK(r.abs_error < 1e-11 * std::abs(r.value));
}

TEST_CASE("adaptive integrate handles a half-power endpoint") {
    // pure relative tolerance cannot terminate on an endpoint singularity
    // (the panel error is a fixed fraction of the panel value), so an
    // absolute floor is part of the contract
    const auto r = num::integrate([](double x) { return std::sqrt(x); }, 0.0,
                                  1.0, 1e-12, 1e-14);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("adaptive integrate handles a log endpoint") {
    // int_0^1 x ln x dx = -1/4
    const auto r = num::integrate([](double x) { return x * std::log(x); },
                                  0.0, 1.0, 1e-12, 1e-16);
    CHECK(r.value == doctest::Approx(-0.25).epsilon(1e-10));
}

TEST_CASE("integrate_decaying reproduces Bose-log integrals") {
    // int_0^inf y ln(1-e^-y) dy = -zeta(3); with y^2 it is -pi^4/45
    auto f1 = [](double y) { return y * std::log1p(-std::exp(-y)); };
    auto f2 = [](double y) { return y * y * std::log1p(-std::exp(-y)); };
    const double zeta3 = 1.2020569031595942854;
    CHECK(num::integrate_decaying(f1, 0.0, 1.0, 1e-13).value ==
          doctest::Approx(-zeta3).epsilon(1e-11));
    CHECK(num::integrate_decaying(f2, 0.0, 1.0, 1e-13).value ==
          doctest::Approx(-std::pow(pi, 4) / 45.0).epsilon(1e-11));
}

TEST_CASE("integrate_decaying reports failure on non-decaying integrands") {
    auto f = [](double y) { return 1.0 / (1.0 + y); }; // diverges
    CHECK_THROWS_AS(num::integrate_decaying(f, 0.0, 1.0, 1e-10),
                    NumericalError);
}

TEST_CASE("gauss_legendre_10 is exact to degree 19") {
    auto f = [](double x) { return std::pow(x, 19) - 3 * std::pow(x, 8) + x; };
    const double got = num::gauss_legendre_10(f, 0.0, 1.0);
    const double want = 1.0 / 20.0 - 3.0 / 9.0 + 0.5;
    CHECK(got == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("compensated sum keeps small terms") {
    num::CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 10; ++i) s.add(1e-17);
    CHECK(s.value() == doctest::Approx(1.0 + 1e-16).epsilon(1e-18));
}

TEST_CASE("parallel_for covers every index once, any worker count") {
    const long n = 1000;
    for (int workers : {1, 2, 4}) {
        std::vector<int> hits(n, 0);
        num::parallel_for(0, n, workers, [&](long i) { hits[i] += 1; });
        for (int h : hits) CHECK(h == 1);
    }
}

TEST_CASE("parallel_for propagates exceptions") {
    CHECK_THROWS_AS(num::parallel_for(0, 100, 3,
                                      [](long i) {
                                          if (i == 57)
                                              throw std::runtime_error("boom");
                                      }),
                    std::runtime_error);
}
