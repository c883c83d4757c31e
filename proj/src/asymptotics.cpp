#include "casimir/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/numerics.hpp"
#include "casimir/reflection.hpp"
#include "casimir/special_functions.hpp"

namespace casimir::asymptotics {

using std::numbers::pi;

double mode_function_slope0() { return -(2.0 * std::log(2.0) - 1.0) / 4.0; }
double weighted_mode_integral() { return 1.0 / 12.0; }
double b_moment_1() { return 1.0 / 12.0; }
double b_moment_2() { return 8.0 / 105.0; }

namespace {

// Central finite differences, fifth order and below. Step sizes chosen so
// the stencil stays right of zero for p >= 1.
double fd1(const std::function<double(double)>& g, double p) {
    const double h = 1e-3 * std::max(1.0, 0.25 * p);
    return (-g(p + 2 * h) + 8 * g(p + h) - 8 * g(p - h) + g(p - 2 * h)) /
           (12.0 * h);
}
double fd3(const std::function<double(double)>& g, double p) {
    const double h = 2e-2 * std::max(1.0, 0.25 * p);
    return (g(p + 2 * h) - 2 * g(p + h) + 2 * g(p - h) - g(p - 2 * h)) /
           (2.0 * h * h * h);
}
double fd5(const std::function<double(double)>& g, double p) {
    const double h = 6e-2 * std::max(1.0, 0.25 * p);
    const double h5 = h * h * h * h * h;
    return (-g(p - 3 * h) + 4 * g(p - 2 * h) - 5 * g(p - h) + 5 * g(p + h) -
            4 * g(p + 2 * h) + g(p + 3 * h)) /
           (2.0 * h5);
}

} // namespace

EulerMaclaurinResult euler_maclaurin_shifted(
    const std::function<double(double)>& g, int p,
    const EulerMaclaurinOptions& opts) {
    if (p < 1) throw std::domain_error("euler_maclaurin_shifted: p must be >= 1");
    if (opts.orders < 1 || opts.orders > 3)
        throw std::domain_error("euler_maclaurin_shifted: orders must be 1..3");

    EulerMaclaurinResult r;

    num::CompensatedSum s;
    s.add(0.5 * g(0.0)); // half weight at zero
    for (int n = 1; n < p; ++n) s.add(g(static_cast<double>(n)));
    s.add(0.5 * g(static_cast<double>(p)));
    const num::QuadResult head =
        num::integrate(g, 0.0, static_cast<double>(p), opts.integral_rel_tol);
    s.add(-head.value);
    r.boundary_sum = s.value();

    // Convergence witness only; the sum-minus-integral value does not use it.
    r.tail_integral =
        num::integrate_decaying(g, static_cast<double>(p), opts.decay_scale,
                                opts.integral_rel_tol)
            .value;

    const double pd = static_cast<double>(p);
    const double d1 = opts.d1 ? opts.d1(pd) : fd1(g, pd);
    r.bernoulli_terms[0] = -d1 / 12.0;
    if (opts.orders >= 2) {
        const double d3 = opts.d3 ? opts.d3(pd) : fd3(g, pd);
        r.bernoulli_terms[1] = d3 / 720.0;
    }
    if (opts.orders >= 3) {
        const double d5 = opts.d5 ? opts.d5(pd) : fd5(g, pd);
        r.bernoulli_terms[2] = -d5 / 30240.0;
    }
    r.value = r.boundary_sum + r.bernoulli_terms[0] + r.bernoulli_terms[1] +
              r.bernoulli_terms[2];
    return r;
}

EulerMaclaurinPieces power_term_pieces(double sigma, int p) {
    if (!(sigma > -1.0))
        throw std::domain_error("power_term_pieces: sigma must exceed -1");
    if (p < 1) throw std::domain_error("power_term_pieces: p must be >= 1");

    EulerMaclaurinPieces r;
    r.sigma = sigma;
    r.start = p;

    num::CompensatedSum s;
    if (sigma == 0.0) s.add(1.0); // 0^0; for sigma > 0 the n=0 term vanishes
    for (int n = 1; n < p; ++n) s.add(std::pow(n, sigma));
    const double pd = static_cast<double>(p);
    s.add(0.5 * std::pow(pd, sigma));
    s.add(-std::pow(pd, sigma + 1.0) / (sigma + 1.0));
    r.boundary_sum = s.value();

    const double d1 = sigma * std::pow(pd, sigma - 1.0);
    const double d3 =
        sigma * (sigma - 1.0) * (sigma - 2.0) * std::pow(pd, sigma - 3.0);
    const double d5 = sigma * (sigma - 1.0) * (sigma - 2.0) * (sigma - 3.0) *
                      (sigma - 4.0) * std::pow(pd, sigma - 5.0);
    r.regularized_sum = r.boundary_sum - d1 / 12.0 + d3 / 720.0;
    r.error_estimate = -d5 / 30240.0;
    return r;
}

double scale_constant_slope(const dispersion::DrudeParameters& p) {
    const double d = dispersion::low_frequency_strength(p);
    return d * constants::k_B / (constants::c * constants::c * constants::hbar);
}

double scale_constant(const dispersion::DrudeParameters& p,
                      double temperature_K) {
    if (!(temperature_K > 0.0))
        throw std::domain_error("scale_constant: T must be positive");
    return scale_constant_slope(p) * temperature_K;
}

double validity_scale(const dispersion::DrudeParameters& p, double gap,
                      double temperature_K) {
    return gap * std::sqrt(scale_constant(p, temperature_K));
}

double leading_coefficient(const dispersion::DrudeParameters& p) {
    return scale_constant_slope(p) * constants::k_B *
           (-mode_function_slope0()) / 12.0;
}

SqrtCorrection sqrt_t_correction(const dispersion::DrudeParameters& p,
                                 double gap, double at_T,
                                 CorrectionVariant variant) {
    if (!(gap > 0.0))
        throw std::domain_error("sqrt_t_correction: gap must be positive");
    const double s_factor = variant == CorrectionVariant::euler_maclaurin
                                ? power_term_pieces(1.5, 1).regularized_sum
                                : special::zeta_neg_3_2();
    SqrtCorrection c;
    c.variant = variant;
    // 24 a I sqrt(2 pi C/T) (-S)/(-g'(0)) with I = 1/12
    c.c2 = 2.0 * gap * std::sqrt(2.0 * pi * scale_constant_slope(p)) *
           (-s_factor) / (-mode_function_slope0());
    c.correction_at_T = at_T > 0.0 ? c.c2 * std::sqrt(at_T) : 0.0;
    return c;
}

double pade_delta_f(double temperature_K, double c1, double c2) {
    if (!(temperature_K >= 0.0))
        throw std::domain_error("pade_delta_f: T must be >= 0");
    return c1 * temperature_K * temperature_K /
           (1.0 + c2 * std::sqrt(temperature_K));
}

CoefficientReport coefficient_report(const dispersion::DrudeParameters& p,
                                     double gap, double temperature_K) {
    CoefficientReport r;
    r.scale_c = scale_constant(p, temperature_K);
    r.c1 = leading_coefficient(p);
    r.c2_euler_maclaurin =
        sqrt_t_correction(p, gap, 0.0, CorrectionVariant::euler_maclaurin).c2;
    r.c2_exact_zeta =
        sqrt_t_correction(p, gap, 0.0, CorrectionVariant::exact_zeta).c2;
    r.g_prime_0 = mode_function_slope0();
    r.weighted_integral = weighted_mode_integral();
    r.zeta_neg_3_2 = special::zeta_neg_3_2();
    r.validity = validity_scale(p, gap, temperature_K);
    r.pade_at_T = pade_delta_f(temperature_K, r.c1, r.c2_euler_maclaurin);
    return r;
}

LowTemperatureExpansion zeta_route(const dispersion::DrudeParameters& p,
                                   double gap, double temperature_K,
                                   int n_orders) {
    if (n_orders < 1 || n_orders > 2)
        throw std::invalid_argument(
            "zeta_route: only the T^2 and T^(5/2) orders are resummable here");
    const double slope = scale_constant_slope(p);
    const double t = temperature_K;

    LowTemperatureExpansion e;
    // (C/beta) (-g'(0)) (-zeta(-1)); zeta(-1) = -1/12 reduces this to C1 T^2.
    e.t2_term = leading_coefficient(p) * t * t;
    if (n_orders >= 2) {
        // (C/beta) 2 a sqrt(2 pi C) I zeta(-3/2), negative.
        e.t52_term = slope * constants::k_B * t * t * 2.0 * gap *
                     std::sqrt(2.0 * pi * slope * t) *
                     weighted_mode_integral() * special::zeta_neg_3_2();
    }
    e.omitted_constant_note =
        "a temperature-independent term (divergent once the lower integration "
        "limit is sent to zero) precedes the T^2 term and is dropped; it cannot "
        "contribute to the thermal deviation";
    return e;
}

double ScaledTE::alpha(double m) const {
    return 2.0 * gap * std::sqrt(2.0 * pi * scale_c * m);
}

double ScaledTE::x0(double m) const {
    return std::sqrt(matsubara_step * m / strength_d);
}

double ScaledTE::g(double m, double rel_tol) const {
    if (!(m >= 0.0)) throw std::domain_error("ScaledTE::g: m must be >= 0");
    if (m == 0.0) return 0.0;
    const double a = alpha(m);
    auto f = [a](double x) {
        const double b = reflection::scaled_te_coefficient(x);
        const double omb = reflection::scaled_te_complement(x);
        return x * num::log_one_minus_attenuated(b, omb, a * x);
    };
    // integrand decays like e^(-alpha x)
    return m * num::integrate_decaying(f, x0(m), 1.0 / a, rel_tol).value;
}

ScaledTE scaled_te(const dispersion::DrudeParameters& p, double gap,
                   double temperature_K) {
    if (!(gap > 0.0)) throw std::domain_error("scaled_te: gap must be positive");
    ScaledTE s;
    s.scale_c = scale_constant(p, temperature_K);
    s.gap = gap;
    s.strength_d = dispersion::low_frequency_strength(p);
    s.matsubara_step =
        2.0 * pi * constants::k_B * temperature_K / constants::hbar;
    return s;
}

} // namespace casimir::asymptotics
