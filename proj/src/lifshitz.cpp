#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/numerics.hpp"
#include "casimir/reflection.hpp"

namespace casimir::lifshitz {

using std::numbers::pi;

ThermalContext ThermalContext::at(double temperature_K) {
    if (!(temperature_K > 0.0))
        throw std::domain_error("ThermalContext: T must be positive (T = 0 has its own path)");
    ThermalContext ctx;
    ctx.temperature = temperature_K;
    ctx.beta = 1.0 / (constants::k_B * temperature_K);
    ctx.matsubara_step = 2.0 * pi * constants::k_B * temperature_K / constants::hbar;
    return ctx;
}

namespace {

// Dimensionless inner integral J = Int_{ymin}^inf y ln(1 - R(y) e^-y) dy
// in the substituted variable y = 2qa. The mode integral over q is
// J / (2a)^2.
//
// At fixed zeta the reflection coefficient needs only eps(i zeta) (hoisted
// out here) and p = y/ymin.
struct InnerIntegrand {
    double em1;        // eps - 1
    double eps;        // finite here; the infinite sentinel never reaches this
    double inv_ymin;   // 1/(2 a zeta / c)
    Polarization pol;

    double operator()(double y) const {
        const double p = y * inv_ymin;
        const double s = std::sqrt(em1 + p * p);
        double r, omr; // reflection coefficient and its complement 1-r,
                       // both in cancellation-free form
        if (pol == Polarization::TE) {
            const double t = em1 / ((s + p) * (s + p)); // (s-p)/(s+p)
            r = t * t;
            omr = 2.0 * p / (s + p) * (1.0 + t);
        } else {
            const double num = em1 * (p * p * (eps + 1.0) - 1.0);
            const double den = eps * p + s;
            const double t = num / den / den; // (eps p - s)/(eps p + s)
            r = t * t;
            omr = 2.0 * s / den * (1.0 + t);
        }
        return r > 0.0 ? y * num::log_one_minus_attenuated(r, omr, y) : 0.0;
    }
};

// Same integral at zeta = 0, where the reflection coefficient takes its
// zero-frequency limit (constant in y except for the plasma TE mode).
struct ZeroModeIntegrand {
    double r_const;   // A0 or B0 when q-independent, else unused
    double omr_const; // 1 - r_const in cancellation-free form
    double wp_y;      // 2 a omega_p / c, plasma TE only
    bool plasma_te;

    double operator()(double y) const {
        double r = r_const;
        double omr = omr_const;
        if (plasma_te) {
            const double s0 = std::hypot(y, wp_y);
            const double t = wp_y * wp_y / ((s0 + y) * (s0 + y));
            r = t * t;
            omr = 2.0 * y / (s0 + y) * (1.0 + t);
        }
        return r > 0.0 ? y * num::log_one_minus_attenuated(r, omr, y) : 0.0;
    }
};

double zero_mode_inner(const dispersion::DispersionModel& model,
                       const Geometry& geom, Polarization pol,
                       double rel_tol) {
    ZeroModeIntegrand f{0.0, 1.0, 0.0, false};
    if (std::holds_alternative<dispersion::IdealMetal>(model)) {
        f.r_const = 1.0;
        f.omr_const = 0.0;
    } else if (const auto* p = std::get_if<dispersion::PlasmaParameters>(&model)) {
        if (pol == Polarization::TE) {
            f.plasma_te = true;
            f.wp_y = 2.0 * geom.gap * p->omega_p / constants::c;
        } else {
            f.r_const = 1.0;
            f.omr_const = 0.0;
        }
    } else if (const auto* t = std::get_if<dispersion::PermittivityTable>(&model)) {
        // static limit from the lowest sample: dielectric-style TM, no TE
        if (pol == Polarization::TE) return 0.0;
        const double eps0 = t->eps.front();
        const double r = (eps0 - 1.0) / (eps0 + 1.0);
        f.r_const = r * r;
        f.omr_const = 2.0 / (eps0 + 1.0) * (1.0 + r);
        if (f.r_const == 0.0) return 0.0;
    } else {
        // Drude: TE dies at zero frequency, TM saturates at the ideal value
        if (pol == Polarization::TE) return 0.0;
        f.r_const = 1.0;
        f.omr_const = 0.0;
    }
    return num::integrate_decaying(f, 0.0, 1.0, rel_tol).value;
}

double inner_integral(const dispersion::DispersionModel& model,
                      const Geometry& geom, double zeta, Polarization pol,
                      double rel_tol) {
    if (zeta == 0.0) return zero_mode_inner(model, geom, pol, rel_tol);

    const double eps = dispersion::eval_permittivity(model, zeta);
    const double ymin = 2.0 * geom.gap * zeta / constants::c;
    if (std::isinf(eps)) {
        ZeroModeIntegrand f{1.0, 0.0, 0.0, false};
        return num::integrate_decaying(f, ymin, 1.0, rel_tol).value;
    }
    if (eps == 1.0) return 0.0; // transparent medium, nothing reflects

    InnerIntegrand f{eps - 1.0, eps, 1.0 / ymin, pol};
    return num::integrate_decaying(f, ymin, 1.0, rel_tol).value;
}

} // namespace

double mode_integral(const dispersion::DispersionModel& model,
                     const Geometry& geom, double zeta, Polarization pol,
                     ModeWeight weight, double rel_tol) {
    if (!(geom.gap > 0.0))
        throw std::domain_error("mode_integral: gap must be positive");
    if (!(zeta >= 0.0))
        throw std::domain_error("mode_integral: zeta must be >= 0");
    const double j = inner_integral(model, geom, zeta, pol, rel_tol);
    const double scale = 1.0 / (4.0 * geom.gap * geom.gap);
    return (weight == ModeWeight::half ? 0.5 : 1.0) * scale * j;
}

FreeEnergyBreakdown free_energy(const dispersion::DispersionModel& model,
                                const Geometry& geom, double temperature_K,
                                const SumOptions& opts) {
    const ThermalContext ctx = ThermalContext::at(temperature_K);
    if (!(geom.gap > 0.0))
        throw std::domain_error("free_energy: gap must be positive");
    if (!(opts.sum_rel_tol > 0.0 && opts.inner_rel_tol > 0.0))
        throw std::domain_error("free_energy: tolerances must be positive");

    FreeEnergyBreakdown out;

    // m = 0, half weight
    const double te0 = mode_integral(model, geom, 0.0, Polarization::TE,
                                     ModeWeight::half, opts.inner_rel_tol);
    const double tm0 = mode_integral(model, geom, 0.0, Polarization::TM,
                                     ModeWeight::half, opts.inner_rel_tol);
    out.te_zero_mode_suppressed = (te0 == 0.0);

    num::CompensatedSum te_sum, tm_sum;
    te_sum.add(te0);
    tm_sum.add(tm0);
    if (opts.keep_term_magnitudes)
        out.term_magnitudes.push_back(std::abs(te0 + tm0));

    struct Term {
        double te, tm;
    };
    std::vector<Term> buf;

    long m = 1;
    int quiet = 0;
    double last_term = 0.0;
    bool done = false;
    long chunk = 16;

    while (!done) {
        if (m > opts.m_cap) {
            const double partial =
                (te_sum.value() + tm_sum.value()) * constants::k_B *
                ctx.temperature / (2.0 * pi);
            throw NumericalError(
                "free_energy: Matsubara sum hit the m cap before converging",
                partial, std::abs(last_term));
        }
        const long count = std::min(chunk, opts.m_cap - m + 1);
        buf.resize(static_cast<size_t>(count));
        num::parallel_for(0, count, opts.workers, [&](long i) {
            const double zeta = ctx.matsubara_step * static_cast<double>(m + i);
            buf[static_cast<size_t>(i)] = {
                mode_integral(model, geom, zeta, Polarization::TE,
                              ModeWeight::full, opts.inner_rel_tol),
                mode_integral(model, geom, zeta, Polarization::TM,
                              ModeWeight::full, opts.inner_rel_tol)};
        });
        for (long i = 0; i < count; ++i) {
            const Term& t = buf[static_cast<size_t>(i)];
            te_sum.add(t.te);
            tm_sum.add(t.tm);
            const double mag = std::abs(t.te + t.tm);
            if (opts.keep_term_magnitudes) out.term_magnitudes.push_back(mag);
            last_term = mag;
            const double partial = std::abs(te_sum.value() + tm_sum.value());
            if (mag <= opts.sum_rel_tol * partial)
                ++quiet;
            else
                quiet = 0;
            out.m_max = m + i;
            if (quiet >= 5 && out.m_max >= opts.min_terms) {
                done = true;
                break;
            }
        }
        m += count;
        chunk = std::min<long>(chunk * 2, 2048);
    }

    const double prefactor = constants::k_B * ctx.temperature / (2.0 * pi);
    out.f_te = prefactor * te_sum.value();
    out.f_tm = prefactor * tm_sum.value();
    out.f_total = out.f_te + out.f_tm;

    const double denom = std::abs(out.f_total);
    const double tail = prefactor * last_term;
    out.achieved_rel_tol =
        denom > 0.0 ? (tail + opts.inner_rel_tol * denom) / denom
                    : 0.0;
    return out;
}

T0Result free_energy_t0(const dispersion::DispersionModel& model,
                        const Geometry& geom, const T0Options& opts) {
    if (!(geom.gap > 0.0))
        throw std::domain_error("free_energy_t0: gap must be positive");

    // Scaled variables w = 2 a zeta / c, y = 2 q a:
    //   F(0) = hbar c / (32 pi^2 a^3) * Int_0^inf dw Int_w^inf y ln(1-lambda) dy
    const double a = geom.gap;
    auto component = [&](Polarization pol) {
        auto outer = [&](double w) {
            const double zeta = w * constants::c / (2.0 * a);
            return 4.0 * a * a *
                   mode_integral(model, geom, zeta, pol, ModeWeight::full,
                                 opts.inner_rel_tol);
        };
        const double j =
            num::integrate_decaying(outer, 0.0, 1.0, opts.outer_rel_tol).value;
        return constants::hbar * constants::c / (32.0 * pi * pi * a * a * a) * j;
    };

    T0Result r;
    r.f_te = component(Polarization::TE);
    r.f_tm = component(Polarization::TM);
    r.f_total = r.f_te + r.f_tm;
    return r;
}

double delta_free_energy(const dispersion::DispersionModel& model,
                         const Geometry& geom, double temperature_K,
                         Polarization pol, const DeltaOptions& opts) {
    if (temperature_K == 0.0) return 0.0;
    const ThermalContext ctx = ThermalContext::at(temperature_K);

    auto g = [&](double u) {
        return mode_integral(model, geom, ctx.matsubara_step * u, pol,
                             ModeWeight::full, opts.inner_rel_tol);
    };

    num::CompensatedSum delta;
    double abs_g_sum = 0.0; // coherent bound on inner-quadrature bias

    // Interval [0,1] carries the half-power behavior of G near u = 0;
    // substituting u = v^2 turns u^(k/2) into v^k before quadrature.
    const double g0 = g(0.0);
    const double g1 = g(1.0);
    const num::QuadResult i0 = num::integrate(
        [&](double v) { return 2.0 * v * g(v * v); }, 0.0, 1.0,
        opts.inner_rel_tol, std::abs(g1) * 1e-15);
    delta.add(0.5 * (g0 + g1) - i0.value);
    abs_g_sum += std::abs(g0) + std::abs(g1);

    double peak = std::max(std::abs(g0), std::abs(g1));
    double g_prev = g1;
    bool done = false;
    long m = 1;
    long chunk = 16;

    struct Interval {
        double integral; // Int_m^{m+1} G
        double g_end;    // G(m+1)
    };
    std::vector<Interval> buf;

    while (!done) {
        if (m > opts.max_intervals)
            throw NumericalError(
                "delta_free_energy: interval budget exhausted before the tail cut",
                delta.value(), std::abs(g_prev));
        const long count = std::min(chunk, opts.max_intervals - m + 1);
        buf.resize(static_cast<size_t>(count));
        num::parallel_for(0, count, opts.workers, [&](long i) {
            const double lo = static_cast<double>(m + i);
            buf[static_cast<size_t>(i)] = {
                num::gauss_legendre_10(g, lo, lo + 1.0), g(lo + 1.0)};
        });
        for (long i = 0; i < count; ++i) {
            const Interval& iv = buf[static_cast<size_t>(i)];
            delta.add(0.5 * (g_prev + iv.g_end) - iv.integral);
            abs_g_sum += std::abs(iv.g_end);
            g_prev = iv.g_end;
            peak = std::max(peak, std::abs(iv.g_end));
            if (m + i >= 8 && std::abs(iv.g_end) <= opts.tail_cut * peak) {
                done = true;
                break;
            }
        }
        m += count;
        chunk = std::min<long>(chunk * 2, 1024);
    }

    const double raw = delta.value();
    const double bias_bound = i0.abs_error + opts.inner_rel_tol * abs_g_sum;
    if (raw != 0.0 && bias_bound > opts.target_rel_tol * std::abs(raw))
        throw NumericalError(
            "delta_free_energy: inner-quadrature bias bound exceeds the target tolerance",
            constants::k_B * temperature_K / (2.0 * pi) * raw,
            bias_bound / std::abs(raw));

    return constants::k_B * temperature_K / (2.0 * pi) * raw;
}

double delta_free_energy_te(const dispersion::DispersionModel& model,
                            const Geometry& geom, double temperature_K,
                            const DeltaOptions& opts) {
    if (!std::holds_alternative<dispersion::DrudeParameters>(model))
        throw std::domain_error(
            "delta_free_energy_te: the TE deviation study requires a Drude model");
    return delta_free_energy(model, geom, temperature_K, Polarization::TE, opts);
}

double delta_free_energy_tm(const dispersion::DispersionModel& model,
                            const Geometry& geom, double temperature_K,
                            const DeltaOptions& opts) {
    return delta_free_energy(model, geom, temperature_K, Polarization::TM, opts);
}

double entropy(const dispersion::DispersionModel& model, const Geometry& geom,
               double temperature_K, double step_K, const SumOptions& opts) {
    if (step_K == 0.0) step_K = std::max(1e-3, temperature_K / 20.0);
    if (!(temperature_K > step_K && step_K > 0.0))
        throw std::domain_error("entropy: need T > h > 0");

    SumOptions tight = opts;
    tight.inner_rel_tol = std::min(opts.inner_rel_tol, 1e-12);
    tight.sum_rel_tol = std::min(opts.sum_rel_tol, 1e-12);
    tight.keep_term_magnitudes = false;

    const double f_plus = free_energy(model, geom, temperature_K + step_K, tight).f_total;
    const double f_minus = free_energy(model, geom, temperature_K - step_K, tight).f_total;
    return -(f_plus - f_minus) / (2.0 * step_K);
}

} // namespace casimir::lifshitz
