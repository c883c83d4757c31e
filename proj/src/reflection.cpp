#include "casimir/reflection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "casimir/constants.hpp"

namespace casimir::reflection {

namespace {
constexpr double nan = std::numeric_limits<double>::quiet_NaN();
}

ModeCoordinates ModeCoordinates::make(double epsilon, double zeta, double q,
                                      double gap,
                                      std::optional<double> strength_D) {
    if (!(zeta > 0.0))
        throw std::domain_error("ModeCoordinates: zeta must be positive");
    if (!(gap > 0.0))
        throw std::domain_error("ModeCoordinates: gap must be positive");
    const double qmin = zeta / constants::c;
    if (!(q >= qmin))
        throw std::domain_error("ModeCoordinates: q below the light line q = zeta/c");
    if (!(epsilon >= 1.0))
        throw std::domain_error("ModeCoordinates: eps < 1 unsupported");

    ModeCoordinates m;
    m.zeta = zeta;
    m.q = q;
    // k_perp^2 = q^2 - (zeta/c)^2 without cancellation near the light line
    m.k_perp = std::sqrt(std::max(0.0, (q - qmin) * (q + qmin)));
    m.p = q * constants::c / zeta;
    m.s = std::isinf(epsilon)
              ? std::numeric_limits<double>::infinity()
              : std::sqrt((epsilon - 1.0) + m.p * m.p);
    m.y = 2.0 * q * gap;
    if (strength_D && *strength_D > 0.0) {
        m.x = q * constants::c / std::sqrt(*strength_D * zeta);
        m.x0 = std::sqrt(zeta / *strength_D);
    } else {
        m.x = nan;
        m.x0 = nan;
    }
    return m;
}

ReflectionPair fresnel_squared(double epsilon, double zeta, double q) {
    if (std::isinf(epsilon)) return {1.0, 1.0};
    if (!(zeta > 0.0))
        throw std::domain_error("fresnel_squared: zeta must be positive");
    if (!(epsilon >= 1.0))
        throw std::domain_error("fresnel_squared: eps < 1 unsupported");
    if (!(q * constants::c >= zeta))
        throw std::domain_error("fresnel_squared: q below the light line q = zeta/c");

    const double p = q * constants::c / zeta;
    const double em1 = epsilon - 1.0;
    const double s = std::sqrt(em1 + p * p);

    // s - p = em1 / (s + p); ratios are formed before squaring so the
    // huge-eps corner (zeta -> 0) stays inside double range.
    const double rb = em1 / ((s + p) * (s + p));
    const double num_a = em1 * (p * p * (epsilon + 1.0) - 1.0);
    const double den_a = epsilon * p + s;
    const double ra = num_a / den_a / den_a;
    return {ra * ra, rb * rb};
}

ReflectionPair zero_frequency_limit(const dispersion::DispersionModel& model,
                                    double q) {
    if (!(q > 0.0))
        throw std::domain_error("zero_frequency_limit: q must be positive");
    struct Visitor {
        double q;
        ReflectionPair operator()(const dispersion::DrudeParameters&) const {
            return {1.0, 0.0};
        }
        ReflectionPair operator()(const dispersion::PlasmaParameters& p) const {
            // B0 = ((s0 - qc)/(s0 + qc))^2 with s0 = sqrt((qc)^2 + omega_p^2)
            const double qc = q * constants::c;
            const double s0 = std::hypot(qc, p.omega_p);
            const double r = p.omega_p * p.omega_p / ((s0 + qc) * (s0 + qc));
            return {1.0, r * r};
        }
        ReflectionPair operator()(const dispersion::IdealMetal&) const {
            return {1.0, 1.0};
        }
        ReflectionPair operator()(const dispersion::PermittivityTable& t) const {
            // A tabulated medium keeps its lowest-sampled permittivity as the
            // static limit: dielectric A0 = ((eps0-1)/(eps0+1))^2, which for
            // ingested metallic loss data sits within 1/eps0 of 1. The TE
            // mode dies for any finite eps0.
            const double eps0 = t.eps.front();
            const double r = (eps0 - 1.0) / (eps0 + 1.0);
            return {r * r, 0.0};
        }
    };
    return std::visit(Visitor{q}, model);
}

double scaled_te_coefficient(double x) {
    if (!(x >= 0.0))
        throw std::domain_error("scaled_te_coefficient: x must be >= 0");
    const double t = 1.0 / (std::sqrt(1.0 + x * x) + x);
    const double t2 = t * t;
    return t2 * t2;
}

double scaled_te_complement(double x) {
    if (!(x >= 0.0))
        throw std::domain_error("scaled_te_complement: x must be >= 0");
    const double h = std::sqrt(1.0 + x * x);
    const double t = 1.0 / (h + x);
    // 1 - t = (h - 1 + x)/(h + x) with h - 1 = x^2/(1 + h)
    const double one_minus_t = (x * x / (1.0 + h) + x) / (h + x);
    return one_minus_t * (1.0 + t) * (1.0 + t * t);
}

double scaling_consistency(const dispersion::DrudeParameters& drude,
                           double zeta, double q) {
    if (!(drude.nu > 0.0))
        throw std::domain_error("scaling_consistency: needs a dissipative Drude model");
    if (!(zeta > 0.0 && zeta < drude.nu / 10.0))
        throw std::invalid_argument(
            "scaling_consistency: requires zeta < nu/10 (relaxation regime)");

    const dispersion::DispersionModel model = drude;
    const double eps = dispersion::eval_permittivity(model, zeta);
    const double b_full = fresnel_squared(eps, zeta, q).B;

    const double d = dispersion::low_frequency_strength(drude);
    const double x = q * constants::c / std::sqrt(d * zeta);
    const double b_scaled = scaled_te_coefficient(x);
    if (b_scaled == 0.0) return b_full == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(b_full - b_scaled) / b_scaled;
}

ReflectionSurface reflection_surface(const dispersion::DispersionModel& model,
                                     std::span<const double> zeta_grid,
                                     std::span<const double> kperp_grid) {
    auto check_grid = [](std::span<const double> g, const char* name) {
        if (g.empty())
            throw std::invalid_argument(std::string("reflection_surface: empty ") + name);
        for (size_t i = 0; i < g.size(); ++i) {
            if (!(g[i] > 0.0))
                throw std::invalid_argument(
                    std::string("reflection_surface: nonpositive ") + name);
            if (i > 0 && !(g[i] > g[i - 1]))
                throw std::invalid_argument(
                    std::string("reflection_surface: non-ascending ") + name);
        }
    };
    check_grid(zeta_grid, "zeta grid");
    check_grid(kperp_grid, "k_perp grid");

    ReflectionSurface surf;
    surf.zeta.assign(zeta_grid.begin(), zeta_grid.end());
    surf.k_perp.assign(kperp_grid.begin(), kperp_grid.end());
    surf.values.reserve(zeta_grid.size() * kperp_grid.size());
    for (double z : zeta_grid) {
        const double eps = dispersion::eval_permittivity(model, z);
        for (double k : kperp_grid) {
            const double q = std::hypot(k, z / constants::c);
            surf.values.push_back(fresnel_squared(eps, z, q));
        }
    }
    return surf;
}

} // namespace casimir::reflection
