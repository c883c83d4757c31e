#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "casimir/dispersion.hpp"

namespace casimir::reflection {

// Squared Fresnel reflection coefficients of one vacuum/metal interface,
// on the imaginary frequency axis. A is TM, B is TE; both in [0, 1].
// The mode amplitudes entering the free energy carry the propagation
// factor e^(-y) with y = 2qa, so lambda < 1 whenever y > 0.
struct ReflectionPair {
    double A = 0.0;
    double B = 0.0;

    double lambda_tm(double y) const { return A * std::exp(-y); }
    double lambda_te(double y) const { return B * std::exp(-y); }
};

// Kinematics of one (zeta, q) mode. The constructor recomputes every
// derived field, so the members are mutually consistent by construction.
struct ModeCoordinates {
    double zeta = 0.0;   // rad/s
    double q = 0.0;      // 1/m, q >= zeta/c
    double k_perp = 0.0; // 1/m, k_perp^2 = q^2 - (zeta/c)^2
    double p = 0.0;      // q c / zeta, >= 1
    double s = 0.0;      // sqrt(eps - 1 + p^2), >= p for eps >= 1
    double y = 0.0;      // 2 q a
    double x = 0.0;      // q c / sqrt(D zeta); NaN unless D supplied
    double x0 = 0.0;     // sqrt(zeta / D);     NaN unless D supplied

    static ModeCoordinates make(double epsilon, double zeta, double q,
                                double gap,
                                std::optional<double> strength_D = {});
};

// A = ((eps p - s)/(eps p + s))^2, B = ((s - p)/(s + p))^2, evaluated in
// conjugate form (s - p = (eps-1)/(s+p)) so nothing cancels as s -> p.
// The infinite-eps sentinel short-circuits to A = B = 1.
ReflectionPair fresnel_squared(double epsilon, double zeta, double q);

// zeta -> 0 limits: Drude-like media lose the TE mode (B -> 0) while
// A -> 1; the plasma model keeps a finite TE coefficient; the ideal metal
// keeps both at 1.
ReflectionPair zero_frequency_limit(const dispersion::DispersionModel& model,
                                    double q);

// TE coefficient in the one-variable scaled form,
// B(x) = (sqrt(1+x^2) - x)^4 = (sqrt(1+x^2) + x)^-4.
double scaled_te_coefficient(double x);

// 1 - B(x) without cancellation; ~ 4x as x -> 0.
double scaled_te_complement(double x);

// Relative deviation between the full TE coefficient and its scaled form
// with x = q c / sqrt(D zeta). Only meaningful deep in the relaxation
// regime; requires zeta < nu/10.
double scaling_consistency(const dispersion::DrudeParameters& drude,
                           double zeta, double q);

// Row-major (A, B) samples over a (zeta, k_perp) grid with
// q = sqrt(k_perp^2 + (zeta/c)^2).
struct ReflectionSurface {
    std::vector<double> zeta;
    std::vector<double> k_perp;
    std::vector<ReflectionPair> values; // zeta-major

    const ReflectionPair& at(size_t iz, size_t ik) const {
        return values[iz * k_perp.size() + ik];
    }
};

ReflectionSurface reflection_surface(const dispersion::DispersionModel& model,
                                     std::span<const double> zeta_grid,
                                     std::span<const double> kperp_grid);

} // namespace casimir::reflection
