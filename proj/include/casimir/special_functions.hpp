#pragma once

namespace casimir::special {

// zeta(s) for s > 1 by direct Dirichlet series with an Euler-Maclaurin
// tail; ~15 significant digits with ~30 explicit terms.
double riemann_zeta(double s);

// zeta(-1) = -1/12 (exact).
inline constexpr double zeta_neg_1 = -1.0 / 12.0;

// zeta(-3/2), via the functional equation through zeta(5/2).
double zeta_neg_3_2();

// Apery's constant zeta(3).
double zeta_3();

} // namespace casimir::special
