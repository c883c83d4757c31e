#include "casimir/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/numerics.hpp"

namespace casimir::special {

double riemann_zeta(double s) {
    if (!(s > 1.0))
        throw std::domain_error("riemann_zeta: series form requires s > 1");

    constexpr int cut = 30;
    num::CompensatedSum sum;
    for (int n = 1; n < cut; ++n) sum.add(std::pow(n, -s));

    // Euler-Maclaurin tail from n = cut.
    const double nc = cut;
    double tail = std::pow(nc, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nc, -s);
    tail += s / 12.0 * std::pow(nc, -s - 1.0);
    tail -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(nc, -s - 3.0);
    tail += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 *
            std::pow(nc, -s - 5.0);
    sum.add(tail);
    return sum.value();
}

double zeta_neg_3_2() {
    // zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s) at s = -3/2.
    // Gamma(5/2) = 3 sqrt(pi)/4.
    using std::numbers::pi;
    const double gamma_5_2 = 0.75 * std::sqrt(pi);
    return std::pow(2.0, -1.5) * std::pow(pi, -2.5) *
           std::sin(-0.75 * pi) * gamma_5_2 * riemann_zeta(2.5);
}

double zeta_3() { return riemann_zeta(3.0); }

} // namespace casimir::special
