#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir::num {

// Neumaier-compensated accumulator. Summation order is the caller's
// responsibility; reductions that must be deterministic add terms in
// ascending index order.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

namespace detail {

// Gauss7-Kronrod15 nodes/weights on [-1,1] (positive half).
inline constexpr double gk_nodes[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
inline constexpr double k15_weights[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
inline constexpr double g7_weights[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

// 10-point Gauss-Legendre on [-1,1] (positive half).
inline constexpr double gl10_nodes[5] = {
    0.1488743389816312108848260, 0.4333953941292471907992659,
    0.6794095682990244062343274, 0.8650633666889845107320967,
    0.9739065285171717200779640};
inline constexpr double gl10_weights[5] = {
    0.2955242247147528701738930, 0.2692667193099963550912269,
    0.2190863625159820439955349, 0.1494513491505805931457763,
    0.0666713443086881375935688};

} // namespace detail

// One Gauss7/Kronrod15 panel. Value is the K15 estimate; abs_error is the
// G7/K15 discrepancy sharpened the usual way against the scale of the
// integrand's variation on the panel, floored at roundoff level.
template <class F>
QuadResult gk15(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);

    double fv[15];
    fv[7] = f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = hl * detail::gk_nodes[i];
        fv[i] = f(mid - dx);
        fv[14 - i] = f(mid + dx);
    }

    double k15 = detail::k15_weights[7] * fv[7];
    double g7 = detail::g7_weights[3] * fv[7];
    double resabs = detail::k15_weights[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        const double fi = fv[i] + fv[14 - i];
        k15 += detail::k15_weights[i] * fi;
        resabs += detail::k15_weights[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1) g7 += detail::g7_weights[i / 2] * fi;
    }
    const double mean = 0.5 * k15;
    double resasc = detail::k15_weights[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += detail::k15_weights[i] *
                  (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));

    const double ahl = std::abs(hl);
    QuadResult r;
    r.value = k15 * hl;
    r.evaluations = 15;
    double err = std::abs((k15 - g7) * hl);
    const double asc = resasc * ahl;
    if (asc != 0.0 && err != 0.0)
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    err = std::max(err, 50.0 * 2.22e-16 * resabs * ahl);
    r.abs_error = err;
    return r;
}

// Globally adaptive bisection over [a,b]: always splits the segment with
// the largest error estimate until the summed error meets
// max(abs_tol, rel_tol*|integral|). Deterministic: the worst-segment order
// depends only on values, with ties broken by position.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol,
                     double abs_tol = 0.0, int max_segments = 4000,
                     int max_depth = 80) {
    struct Seg {
        double a, b, value, err;
        int depth;
    };
    auto worse = [](const Seg& x, const Seg& y) {
        if (x.err != y.err) return x.err < y.err; // max-heap on error
        return x.a > y.a;
    };

    std::vector<Seg> segs;
    segs.reserve(64);
    long evals = 0;

    auto eval = [&](double lo, double hi, int depth) {
        const QuadResult r = gk15(f, lo, hi);
        evals += r.evaluations;
        return Seg{lo, hi, r.value, r.abs_error, depth};
    };

    segs.push_back(eval(a, b, 0));
    double value = segs.front().value;
    double err = segs.front().err;
    bool converged = true;

    while (err > std::max(abs_tol, rel_tol * std::abs(value))) {
        std::pop_heap(segs.begin(), segs.end(), worse);
        const Seg s = segs.back();
        if (s.depth >= max_depth ||
            static_cast<int>(segs.size()) + 1 >= max_segments) {
            std::push_heap(segs.begin(), segs.end(), worse);
            converged = false;
            break;
        }
        segs.pop_back();
        const double mid = 0.5 * (s.a + s.b);
        const Seg left = eval(s.a, mid, s.depth + 1);
        const Seg right = eval(mid, s.b, s.depth + 1);
        value += left.value + right.value - s.value;
        err += left.err + right.err - s.err;
        segs.push_back(left);
        std::push_heap(segs.begin(), segs.end(), worse);
        segs.push_back(right);
        std::push_heap(segs.begin(), segs.end(), worse);
    }

    // compensated re-sum in position order (the incremental running value
    // accumulates cancellation over many splits)
    std::sort(segs.begin(), segs.end(),
              [](const Seg& x, const Seg& y) { return x.a < y.a; });
    CompensatedSum total, toterr;
    for (const Seg& s : segs) {
        total.add(s.value);
        toterr.add(s.err);
    }
    return {total.value(), toterr.value(), evals, converged};
}

// Integral over [a, inf) of an (eventually) exponentially decaying
// integrand with decay length ~scale. Marches fixed panels of width
// 8*scale; stops once two consecutive panels contribute less than
// tail_eps relative to the running total.
template <class F>
QuadResult integrate_decaying(F&& f, double a, double scale, double rel_tol,
                              double tail_eps = 1e-18, int max_panels = 120) {
    const double width = 8.0 * scale;
    CompensatedSum total;
    double err_total = 0.0;
    long evals = 0;
    int quiet = 0;

    // Rough magnitude probe: gives the first panel an absolute floor so
    // integrable endpoint singularities stop subdividing once they are
    // below tolerance at the scale of the whole integral.
    const QuadResult probe = gk15(f, a, a + width);
    double abs_floor = rel_tol * std::abs(probe.value);
    evals += probe.evaluations;

    for (int panel = 0; panel < max_panels; ++panel) {
        const double pa = a + width * panel;
        const double pb = pa + width;
        const QuadResult r = integrate(f, pa, pb, rel_tol, abs_floor);
        total.add(r.value);
        err_total += r.abs_error;
        evals += r.evaluations;
        if (panel == 0) abs_floor = rel_tol * std::abs(r.value);

        if (std::abs(r.value) <= tail_eps * std::abs(total.value()))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2)
            return {total.value(), err_total, evals, true};
    }
    throw NumericalError("semi-infinite integral did not converge within the panel budget",
                         total.value(), err_total);
}

// ln(1 - r e^(-y)) for a squared reflection coefficient r in [0, 1].
// Callers must supply 1-r computed by its own cancellation-free formula;
// near y = 0 with r -> 1 the naive form rounds to log(0).
inline double log_one_minus_attenuated(double r, double one_minus_r, double y) {
    const double lam = r * std::exp(-y);
    if (lam < 0.5) return std::log1p(-lam);
    return std::log(one_minus_r - r * std::expm1(-y));
}

// Fixed 10-point Gauss-Legendre panel (no error estimate). Used where the
// integrand is known smooth and a fixed evaluation pattern is wanted.
template <class F>
double gauss_legendre_10(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double dx = hl * detail::gl10_nodes[i];
        acc += detail::gl10_weights[i] * (f(mid + dx) + f(mid - dx));
    }
    return acc * hl;
}

// Runs body(i) for i in [begin, end) on `workers` threads. Work items must
// be independent; each writes only to its own output slot, so the results
// are identical for any worker count.
void parallel_for(long begin, long end, int workers,
                  const std::function<void(long)>& body);

} // namespace casimir::num
