#include "casimir/analysis.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "casimir/errors.hpp"
#include "casimir/numerics.hpp"

namespace casimir::analysis {

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0 && hi > lo) || count < 2)
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and count >= 2");
    std::vector<double> t(static_cast<size_t>(count));
    const double ratio = std::pow(hi / lo, 1.0 / (count - 1));
    double v = lo;
    for (auto& x : t) {
        x = v;
        v *= ratio;
    }
    t.back() = hi;
    return t;
}

std::vector<RatioPoint> ratio_series(const dispersion::DispersionModel& model,
                                     const lifshitz::Geometry& geom,
                                     std::span<const double> temperatures_K,
                                     const RatioOptions& opts) {
    const auto* drude = std::get_if<dispersion::DrudeParameters>(&model);
    if (!drude)
        throw std::domain_error("ratio_series: requires a Drude model");
    for (size_t i = 0; i < temperatures_K.size(); ++i) {
        if (!(temperatures_K[i] > 0.0))
            throw std::invalid_argument("ratio_series: temperatures must be positive");
        if (i > 0 && !(temperatures_K[i] > temperatures_K[i - 1]))
            throw std::invalid_argument("ratio_series: temperatures must ascend");
    }

    const double c1 = asymptotics::leading_coefficient(*drude);
    const double c2 =
        asymptotics::sqrt_t_correction(*drude, geom.gap, 0.0, opts.variant).c2;

    std::vector<RatioPoint> series(temperatures_K.size());
    for (size_t i = 0; i < temperatures_K.size(); ++i) {
        RatioPoint& pt = series[i];
        pt.temperature = temperatures_K[i];
        pt.delta_th = asymptotics::pade_delta_f(pt.temperature, c1, c2);
        try {
            pt.delta_num =
                lifshitz::delta_free_energy_te(model, geom, pt.temperature, opts.delta);
            pt.ratio = (pt.delta_th - pt.delta_num) / pt.delta_th;
        } catch (const NumericalError& e) {
            pt.delta_num = std::numeric_limits<double>::quiet_NaN();
            pt.ratio = std::numeric_limits<double>::quiet_NaN();
            pt.note = e.what();
        }
    }
    return series;
}

namespace {

// Weighted least squares on the basis {1, sqrt(T), T} with weights 1/T
// (the low-T expansions are asymptotic at T = 0, so the smallest
// temperatures carry the most weight). Solved via equilibrated normal
// equations; the basis columns can span many orders of magnitude on a
// narrow window.
std::array<double, 3> weighted_basis_fit(
    const std::vector<std::pair<double, double>>& t_and_y) {
    long double m[3][3] = {};
    long double rhs[3] = {};
    for (const auto& [t, y] : t_and_y) {
        const long double w = 1.0L / static_cast<long double>(t);
        const long double phi[3] = {1.0L, std::sqrt(static_cast<long double>(t)),
                                    static_cast<long double>(t)};
        for (int i = 0; i < 3; ++i) {
            rhs[i] += w * phi[i] * y;
            for (int j = 0; j < 3; ++j) m[i][j] += w * phi[i] * phi[j];
        }
    }
    long double col_scale[3];
    for (int i = 0; i < 3; ++i) {
        if (!(m[i][i] > 0.0L))
            throw std::runtime_error("basis fit: degenerate normal equations");
        col_scale[i] = std::sqrt(m[i][i]);
    }
    for (int i = 0; i < 3; ++i) {
        rhs[i] /= col_scale[i];
        for (int j = 0; j < 3; ++j) m[i][j] /= col_scale[i] * col_scale[j];
    }
    int idx[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[idx[r]][col]) > std::abs(m[idx[piv]][col])) piv = r;
        std::swap(idx[col], idx[piv]);
        const long double diag = m[idx[col]][col];
        if (std::abs(static_cast<double>(diag)) < 1e-10)
            throw std::runtime_error("basis fit: rank-deficient normal equations");
        for (int r = col + 1; r < 3; ++r) {
            const long double f = m[idx[r]][col] / diag;
            for (int c = col; c < 3; ++c) m[idx[r]][c] -= f * m[idx[col]][c];
            rhs[idx[r]] -= f * rhs[idx[col]];
        }
    }
    long double beta[3];
    for (int col = 2; col >= 0; --col) {
        long double acc = rhs[idx[col]];
        for (int c = col + 1; c < 3; ++c) acc -= m[idx[col]][c] * beta[c];
        beta[col] = acc / m[idx[col]][col];
    }
    return {static_cast<double>(beta[0] / col_scale[0]),
            static_cast<double>(beta[1] / col_scale[1]),
            static_cast<double>(beta[2] / col_scale[2])};
}

std::vector<const RatioPoint*> usable_points(
    std::span<const RatioPoint> series) {
    std::vector<const RatioPoint*> pts;
    for (const auto& p : series)
        if (p.note.empty() && std::isfinite(p.ratio)) pts.push_back(&p);
    return pts;
}

} // namespace

RatioFit fit_low_t(std::span<const RatioPoint> series) {
    const auto pts = usable_points(series);
    if (pts.size() < 5)
        throw std::invalid_argument("fit_low_t: need at least 5 usable points");

    std::vector<std::pair<double, double>> data;
    data.reserve(pts.size());
    for (const auto* p : pts) data.emplace_back(p->temperature, p->ratio);
    const auto beta = weighted_basis_fit(data);

    RatioFit fit;
    fit.intercept = beta[0];
    fit.sqrt_coeff = beta[1];
    fit.slope = beta[2];
    fit.points_used = static_cast<int>(pts.size());
    fit.window_lo = pts.front()->temperature;
    fit.window_hi = pts.back()->temperature;

    num::CompensatedSum rss;
    for (const auto* p : pts) {
        const double t = p->temperature;
        const double model =
            fit.intercept + fit.sqrt_coeff * std::sqrt(t) + fit.slope * t;
        const double r = p->ratio - model;
        rss.add(r * r);
    }
    fit.residual_rms = std::sqrt(rss.value() / pts.size());
    return fit;
}

DeviationFit fit_deviation(std::span<const RatioPoint> series) {
    const auto pts = usable_points(series);
    if (pts.size() < 5)
        throw std::invalid_argument("fit_deviation: need at least 5 usable points");

    std::vector<std::pair<double, double>> data;
    data.reserve(pts.size());
    for (const auto* p : pts)
        data.emplace_back(p->temperature,
                          p->delta_num / (p->temperature * p->temperature));
    const auto beta = weighted_basis_fit(data);

    DeviationFit fit;
    fit.d1 = beta[0];
    fit.d2 = fit.d1 != 0.0 ? -beta[1] / fit.d1 : 0.0;
    fit.d3 = beta[2];
    fit.window_lo = pts.front()->temperature;
    fit.window_hi = pts.back()->temperature;
    return fit;
}

NernstReport nernst_verdict(const dispersion::DispersionModel& model,
                            const lifshitz::Geometry& geom,
                            const VerdictConfig& config) {
    NernstReport rep;

    const auto probes = dispersion::default_zero_mode_probes(model);
    rep.zero_mode = dispersion::te_zero_mode_condition(model, probes);
    rep.zero_mode_ok = rep.zero_mode.drude_like;

    const auto* drude = std::get_if<dispersion::DrudeParameters>(&model);
    if (!rep.zero_mode_ok || !drude) {
        rep.pass = false;
        rep.summary = rep.zero_mode_ok
                          ? "zero-mode condition holds but the model is not "
                            "Drude; low-T scans not applicable"
                          : "TE zero mode survives: a linear-in-T free energy "
                            "term persists and the entropy cannot vanish at T=0";
        return rep;
    }

    const double c1 = asymptotics::leading_coefficient(*drude);
    rep.entropy_checked = true;
    rep.entropy_ok = true;
    for (double t : config.entropy_temperatures_K) {
        lifshitz::SumOptions sum = config.sum;
        const double s = lifshitz::entropy(model, geom, t, 0.0, sum);
        const double bound = config.entropy_bound_factor * c1 * t;
        rep.entropy_temperatures.push_back(t);
        rep.entropy_values.push_back(s);
        rep.entropy_bounds.push_back(bound);
        if (!(std::abs(s) <= bound)) rep.entropy_ok = false;
    }

    RatioOptions ropts;
    ropts.delta = config.delta;
    const std::vector<double> grid = config.ratio_temperatures_K.empty()
                                         ? log_spaced(0.05, 1.0, 12)
                                         : config.ratio_temperatures_K;
    rep.ratio = ratio_series(model, geom, grid, ropts);
    rep.fit = fit_low_t(rep.ratio);
    rep.fit_ok = std::abs(rep.fit->intercept) < config.intercept_threshold &&
                 std::abs(rep.fit->sqrt_coeff) < config.sqrt_coeff_threshold &&
                 std::isfinite(rep.fit->slope);

    rep.pass = rep.zero_mode_ok && rep.entropy_ok && rep.fit_ok;
    rep.summary = rep.pass
                      ? "entropy extrapolates to zero at T = 0: the thermal "
                        "deviation carries no constant or sqrt(T) component"
                      : "low-temperature scans failed one of the gates";
    return rep;
}

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}
} // namespace

std::string NernstReport::render() const {
    std::ostringstream os;
    os << "Nernst consistency report\n";
    os << "  verdict: " << (pass ? "PASS" : "FAIL") << "\n";
    os << "  TE zero-mode suppressed: " << (zero_mode_ok ? "yes" : "NO") << "\n";
    os << "  zero-mode diagnostics zeta^2(eps-1):";
    for (double d : zero_mode.diagnostics) os << " " << fmt(d);
    os << "\n";
    if (entropy_checked) {
        os << "  entropy scan (|S| vs bound):\n";
        for (size_t i = 0; i < entropy_temperatures.size(); ++i)
            os << "    T = " << entropy_temperatures[i]
               << " K: S = " << fmt(entropy_values[i]) << " J/(m^2 K), bound "
               << fmt(entropy_bounds[i])
               << (std::abs(entropy_values[i]) <= entropy_bounds[i] ? " ok"
                                                                    : " EXCEEDED")
               << "\n";
    }
    if (fit) {
        os << "  ratio fit over [" << fit->window_lo << ", " << fit->window_hi
           << "] K (" << fit->points_used << " points):\n";
        os << "    intercept   = " << fmt(fit->intercept) << "\n";
        os << "    sqrt(T) coeff = " << fmt(fit->sqrt_coeff) << " K^-1/2\n";
        os << "    T slope     = " << fmt(fit->slope) << " 1/K\n";
        os << "    residual rms = " << fmt(fit->residual_rms) << "\n";
    }
    os << "  " << summary << "\n";
    return os.str();
}

std::string NernstReport::key_value_block() const {
    std::ostringstream os;
    os << "verdict = " << (pass ? "PASS" : "FAIL") << "\n";
    os << "zero_mode_ok = " << (zero_mode_ok ? 1 : 0) << "\n";
    os << "entropy_ok = " << (entropy_checked ? (entropy_ok ? 1 : 0) : -1) << "\n";
    os << "fit_ok = " << (fit ? (fit_ok ? 1 : 0) : -1) << "\n";
    if (fit) {
        os << "fit_intercept = " << fmt(fit->intercept) << "\n";
        os << "fit_sqrt_coeff = " << fmt(fit->sqrt_coeff) << "\n";
        os << "fit_slope = " << fmt(fit->slope) << "\n";
        os << "fit_residual_rms = " << fmt(fit->residual_rms) << "\n";
    }
    return os.str();
}

} // namespace casimir::analysis
