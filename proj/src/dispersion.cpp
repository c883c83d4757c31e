#include "casimir/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/numerics.hpp"

namespace casimir::dispersion {

namespace {

// Monotone cubic (Fritsch-Carlson) slopes; shape preserving, so
// interpolated values never leave the local data range.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
    const size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return d;
    }
    std::vector<double> h(n - 1), delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& d, double xq) {
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    size_t i = (it == x.begin()) ? 0 : static_cast<size_t>(it - x.begin()) - 1;
    if (i >= x.size() - 1) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double t = (xq - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
}

struct Pchip {
    std::vector<double> x, y, d;
    double operator()(double xq) const { return pchip_eval(x, y, d, xq); }
};

Pchip make_pchip(std::vector<double> x, std::vector<double> y) {
    auto d = pchip_slopes(x, y);
    return {std::move(x), std::move(y), std::move(d)};
}

// Least-squares power law y = A x^(-s) through (x_i, y_i), all positive.
struct PowerLaw {
    double amplitude = 0.0;
    double exponent = 0.0; // the s in x^(-s)
    bool valid = false;
};

PowerLaw fit_power_law(std::span<const double> x, std::span<const double> y) {
    PowerLaw fit;
    if (x.size() < 2) return fit;
    for (double v : y)
        if (!(v > 0.0)) return fit;
    double sl = 0, sv = 0, sll = 0, slv = 0;
    const auto n = static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double l = std::log(x[i]);
        const double v = std::log(y[i]);
        sl += l;
        sv += v;
        sll += l * l;
        slv += l * v;
    }
    const double denom = n * sll - sl * sl;
    if (denom == 0.0) return fit;
    const double slope = (n * slv - sl * sv) / denom;
    const double inter = (sv - slope * sl) / n;
    fit.exponent = -slope;
    fit.amplitude = std::exp(inter);
    fit.valid = true;
    return fit;
}

} // namespace

double DrudeParameters::plasma_wavelength() const {
    return 2.0 * std::numbers::pi * constants::c / omega_p;
}

double low_frequency_strength(const DrudeParameters& p) {
    if (!(p.omega_p > 0.0))
        throw std::domain_error("low_frequency_strength: omega_p must be positive");
    if (!(p.nu > 0.0))
        throw std::domain_error(
            "low_frequency_strength: nu = 0 degenerates to the plasma model");
    return p.omega_p * p.omega_p / p.nu;
}

PermittivityTable PermittivityTable::make(std::vector<double> zeta,
                                          std::vector<double> eps) {
    if (zeta.size() != eps.size())
        throw std::invalid_argument("permittivity table: column size mismatch");
    if (zeta.size() < 2)
        throw std::invalid_argument("permittivity table: need at least two samples");
    for (size_t i = 0; i < zeta.size(); ++i) {
        if (!(zeta[i] > 0.0))
            throw std::invalid_argument("permittivity table: zeta must be positive");
        if (i > 0 && !(zeta[i] > zeta[i - 1]))
            throw std::invalid_argument(
                "permittivity table: zeta grid must be strictly increasing");
        if (!(eps[i] >= 1.0))
            throw std::invalid_argument("permittivity table: eps must be >= 1");
    }
    PermittivityTable t;
    t.zeta = std::move(zeta);
    t.eps = std::move(eps);
    return t;
}

double eval_permittivity(const DispersionModel& model, double zeta) {
    struct Visitor {
        double zeta;
        double operator()(const DrudeParameters& p) const {
            if (!(zeta > 0.0))
                throw std::domain_error("eval_permittivity: Drude requires zeta > 0");
            return 1.0 + p.omega_p * p.omega_p / (zeta * (zeta + p.nu));
        }
        double operator()(const PlasmaParameters& p) const {
            if (!(zeta > 0.0))
                throw std::domain_error("eval_permittivity: plasma requires zeta > 0");
            const double r = p.omega_p / zeta;
            return 1.0 + r * r;
        }
        double operator()(const IdealMetal&) const {
            return std::numeric_limits<double>::infinity();
        }
        double operator()(const PermittivityTable& t) const {
            if (!(zeta >= t.zeta.front() && zeta <= t.zeta.back()))
                throw std::out_of_range(
                    "eval_permittivity: zeta outside tabulated range");
            const auto d = pchip_slopes(t.zeta, t.eps);
            return pchip_eval(t.zeta, t.eps, d, zeta);
        }
    };
    return std::visit(Visitor{zeta}, model);
}

ZeroModeCheck te_zero_mode_condition(const DispersionModel& model,
                                     std::span<const double> probe_zetas) {
    if (probe_zetas.size() < 2)
        throw std::invalid_argument("te_zero_mode_condition: need >= 2 probes");
    for (size_t i = 0; i < probe_zetas.size(); ++i) {
        if (!(probe_zetas[i] > 0.0))
            throw std::invalid_argument("te_zero_mode_condition: probes must be positive");
        if (i > 0 && !(probe_zetas[i] < probe_zetas[i - 1]))
            throw std::invalid_argument(
                "te_zero_mode_condition: probes must decrease toward 0");
    }

    ZeroModeCheck check;
    check.diagnostics.reserve(probe_zetas.size());
    for (double z : probe_zetas) {
        const double eps = eval_permittivity(model, z);
        check.diagnostics.push_back(z * z * (eps - 1.0));
    }

    bool decreasing = true;
    for (size_t i = 1; i < check.diagnostics.size(); ++i) {
        if (!(check.diagnostics[i] < check.diagnostics[i - 1]) ||
            !std::isfinite(check.diagnostics[i - 1]))
            decreasing = false;
    }
    const double first = check.diagnostics.front();
    const double last = check.diagnostics.back();
    check.drude_like =
        decreasing && std::isfinite(first) && last <= 0.5 * first;
    return check;
}

std::vector<double> default_zero_mode_probes(const DispersionModel& model,
                                             int count) {
    if (count < 2) count = 2;
    double hi = 0.0, lo = 0.0;
    if (const auto* d = std::get_if<DrudeParameters>(&model)) {
        hi = d->nu > 0.0 ? d->nu : d->omega_p * 1e-3;
        lo = hi * 1e-6;
    } else if (const auto* p = std::get_if<PlasmaParameters>(&model)) {
        hi = p->omega_p * 1e-1;
        lo = hi * 1e-6;
    } else if (const auto* t = std::get_if<PermittivityTable>(&model)) {
        hi = std::sqrt(t->zeta.front() * t->zeta.back());
        lo = t->zeta.front();
    } else {
        hi = 1e15;
        lo = 1e9;
    }
    std::vector<double> probes(static_cast<size_t>(count));
    const double ratio = std::pow(lo / hi, 1.0 / (count - 1));
    double z = hi;
    for (auto& p : probes) {
        p = z;
        z *= ratio;
    }
    return probes;
}

LossTable LossTable::make(std::vector<double> omega,
                          std::vector<double> eps_im) {
    if (omega.size() != eps_im.size())
        throw std::invalid_argument("loss table: column size mismatch");
    if (omega.size() < 2)
        throw std::invalid_argument("loss table: need at least two samples");
    for (size_t i = 0; i < omega.size(); ++i) {
        if (!(omega[i] > 0.0))
            throw std::invalid_argument("loss table: omega must be positive");
        if (i > 0 && !(omega[i] > omega[i - 1]))
            throw std::invalid_argument("loss table: omega must be strictly increasing");
        if (!(eps_im[i] >= 0.0))
            throw std::invalid_argument("loss table: eps'' must be nonnegative");
    }
    LossTable t;
    t.omega = std::move(omega);
    t.eps_im = std::move(eps_im);
    return t;
}

LossTable LossTable::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::invalid_argument("loss table: cannot open " + file.string());
    std::vector<double> w, e;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double a, b;
        if (!(ss >> a)) continue; // blank or comment-only line
        if (!(ss >> b))
            throw std::invalid_argument("loss table: malformed line " +
                                        std::to_string(lineno) + " in " +
                                        file.string());
        w.push_back(a);
        e.push_back(b);
    }
    return make(std::move(w), std::move(e));
}

double kramers_kronig_imag_axis(const LossTable& table, double zeta) {
    if (!(zeta > 0.0))
        throw std::domain_error("kramers_kronig_imag_axis: zeta must be positive");
    const double w0 = table.omega.front();
    const double wn = table.omega.back();
    if (!(zeta >= w0 && zeta <= wn))
        throw std::out_of_range(
            "kramers_kronig_imag_axis: zeta outside the tabulated coverage");

    const bool all_zero =
        std::all_of(table.eps_im.begin(), table.eps_im.end(),
                    [](double v) { return v == 0.0; });
    if (all_zero) return 1.0;

    // Interpolate eps'' in log-log when possible (loss data spans decades);
    // fall back to a raw-axis fit when zeros are present.
    const bool positive =
        std::all_of(table.eps_im.begin(), table.eps_im.end(),
                    [](double v) { return v > 0.0; });
    Pchip interp;
    if (positive) {
        std::vector<double> lx(table.omega.size()), ly(table.omega.size());
        for (size_t i = 0; i < table.omega.size(); ++i) {
            lx[i] = std::log(table.omega[i]);
            ly[i] = std::log(table.eps_im[i]);
        }
        interp = make_pchip(std::move(lx), std::move(ly));
    } else {
        interp = make_pchip(table.omega, table.eps_im);
    }
    auto eps_here = [&](double w) {
        return positive ? std::exp(interp(std::log(w))) : interp(w);
    };

    // Interior, on the log axis: f(t) = w^2 eps''(w) / (w^2 + zeta^2).
    auto f_log = [&](double t) {
        const double w = std::exp(t);
        return w * w * eps_here(w) / (w * w + zeta * zeta);
    };
    const double lo = std::log(w0), hi = std::log(wn), lz = std::log(zeta);
    num::CompensatedSum acc;
    if (lz > lo + 1e-12 && lz < hi - 1e-12) {
        acc.add(num::integrate(f_log, lo, lz, 1e-8).value);
        acc.add(num::integrate(f_log, lz, hi, 1e-8).value);
    } else {
        acc.add(num::integrate(f_log, lo, hi, 1e-8).value);
    }

    // Pick the indices of one decade at either edge for the power-law fits.
    auto decade = [&](bool head) {
        std::vector<double> xs, ys;
        if (head) {
            for (size_t i = 0; i < table.omega.size() && table.omega[i] <= 10.0 * w0; ++i) {
                xs.push_back(table.omega[i]);
                ys.push_back(table.eps_im[i]);
            }
        } else {
            for (size_t i = 0; i < table.omega.size(); ++i) {
                if (table.omega[i] >= 0.1 * wn) {
                    xs.push_back(table.omega[i]);
                    ys.push_back(table.eps_im[i]);
                }
            }
        }
        return fit_power_law(xs, ys);
    };

    // Head [0, w0]: eps'' ~ A w^-s must have s < 2 for the dispersion
    // integral to converge at zero frequency.
    const PowerLaw head = decade(true);
    if (head.valid) {
        if (head.exponent >= 1.95)
            throw std::invalid_argument(
                "kramers_kronig_imag_axis: loss data rises too steeply toward "
                "zero frequency to extrapolate");
        const double s = head.exponent;
        const double amp = head.amplitude * std::pow(w0, 2.0 - s);
        auto f_head = [&](double r) {
            return amp * std::pow(r, 1.0 - s) /
                   (w0 * w0 * r * r + zeta * zeta);
        };
        const double eps_r = 1e-12;
        acc.add(num::integrate(f_head, eps_r, 1.0, 1e-8).value);
        if (s < 2.0) // closed-form stub below eps_r, where w << zeta
            acc.add(amp * std::pow(eps_r, 2.0 - s) / ((2.0 - s) * zeta * zeta));
    }

    // Tail [wn, inf): on the log axis the extension decays like e^(-s t).
    const PowerLaw tail = decade(false);
    if (tail.valid) {
        if (tail.exponent <= 0.05)
            throw std::invalid_argument(
                "kramers_kronig_imag_axis: loss data does not decay at the "
                "high-frequency end; tail extension impossible");
        const double s = tail.exponent;
        auto f_tail = [&](double t) {
            const double w = wn * std::exp(t);
            return tail.amplitude * std::pow(w, 2.0 - s) / (w * w + zeta * zeta);
        };
        acc.add(num::integrate_decaying(f_tail, 0.0, 1.0 / s, 1e-8).value);
    }

    return 1.0 + 2.0 / std::numbers::pi * acc.value();
}

PermittivityTable tabulate_from_loss_data(const LossTable& table,
                                          double zeta_min, double zeta_max,
                                          int count) {
    if (!(zeta_min > 0.0 && zeta_max > zeta_min) || count < 2)
        throw std::invalid_argument("tabulate_from_loss_data: bad grid arguments");
    std::vector<double> z(static_cast<size_t>(count)), e(static_cast<size_t>(count));
    const double ratio = std::pow(zeta_max / zeta_min, 1.0 / (count - 1));
    double zq = zeta_min;
    for (int i = 0; i < count; ++i) {
        z[static_cast<size_t>(i)] = zq;
        e[static_cast<size_t>(i)] =
            std::max(1.0, kramers_kronig_imag_axis(table, zq));
        zq *= ratio;
    }
    z.back() = zeta_max; // guard against accumulated rounding in the grid
    return PermittivityTable::make(std::move(z), std::move(e));
}

} // namespace casimir::dispersion
