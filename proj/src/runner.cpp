#include "casimir/runner.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "casimir/analysis.hpp"
#include "casimir/asymptotics.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/reflection.hpp"
#include "casimir/special_functions.hpp"

namespace casimir::runner {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

// Reproducibility contract: reruns with identical config produce
// byte-identical files, so the header carries config and constants but
// nothing volatile (no timestamps, no paths outside the config).
void write_header(std::ostream& os, const RunConfig& cfg,
                  const std::string& command) {
    os << "# casimir " << constants::version << " " << command << "\n";
    os << "# hbar_J_s = " << fmt(constants::hbar)
       << "\n# k_J_K = " << fmt(constants::k_B)
       << "\n# c_m_s = " << fmt(constants::c)
       << "\n# eV_J = " << fmt(constants::eV) << "\n";
    os << "# model = " << cfg.model << "\n# preset = " << cfg.preset << "\n";
    const auto drude = preset_parameters(cfg);
    os << "# omega_p_rad_s = " << fmt(drude.omega_p)
       << "\n# nu_rad_s = " << fmt(drude.nu) << "\n";
    os << "# gap_m = " << fmt(cfg.gap_m) << "\n";
    os << "# tmin_K = " << fmt(cfg.tmin_K) << "\n# tmax_K = " << fmt(cfg.tmax_K)
       << "\n# tcount = " << cfg.tcount << "\n# tspacing = " << cfg.tspacing
       << "\n";
    os << "# tol_inner = " << fmt(cfg.tol_inner)
       << "\n# tol_sum = " << fmt(cfg.tol_sum)
       << "\n# delta_tol = " << fmt(cfg.delta_tol) << "\n";
    os << "# deep = " << (cfg.deep ? 1 : 0) << "\n";
    // worker count deliberately omitted: it cannot affect the data, and
    // files must be byte-identical for any worker count
}

std::vector<double> temperature_grid(const RunConfig& cfg) {
    std::vector<double> t;
    if (cfg.tcount == 1) {
        t.push_back(cfg.tmin_K);
        return t;
    }
    if (cfg.tspacing == "log") {
        return analysis::log_spaced(cfg.tmin_K, cfg.tmax_K, cfg.tcount);
    }
    const double step = (cfg.tmax_K - cfg.tmin_K) / (cfg.tcount - 1);
    for (int i = 0; i < cfg.tcount; ++i) t.push_back(cfg.tmin_K + step * i);
    return t;
}

std::filesystem::path prepare_out(const RunConfig& cfg,
                                  const std::string& name) {
    std::filesystem::create_directories(cfg.out_dir);
    return std::filesystem::path(cfg.out_dir) / name;
}

} // namespace

double RunConfig::parse_gap(const std::string& text) {
    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse gap '" + text + "'");
    }
    std::string unit = text.substr(pos);
    while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front())))
        unit.erase(unit.begin());
    double scale = 1.0;
    if (unit.empty() || unit == "m")
        scale = 1.0;
    else if (unit == "um")
        scale = 1e-6;
    else if (unit == "nm")
        scale = 1e-9;
    else if (unit == "mm")
        scale = 1e-3;
    else
        throw ConfigError("unknown gap unit '" + unit + "' (use m, mm, um, nm)");
    return value * scale;
}

void RunConfig::validate() const {
    auto tol_ok = [](double t) { return t > 0.0 && t < 1e-2; };
    if (!tol_ok(tol_inner) || !tol_ok(tol_sum) || !tol_ok(delta_tol))
        throw ConfigError("tolerances must lie in (0, 1e-2)");
    if (!(gap_m > 0.0)) throw ConfigError("gap must be positive");
    if (m_cap < 1) throw ConfigError("m_cap must be positive");
    if (tcount < 1) throw ConfigError("temperature grid is empty");
    if (tspacing != "log" && tspacing != "linear")
        throw ConfigError("tspacing must be 'log' or 'linear'");
    if (!(tmax_K >= tmin_K)) throw ConfigError("tmax must be >= tmin");
    if (tspacing == "log" && !(tmin_K > 0.0))
        throw ConfigError("log spacing requires tmin > 0");
    if (tmin_K < 0.0) throw ConfigError("temperatures must be >= 0");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (model != "drude" && model != "plasma" && model != "ideal" &&
        model.rfind("table:", 0) != 0)
        throw ConfigError("model must be drude|plasma|ideal|table:<path>");
    if (preset != "gold-2" && preset != "gold-1")
        throw ConfigError("preset must be gold-2 or gold-1");
    if (omega_p_eV < 0.0) throw ConfigError("omega_p must be positive");
    if (!(zeta_min > 0.0 && zeta_max > zeta_min) || zeta_count < 1)
        throw ConfigError("bad reflection zeta grid");
    if (!(kperp_min > 0.0 && kperp_max > kperp_min) || kperp_count < 1)
        throw ConfigError("bad reflection k_perp grid");
}

void load_config_file(const std::filesystem::path& file, RunConfig& cfg) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());

    auto as_double = [](const std::string& k, const std::string& v) {
        try {
            size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + k + "': cannot parse '" + v + "'");
        }
    };
    auto as_int = [&](const std::string& k, const std::string& v) {
        const double x = as_double(k, v);
        return static_cast<long>(x);
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string()
                                          : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        for (auto& ch : key)
            if (ch == '_') ch = '-';
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");

        if (key == "model")
            cfg.model = value;
        else if (key == "preset")
            cfg.preset = value;
        else if (key == "omega-p")
            cfg.omega_p_eV = as_double(key, value);
        else if (key == "nu")
            cfg.nu_meV = as_double(key, value);
        else if (key == "gap")
            cfg.gap_m = RunConfig::parse_gap(value);
        else if (key == "tmin")
            cfg.tmin_K = as_double(key, value);
        else if (key == "tmax")
            cfg.tmax_K = as_double(key, value);
        else if (key == "tcount")
            cfg.tcount = static_cast<int>(as_int(key, value));
        else if (key == "tspacing")
            cfg.tspacing = value;
        else if (key == "tol-inner")
            cfg.tol_inner = as_double(key, value);
        else if (key == "tol-sum")
            cfg.tol_sum = as_double(key, value);
        else if (key == "delta-tol")
            cfg.delta_tol = as_double(key, value);
        else if (key == "deep")
            cfg.deep = value == "1" || value == "true";
        else if (key == "out")
            cfg.out_dir = value;
        else if (key == "workers")
            cfg.workers = static_cast<int>(as_int(key, value));
        else if (key == "zeta-min")
            cfg.zeta_min = as_double(key, value);
        else if (key == "zeta-max")
            cfg.zeta_max = as_double(key, value);
        else if (key == "zeta-count")
            cfg.zeta_count = static_cast<int>(as_int(key, value));
        else if (key == "kperp-min")
            cfg.kperp_min = as_double(key, value);
        else if (key == "kperp-max")
            cfg.kperp_max = as_double(key, value);
        else if (key == "kperp-count")
            cfg.kperp_count = static_cast<int>(as_int(key, value));
        else
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
    }
}

dispersion::DrudeParameters preset_parameters(const RunConfig& cfg) {
    dispersion::DrudeParameters p;
    if (cfg.preset == "gold-1") {
        p.omega_p = constants::omega_from_eV(9.0);
        p.nu = constants::omega_from_meV(35.0);
        p.provenance = "gold-1 preset (9.0 eV / 35 meV)";
    } else {
        p.omega_p = constants::omega_from_eV(9.03);
        p.nu = constants::omega_from_meV(34.5);
        p.provenance = "gold-2 preset (9.03 eV / 34.5 meV)";
    }
    if (cfg.omega_p_eV > 0.0) p.omega_p = constants::omega_from_eV(cfg.omega_p_eV);
    if (cfg.nu_meV >= 0.0) p.nu = constants::omega_from_meV(cfg.nu_meV);
    return p;
}

dispersion::DispersionModel make_model(const RunConfig& cfg) {
    const auto drude = preset_parameters(cfg);
    if (cfg.model == "drude") return drude;
    if (cfg.model == "plasma")
        return dispersion::PlasmaParameters{drude.omega_p};
    if (cfg.model == "ideal") return dispersion::IdealMetal{};
    const std::string path = cfg.model.substr(6);
    const auto loss = dispersion::LossTable::load(path);
    const double lo = std::max(loss.omega.front(), 1e10);
    const double hi = std::min(loss.omega.back(), 1e17);
    if (!(hi > lo))
        throw ConfigError("loss table does not cover a usable frequency band");
    return dispersion::tabulate_from_loss_data(loss, lo, hi, 240);
}

std::vector<std::filesystem::path> cmd_sweep(const RunConfig& cfg) {
    cfg.validate();
    const auto model = make_model(cfg);
    const lifshitz::Geometry geom{cfg.gap_m};

    const auto path = prepare_out(cfg, "sweep.csv");
    std::ofstream os(path);
    write_header(os, cfg, "sweep");
    os << "T_K,F_TE_J_m2,F_TM_J_m2,F_total_J_m2,m_max,tol_achieved\n";

    lifshitz::T0Options t0opts;
    t0opts.inner_rel_tol = std::min(cfg.tol_inner, 1e-11);
    const auto t0 = lifshitz::free_energy_t0(model, geom, t0opts);
    os << fmt(0.0) << "," << fmt(t0.f_te) << "," << fmt(t0.f_tm) << ","
       << fmt(t0.f_total) << ",0," << fmt(t0opts.outer_rel_tol) << "\n";

    lifshitz::SumOptions opts;
    opts.inner_rel_tol = cfg.tol_inner;
    opts.sum_rel_tol = cfg.tol_sum;
    opts.m_cap = cfg.m_cap;
    opts.workers = cfg.workers;
    opts.keep_term_magnitudes = false;

    try {
        for (double t : temperature_grid(cfg)) {
            if (t == 0.0) continue; // anchor row already written
            const auto f = lifshitz::free_energy(model, geom, t, opts);
            os << fmt(t) << "," << fmt(f.f_te) << "," << fmt(f.f_tm) << ","
               << fmt(f.f_total) << "," << f.m_max << ","
               << fmt(f.achieved_rel_tol) << "\n";
        }
    } catch (const NumericalError& e) {
        os << "# FAILED: " << e.what() << "\n";
        os.flush();
        throw;
    }
    return {path};
}

std::vector<std::filesystem::path> cmd_t0(const RunConfig& cfg) {
    cfg.validate();
    const auto model = make_model(cfg);
    const lifshitz::Geometry geom{cfg.gap_m};
    lifshitz::T0Options opts;
    opts.inner_rel_tol = std::min(cfg.tol_inner, 1e-11);
    const auto t0 = lifshitz::free_energy_t0(model, geom, opts);

    const auto path = prepare_out(cfg, "t0.txt");
    std::ofstream os(path);
    write_header(os, cfg, "t0");
    os << "F_TE_J_m2 = " << fmt(t0.f_te) << "\n";
    os << "F_TM_J_m2 = " << fmt(t0.f_tm) << "\n";
    os << "F_total_J_m2 = " << fmt(t0.f_total) << "\n";
    return {path};
}

std::vector<std::filesystem::path> cmd_asymptote(const RunConfig& cfg) {
    cfg.validate();
    const auto drude = preset_parameters(cfg);
    if (!(drude.nu > 0.0))
        throw ConfigError("asymptote: requires a dissipative Drude parameter set");

    const auto rep =
        asymptotics::coefficient_report(drude, cfg.gap_m, cfg.tmin_K);

    const auto path = prepare_out(cfg, "asymptote.txt");
    std::ofstream os(path);
    write_header(os, cfg, "asymptote");
    os << "D_rad_s = " << fmt(dispersion::low_frequency_strength(drude)) << "\n";
    os << "C_at_tmin_1_m2 = " << fmt(rep.scale_c) << "\n";
    os << "C_per_K_1_m2K = " << fmt(asymptotics::scale_constant_slope(drude)) << "\n";
    os << "g_prime_0 = " << fmt(rep.g_prime_0) << "\n";
    os << "I = " << fmt(rep.weighted_integral) << "\n";
    os << "zeta_minus_3_2 = " << fmt(rep.zeta_neg_3_2) << "\n";
    os << "C1_J_m2K2 = " << fmt(rep.c1) << "\n";
    os << "C2_euler_maclaurin_K_m12 = " << fmt(rep.c2_euler_maclaurin) << "\n";
    os << "C2_exact_zeta_K_m12 = " << fmt(rep.c2_exact_zeta) << "\n";
    os << "pade_deltaF_at_tmin_J_m2 = " << fmt(rep.pade_at_T) << "\n";
    os << "validity_a_sqrtC_at_tmin = " << fmt(rep.validity) << "\n";
    os << "validity_a_sqrtC_at_tmax = "
       << fmt(asymptotics::validity_scale(drude, cfg.gap_m, cfg.tmax_K)) << "\n";
    os << "# the T^2 law needs a sqrt(C) << 1\n";
    return {path};
}

std::vector<std::filesystem::path> cmd_ratio(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.model != "drude")
        throw ConfigError("ratio: the deviation study requires the Drude model");
    const auto model = make_model(cfg);
    const lifshitz::Geometry geom{cfg.gap_m};

    analysis::VerdictConfig vc;
    vc.delta.target_rel_tol = cfg.delta_tol;
    vc.delta.workers = cfg.workers;
    vc.sum.workers = cfg.workers;
    vc.sum.inner_rel_tol = cfg.tol_inner;
    vc.sum.sum_rel_tol = cfg.tol_sum;
    double lo = cfg.tmin_K;
    int count = cfg.tcount;
    if (cfg.deep) {
        lo = std::min(lo, 0.008);
        count = std::max(count, 16);
        std::fprintf(stderr,
                     "ratio --deep: extending the grid to %.3f K; the term "
                     "count grows like 1/T, expect a long run\n",
                     lo);
    }
    vc.ratio_temperatures_K = analysis::log_spaced(lo, cfg.tmax_K, count);

    const auto report = analysis::nernst_verdict(model, geom, vc);

    const auto csv_path = prepare_out(cfg, "ratio.csv");
    {
        std::ofstream os(csv_path);
        write_header(os, cfg, "ratio");
        os << "T_K,deltaF_num_J_m2,deltaF_th_J_m2,R\n";
        for (const auto& pt : report.ratio) {
            os << fmt(pt.temperature) << "," << fmt(pt.delta_num) << ","
               << fmt(pt.delta_th) << "," << fmt(pt.ratio);
            if (!pt.note.empty()) os << ",# " << pt.note;
            os << "\n";
        }
    }
    const auto verdict_path = prepare_out(cfg, "verdict.txt");
    {
        std::ofstream os(verdict_path);
        write_header(os, cfg, "ratio");
        os << report.render() << "\n[verdict]\n" << report.key_value_block();
    }
    return {csv_path, verdict_path};
}

std::vector<std::filesystem::path> cmd_reflection(const RunConfig& cfg) {
    cfg.validate();
    const auto model = make_model(cfg);

    auto grid = [](double lo, double hi, int n) {
        std::vector<double> g;
        if (n == 1) {
            g.push_back(lo);
            return g;
        }
        const double ratio = std::pow(hi / lo, 1.0 / (n - 1));
        double v = lo;
        for (int i = 0; i < n; ++i) {
            g.push_back(v);
            v *= ratio;
        }
        g.back() = hi;
        return g;
    };
    const auto zg = grid(cfg.zeta_min, cfg.zeta_max, cfg.zeta_count);
    const auto kg = grid(cfg.kperp_min, cfg.kperp_max, cfg.kperp_count);
    const auto surf = reflection::reflection_surface(model, zg, kg);

    const auto path = prepare_out(cfg, "reflection.csv");
    std::ofstream os(path);
    write_header(os, cfg, "reflection");
    os << "zeta_rad_s,kperp_rad_m,A,B\n";
    for (size_t iz = 0; iz < surf.zeta.size(); ++iz)
        for (size_t ik = 0; ik < surf.k_perp.size(); ++ik) {
            const auto& ab = surf.at(iz, ik);
            os << fmt(surf.zeta[iz]) << "," << fmt(surf.k_perp[ik]) << ","
               << fmt(ab.A) << "," << fmt(ab.B) << "\n";
        }
    return {path};
}

} // namespace casimir::runner
