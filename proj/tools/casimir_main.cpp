// casimir: thermal Casimir free energy between metal half-spaces.
//
// Subcommands write reproducible data files: sweep (free energy vs T),
// t0 (zero-temperature double integral), asymptote (low-T coefficients),
// ratio (numerical vs analytic TE deviation + Nernst verdict),
// reflection (A/B surface data).

#include <cstdio>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casimir/errors.hpp"
#include "casimir/runner.hpp"

using casimir::runner::RunConfig;

namespace {

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& gap_text,
                      std::string& config_path) {
    cmd->add_option("--config", config_path,
                    "flat key = value file, '#' comments; flags override");
    cmd->add_option("--model", cfg.model,
                    "drude | plasma | ideal | table:<path>");
    cmd->add_option("--preset", cfg.preset,
                    "gold-2 (9.03 eV/34.5 meV) or gold-1 (9.0 eV/35 meV)");
    cmd->add_option("--omega-p", cfg.omega_p_eV, "plasma frequency override, eV");
    cmd->add_option("--nu", cfg.nu_meV, "relaxation frequency override, meV");
    cmd->add_option("--gap", gap_text, "plate separation, e.g. 1um, 1000nm, 1e-6m");
    cmd->add_option("--tmin", cfg.tmin_K, "lowest temperature, K");
    cmd->add_option("--tmax", cfg.tmax_K, "highest temperature, K");
    cmd->add_option("--tcount", cfg.tcount, "number of temperature points");
    cmd->add_option("--tspacing", cfg.tspacing, "log | linear");
    cmd->add_option("--tol-inner", cfg.tol_inner, "per-mode quadrature tolerance");
    cmd->add_option("--tol-sum", cfg.tol_sum, "Matsubara truncation tolerance");
    cmd->add_option("--delta-tol", cfg.delta_tol, "target tolerance on Delta F");
    cmd->add_flag("--deep", cfg.deep, "extend the ratio grid down to 0.008 K");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--workers", cfg.workers, "worker threads");
    cmd->add_option("--zeta-min", cfg.zeta_min, "reflection grid: lowest zeta, rad/s");
    cmd->add_option("--zeta-max", cfg.zeta_max, "reflection grid: highest zeta, rad/s");
    cmd->add_option("--zeta-count", cfg.zeta_count, "reflection grid: zeta points");
    cmd->add_option("--kperp-min", cfg.kperp_min, "reflection grid: lowest k_perp, 1/m");
    cmd->add_option("--kperp-max", cfg.kperp_max, "reflection grid: highest k_perp, 1/m");
    cmd->add_option("--kperp-count", cfg.kperp_count, "reflection grid: k_perp points");
}

// The config file must be applied before the flags so that flags override
// it; scan for --config ahead of the CLI parse.
std::string find_config_arg(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc)
            return argv[i + 1];
        if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
    }
    return {};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermal Casimir free energy between metal half-spaces"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string gap_text;    // empty = keep cfg.gap_m (default or config file)
    std::string config_path; // registered for help/validation only

    auto* sweep = app.add_subcommand("sweep", "free energy over a temperature grid");
    auto* t0 = app.add_subcommand("t0", "zero-temperature free energy");
    auto* asym = app.add_subcommand("asymptote", "low-temperature coefficient report");
    auto* ratio = app.add_subcommand("ratio", "numerical vs analytic TE deviation");
    auto* refl = app.add_subcommand("reflection", "reflection coefficient surface");
    for (auto* cmd : {sweep, t0, asym, ratio, refl})
        add_common_flags(cmd, cfg, gap_text, config_path);

    try {
        const std::string cfg_file = find_config_arg(argc, argv);
        if (!cfg_file.empty()) casimir::runner::load_config_file(cfg_file, cfg);

        app.parse(argc, argv);

        if (!gap_text.empty()) cfg.gap_m = RunConfig::parse_gap(gap_text);
        std::vector<std::filesystem::path> written;
        if (sweep->parsed()) written = casimir::runner::cmd_sweep(cfg);
        if (t0->parsed()) written = casimir::runner::cmd_t0(cfg);
        if (asym->parsed()) written = casimir::runner::cmd_asymptote(cfg);
        if (ratio->parsed()) written = casimir::runner::cmd_ratio(cfg);
        if (refl->parsed()) written = casimir::runner::cmd_reflection(cfg);
        for (const auto& p : written)
            std::printf("wrote %s\n", p.string().c_str());
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    } catch (const casimir::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        // e.g. a loss table too narrow for the requested temperatures
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const casimir::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s (partial %.6e, err %.3e)\n",
                     e.what(), e.partial_value(), e.achieved_error());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
