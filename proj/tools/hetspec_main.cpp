// hetspec — heterodyne spectra, thermometry and cooling limits for a
// linearized optomechanical system, with a stochastic time-domain oracle.
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "../src/cli/commands.hpp"

namespace {

// 0 ok, 2 config error, 3 regime violation, 4 numerical failure
int classify(const hetspec::Error& e) {
    if (dynamic_cast<const hetspec::ConfigError*>(&e)) return 2;
    if (dynamic_cast<const hetspec::NonPositiveRate*>(&e) ||
        dynamic_cast<const hetspec::RegimeViolation*>(&e) ||
        dynamic_cast<const hetspec::DetuningNotZeroForClosedForm*>(&e) ||
        dynamic_cast<const hetspec::NonPositiveTemperature*>(&e) ||
        dynamic_cast<const hetspec::UnsupportedCombo*>(&e) ||
        dynamic_cast<const hetspec::BackactionTooLarge*>(&e))
        return 3;
    return 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heterodyne optomechanics spectra and Monte Carlo oracle"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool force = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")
            ->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--seed", seed, "Monte Carlo master seed (overrides config)")
            ->each([&](const std::string&) { has_seed = true; });
        sub->add_flag("--force", force, "skip regime guards");
    };
    CLI::App* spectrum = app.add_subcommand("spectrum", "closed-form sideband spectra");
    CLI::App* simulate = app.add_subcommand("simulate", "stochastic oracle run");
    CLI::App* cooling = app.add_subcommand("cooling", "cooling sweep and limits");
    CLI::App* bluecurve = app.add_subcommand("bluecurve", "blue height vs Q curves");
    for (CLI::App* sub : {spectrum, simulate, cooling, bluecurve}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        hetspec::cli::RunConfig cfg = hetspec::cli::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (has_seed) cfg.mc.seed = seed;
        if (force) cfg.force = true;

        if (spectrum->parsed()) hetspec::cli::cmd_spectrum(cfg);
        if (simulate->parsed()) hetspec::cli::cmd_simulate(cfg);
        if (cooling->parsed()) hetspec::cli::cmd_cooling(cfg);
        if (bluecurve->parsed()) hetspec::cli::cmd_bluecurve(cfg);
    } catch (const hetspec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
