// config.hpp — run configuration for the hetspec command-line tool.
#pragma once

#include <string>
#include <vector>

#include "hetspec/cooling.hpp"
#include "hetspec/montecarlo.hpp"
#include "hetspec/params.hpp"

namespace hetspec::cli {

struct CoolingSweep {
    double delta_min{-5.0};   // units of kappa
    double delta_max{-0.01};
    std::size_t delta_points{40};
    double ratio_min{10.0};   // target gamma_m/gamma_m0
    double ratio_max{1e4};
    std::size_t ratio_points{30};
};

struct GridConfig {
    std::size_t points{2001};
    double margin{25.0};           // window half-span in gamma_m around omega_m
    double window_halfwidth{10.0}; // sideband extraction half-width
    double Q_min{0.01};
    double Q_max{100.0};
    std::size_t Q_points{400};
};

struct RunConfig {
    SystemParams params;        // normalized to gamma_m-units after parsing
    bool force{false};
    std::string scenario{"default"};
    GridConfig grids;
    McOptions mc;
    CoolingParams cooling;
    CoolingSweep sweep;
    double cooling_p_probe{0.0};
    std::string out_dir{"out"};
    std::vector<std::string> formats{"csv"};
};

// Strict parser: unknown keys are rejected, units must be declared.
// Throws ConfigError on any structural or type problem.
RunConfig load_config(const std::string& path);

// Serialized normalized config; reloading reproduces the run byte-for-byte.
std::string manifest_json(const RunConfig& cfg);

} // namespace hetspec::cli
