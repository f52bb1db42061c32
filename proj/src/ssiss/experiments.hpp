#pragma once

#include <string>
#include <vector>

#include "grid.hpp"
#include "report.hpp"

namespace ssiss {

struct PulseParams {
    double delta_t = 0.2;
    int n = 16;
    SequenceKind kind = SequenceKind::ExperimentalA;
    int k_period = 1;
};

struct GridParams {
    int n_points = 2048;
    double dt = 0.005;
    double x_min = 0.0;  // used only when auto_box == false
    double x_max = 0.0;
    bool auto_box = true;
};

struct ExperimentConfig {
    std::string scenario = "oracle-validate";
    PhysicalConstants physics;
    PotentialSpec potential;
    PhamdownBeams beams;
    PulseParams pulse;
    GridParams grid;
    std::vector<std::pair<std::string, std::vector<double>>> sweep;
    long long seed = 1;
    std::string output_dir = "out";

    static std::vector<std::string> scenarios();
    static ExperimentConfig defaults(const std::string& scenario);
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
    // dotted-path override, e.g. "pulse.delta_t=0.4" split by the caller
    void set_value(const std::string& path, const std::string& value);
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace ssiss
