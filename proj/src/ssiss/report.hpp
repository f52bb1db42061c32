#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "json.hpp"

namespace ssiss {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double stderr_slope = 0.0;
};

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct ExperimentReport {
    nlohmann::ordered_json config_echo;
    std::vector<Table> tables;
    std::vector<BoundReport> bound_reports;
    std::map<std::string, FitResult> fits;
    std::map<std::string, double> scalars;
    std::map<std::string, bool> verdicts;
    std::string timestamp;  // excluded from determinism comparisons

    bool all_pass() const;
    nlohmann::ordered_json to_json() const;
};

// formats subset of {"json","csv","svg"}; returns written paths.
std::vector<std::string> emit_report(const ExperimentReport& report,
                                     const std::set<std::string>& formats,
                                     const std::string& out_dir);

}  // namespace ssiss
