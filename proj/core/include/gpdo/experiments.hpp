#pragma once
//
// Named verification suites. Each suite builds its data from the run config
// (grid + seed), evaluates a list of residuals and compares each with its
// tolerance. Tolerances can be overridden per check name in the config.
//

#include "gpdo/io.hpp"

#include <string>
#include <vector>

namespace gpdo {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    // residuals expected to shrink under grid refinement (affine quadrature error)
    bool convergence = false;
};

struct LevelResult {
    int level = 0;
    GridConfig grid;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
};

struct ExperimentReport {
    std::string experiment;
    RunConfig config;
    std::vector<CheckResult> checks;
    std::vector<LevelResult> trajectory;  // filled by refine_sweep
    double seconds = 0.0;

    bool pass() const;
    std::string to_json() const;
    /// level,check,residual,tolerance,pass
    std::string trajectory_csv() const;
};

/// Commands accepted by run(), in execution order for "all".
const std::vector<std::string>& command_names();

ExperimentReport run(const std::string& command, const RunConfig& config);

/// Runs the command on `levels` successive refinements (level 0 is the
/// configured grid). Every convergence check must decrease strictly from
/// level to level unless it already sits at the rounding floor.
ExperimentReport refine_sweep(const std::string& command, const RunConfig& config, int levels);

/// Residuals below this are treated as rounding noise by refine_sweep.
inline constexpr double rounding_floor = 1e-11;

} // namespace gpdo
