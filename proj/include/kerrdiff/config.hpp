#pragma once

#include <optional>
#include <string>

#include "kerrdiff/model.hpp"
#include "kerrdiff/solver.hpp"

namespace kerrdiff {

/// Config-file problems carry the offending field (JSON pointer or line) in
/// what().
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepParameter { Kappa, Alpha, PhiAngle, AInc };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Alpha;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;  // >= 2, start != stop
};

struct OutputSelection {
    bool amplitudes = true;
    bool flux = true;
    bool field_profile = false;
    bool trace = false;
    bool contraction_report = false;
};

/// One fully validated run description. Schema string "kerrdiff-config/1";
/// unknown keys are errors, reproducibility over convenience.
struct RunConfig {
    ProblemParams problem;
    PermittivityProfile profile = PermittivityProfile::constant({1.0, 0.0}, 1.0);
    int grid_n = 1025;
    IterScheme scheme = IterScheme::Picard;
    double tol = 1e-10;
    int max_iters = 400;
    /// Absent means: 1 for solves, 2 for the oracle half of validate.
    std::optional<int> kernel_convention;
    std::optional<SweepSpec> sweep;
    OutputSelection outputs;
};

/// Parses and validates a config file. Throws ConfigError with a
/// line/pointer diagnostic.
RunConfig load_run_config(const std::string& path);

}  // namespace kerrdiff
