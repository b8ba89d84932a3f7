#pragma once

#include <optional>
#include <string>

#include "kerrdiff/config.hpp"

namespace kerrdiff {

/// Command-line overrides applied after the config file is parsed.
struct RunOverrides {
    std::optional<int> grid_n;
    std::string out_dir = ".";
    bool quiet = false;
};

/// Exit codes shared by the CLI and the tests that drive it directly.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitNoConditionSatisfied = 3;
inline constexpr int kExitValidationFailed = 4;

/// solve <config>: writes solution.json (+ field.csv when requested) and a
/// run_meta.json sidecar that carries the non-deterministic metadata so the
/// data files stay byte-identical across runs.
int run_solve(const std::string& config_path, const RunOverrides& ov);

/// sweep <config>: one CSV row per point, ordered by parameter value; points
/// run concurrently; non-converged points become converged=false rows.
int run_sweep(const std::string& config_path, const RunOverrides& ov);

/// check <config>: writes check.json with the real-case report (real
/// profiles only), the complex-case report and the weak condition; exit 0
/// when any sufficient condition holds, 3 otherwise.
int run_check(const std::string& config_path, const RunOverrides& ov);

/// validate <config>: closed-form-vs-quadrature suite (m = 2 unless the
/// config overrides) and the IE-vs-BVP suite (m = 1) at two grid sizes;
/// exit 0 iff every empirical order is >= 1.8 and every difference is under
/// threshold, 4 otherwise with the failing check named.
int run_validate(const std::string& config_path, const RunOverrides& ov);

}  // namespace kerrdiff
