#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "kerrdiff/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "kerrdiff: plane-wave diffraction by a Kerr-nonlinear dielectric "
        "layer"};
    app.require_subcommand(1);

    std::string config_path;
    kerrdiff::RunOverrides ov;
    const char* env_out = std::getenv("KERRDIFF_OUT_DIR");
    ov.out_dir = env_out ? env_out : ".";

    int grid_n = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "run configuration file")
            ->required();
        sub->add_option("--grid-n", grid_n, "override the grid node count");
        sub->add_option("--out", ov.out_dir, "output directory");
        sub->add_flag("--quiet", ov.quiet, "suppress progress output");
    };

    auto* solve = app.add_subcommand("solve", "single diffraction solve");
    auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    auto* check =
        app.add_subcommand("check", "evaluate solvability conditions");
    auto* validate =
        app.add_subcommand("validate", "oracle and equivalence suites");
    add_common(solve);
    add_common(sweep);
    add_common(check);
    add_common(validate);

    CLI11_PARSE(app, argc, argv);
    if (grid_n > 0) ov.grid_n = grid_n;

    if (solve->parsed()) return kerrdiff::run_solve(config_path, ov);
    if (sweep->parsed()) return kerrdiff::run_sweep(config_path, ov);
    if (check->parsed()) return kerrdiff::run_check(config_path, ov);
    return kerrdiff::run_validate(config_path, ov);
}
