// Copyright 2026 The qknoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qknoise/cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "qknoise/experiment.hpp"

namespace qknoise {

int exit_code_for_current_exception() {
    try {
        throw;
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const DataError& err) {
        std::cerr << "data error: " << err.what() << "\n";
        return kExitData;
    } catch (const NumericalError& err) {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNumerical;
    }
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"quantum fidelity kernels under depolarizing noise: simulation and bound tables"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_override;
    int threads = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config JSON")->required();
        sub->add_option("--seed", seed_override, "override the config seed");
        sub->add_option("--out", out_override, "override the config output directory");
        sub->add_option("--threads", threads, "worker threads for independent sweep rows")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* cmd_data = app.add_subcommand("data", "prepare the feature cache");
    CLI::App* cmd_kernel = app.add_subcommand("kernel", "write kernel matrices for the cache");
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run the L-sweep and emit records");
    CLI::App* cmd_bounds = app.add_subcommand("bounds", "tabulate the closed-form bounds");
    CLI::App* cmd_regions = app.add_subcommand("regions", "map (n, L) to fail/uninformative");
    for (CLI::App* sub : {cmd_data, cmd_kernel, cmd_sweep, cmd_bounds, cmd_regions})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        ExperimentConfig config = ExperimentConfig::from_json_file(config_path);
        if (seed_override) config.seed = *seed_override;
        if (out_override) config.out_dir = *out_override;
        config.validate();

        if (cmd_data->parsed()) run_data(config);
        else if (cmd_kernel->parsed()) run_kernel(config);
        else if (cmd_sweep->parsed()) run_sweep(config, threads);
        else if (cmd_bounds->parsed()) run_bounds(config);
        else if (cmd_regions->parsed()) run_regions(config);
        return kExitOk;
    } catch (...) {
        return exit_code_for_current_exception();
    }
}

}  // namespace qknoise
