// SPDX-License-Identifier: Apache-2.0
//
// deism: room transfer functions between directional transducers
// Copyright (C) 2026 The deism authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DEISM_CLI_COMMANDS_HPP
#define DEISM_CLI_COMMANDS_HPP

#include "deism/cli/config.hpp"
#include "deism/deism.hpp"
#include "deism/parallel.hpp"

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace deism::cli
{
    enum ExitCode : int
    {
        exit_success = 0,
        exit_internal = 1,
        exit_config = 2,
        exit_numeric = 3,
        exit_io = 4,
    };

    // Maps library errors onto the documented exit codes; anything else is exit_internal.
    int exit_code_for(const std::exception &e) noexcept;

    // --workers wins, then DEISM_WORKERS, then hardware parallelism (0).
    ExecutionOptions execution_options(const SimulationConfig &config, std::optional<int> workers_flag);

    Directivity build_directivity(const DirectivitySelector &selector, DirectivityKind kind,
                                  const std::vector<double> &frequencies, const Medium &medium);

    // Reads an RTF spectrum file whose grid must equal `frequencies`.
    std::vector<cdouble> load_direct_path_override(const std::filesystem::path &path,
                                                   const std::vector<double> &frequencies);

    RtfSpectrum simulate_method(const SimulationConfig &config, MethodTag method, const ExecutionOptions &execution,
                                DeismCounters *counters = nullptr);
    std::vector<RtfSpectrum> simulate(const SimulationConfig &config, const ExecutionOptions &execution);

    struct SweepRow
    {
        double x = 0.0; // distance [m] or reflection order
        double e_l2 = 0.0;
    };

    // Free-field e_l2(DEISM_LC vs DEISM) with the receiver at source + d * direction.
    std::vector<SweepRow> sweep_distance(const SimulationConfig &config, const ExecutionOptions &execution);
    // e_l2(DEISM_LC vs DEISM) per maximum reflection order. Order 0 is skipped with a notice
    // when a direct-path override is configured.
    std::vector<SweepRow> sweep_order(const SimulationConfig &config, const ExecutionOptions &execution,
                                      std::ostream &notices);
    void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows, const std::string &x_column);

    // JSON timing report for DEISM and DEISM_LC.
    std::string bench_report(const SimulationConfig &config, const ExecutionOptions &execution);

    struct FitRequest
    {
        std::filesystem::path input;
        std::filesystem::path output;
        int max_order = 5;
        DirectivityKind kind = DirectivityKind::source;
        Medium medium;
    };
    // Writes the fitted directivity and prints per-frequency residuals and the condition number.
    void fit_directivity_command(const FitRequest &request, std::ostream &log);

    // Entry point for the deism executable.
    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif
