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

#ifndef DEISM_CLI_CONFIG_HPP
#define DEISM_CLI_CONFIG_HPP

#include "deism/deism.hpp"
#include "deism/ism_baselines.hpp"
#include "deism/synthetic.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deism::cli
{
    struct DirectivitySelector
    {
        enum class Type
        {
            monopole,
            point_receiver,
            synthetic,
            file
        };

        Type type = Type::monopole;
        std::filesystem::path path; // file
        ObservationOffset offset;   // point_receiver
        SyntheticDirectivitySpec synthetic;
    };

    struct FrequencyGrid
    {
        double start_hz = 20.0;
        double stop_hz = 1000.0;
        double step_hz = 2.0;
        std::vector<double> list_hz; // overrides the range when non-empty

        // start, start + step, ... up to stop (inclusive within a 1e-9 step tolerance).
        std::vector<double> values() const;
    };

    struct SweepSettings
    {
        std::vector<double> distances_m{2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
        std::vector<int> orders{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        std::optional<Vec3> direction; // receiver offset direction; default source -> receiver
    };

    struct SimulationConfig
    {
        std::string preset;
        Scene scene;
        DirectivitySelector source_directivity;
        DirectivitySelector receiver_directivity;
        std::vector<MethodTag> methods{MethodTag::deism};
        FrequencyGrid frequencies;
        std::uint64_t rng_seed = 0;
        FsrrConfig fsrr;
        std::filesystem::path direct_path_override;
        bool adaptive_truncation = false;
        LcContraction lc_contraction = LcContraction::factored;
        std::size_t chunk_size = 256;
        std::filesystem::path output_directory = "deism-out";
        std::string plot = "none";
        SweepSettings sweep;
        int bench_repeats = 1;
    };

    // Named Table-II style layouts: room 4 x 3 x 2.5 m, zeta 18, c 343 m/s, rho 1.2 kg/m^3.
    std::vector<std::string> preset_names();
    // Throws ConfigError for an unknown name.
    void apply_preset(std::string_view name, SimulationConfig &config);

    // Parses a JSON document. Syntax errors raise ParseError with the line; unknown keys, wrong
    // types and invariant violations raise ConfigError naming the JSON pointer of the value.
    // Relative paths are resolved against base_dir.
    SimulationConfig parse_config(std::string_view text, const std::filesystem::path &base_dir = {});
    SimulationConfig load_config(const std::filesystem::path &path);

    // Checks everything that can be checked without reading directivity files.
    void validate_config(const SimulationConfig &config);

    // Canonical JSON of every setting that influences numerical results (output locations and
    // worker counts excluded), with sorted keys.
    std::string canonical_json(const SimulationConfig &config);
    // FNV-1a 64 of canonical_json, as 16 hex digits.
    std::string config_fingerprint(const SimulationConfig &config);
}

#endif
