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

#ifndef DEISM_SPECTRUM_HPP
#define DEISM_SPECTRUM_HPP

#include "deism/sph_core.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace deism
{
    enum class MethodTag
    {
        ism_omni,
        gism,
        fsrr,
        deism,
        deism_lc
    };

    // "ISM_OMNI", "GISM", "FSRR", "DEISM", "DEISM_LC".
    std::string_view method_name(MethodTag tag) noexcept;
    // Accepts the names above in any case, with '-' or '_'. Throws ConfigError otherwise.
    MethodTag parse_method(std::string_view name);

    struct RtfSpectrum
    {
        std::vector<double> frequencies; // [Hz], strictly increasing
        std::vector<cdouble> values;
        MethodTag method = MethodTag::deism;
        std::string fingerprint;                     // config hash, empty when unknown
        std::map<std::string, std::string> metadata; // free-form sidecar entries

        // Throws ConfigError on length mismatch, unsorted or non-finite frequencies.
        void validate() const;
    };

    // Throws ConfigError unless both grids are identical.
    void require_same_grid(const std::vector<double> &a, const std::vector<double> &b, std::string_view what);

    // Spectrum CSV: header "freq_hz,re,im", one row per frequency, 17 significant digits.
    void write_spectrum_csv(std::ostream &out, const RtfSpectrum &s);
    // Reads frequencies and values; method and fingerprint stay default. Throws ParseError.
    RtfSpectrum read_spectrum_csv(std::istream &in);

    // Sidecar JSON next to the CSV (same stem, ".json"):
    //   {"format":"deism-rtf","version":1,"method":...,"config_fingerprint":...,
    //    "artifact_version":...,"frequency_count":...,"metadata":{...}}
    std::filesystem::path sidecar_path(const std::filesystem::path &csv_path);
    void write_spectrum(const std::filesystem::path &csv_path, const RtfSpectrum &s);
    // Reads the CSV and, when present, the sidecar. Throws IoError or ParseError.
    RtfSpectrum read_spectrum(const std::filesystem::path &csv_path);

    std::string_view artifact_version() noexcept;
}

#endif
