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

#ifndef DEISM_METRICS_HPP
#define DEISM_METRICS_HPP

#include "deism/spectrum.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace deism
{
    inline constexpr double reference_pressure = 2e-5; // [Pa]

    // 20 log10(|h| / sqrt(2) / 2e-5): steady-state RMS of a complex amplitude.
    // Returns -infinity for h = 0.
    double spl_db(cdouble h) noexcept;

    struct SplTrace
    {
        std::vector<double> level_db;
        std::vector<std::size_t> zero_magnitude; // indices holding the -infinity sentinel
    };
    SplTrace spl(const RtfSpectrum &h);

    enum class LsdForm
    {
        // sqrt(mean((10 log10(|t|^2 / |r|^2))^2)), the RMS of 20 log10 |t / r|
        squared_ratio,
        // sqrt(mean((10 log10(|t| / |r|))^2)), half of the above
        single_ratio
    };

    // Throws ConfigError for differing grids and DomainError where either magnitude is zero.
    double log_spectral_distance(const RtfSpectrum &test, const RtfSpectrum &reference,
                                 LsdForm form = LsdForm::squared_ratio);

    // Removes jumps larger than pi between neighbours by adding multiples of 2 pi. The first
    // sample keeps its principal value.
    std::vector<double> unwrap_phase(std::span<const cdouble> values);

    // RMS of the difference of the independently unwrapped phases [rad].
    double phase_error(const RtfSpectrum &test, const RtfSpectrum &reference);

    // |a - b| / |a| over the whole spectrum. Throws DomainError when |a| = 0.
    double relative_l2(const RtfSpectrum &a, const RtfSpectrum &b);
    double relative_l2(std::span<const cdouble> a, std::span<const cdouble> b);

    struct ComparisonReport
    {
        double e_lsd = 0.0;              // squared-ratio form [dB]
        double e_lsd_single_ratio = 0.0; // [dB]
        double e_phase = 0.0;            // [rad]
        double e_l2 = 0.0;
        double f_min = 0.0;
        double f_max = 0.0;
        std::vector<double> frequencies;
        std::vector<double> level_difference_db;  // SPL(test) - SPL(reference)
        std::vector<double> phase_difference_rad; // unwrapped(test) - unwrapped(reference)
    };

    ComparisonReport compare_spectra(const RtfSpectrum &reference, const RtfSpectrum &test);

    // {"e_lsd_db":...,"e_lsd_single_ratio_db":...,"e_phase_rad":...,"e_l2":...,"band_hz":[lo,hi]}
    std::string report_json(const ComparisonReport &report);
    // freq_hz,level_difference_db,phase_difference_rad
    void write_report_csv(std::ostream &out, const ComparisonReport &report);
}

#endif
