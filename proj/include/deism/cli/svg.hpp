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

#ifndef DEISM_CLI_SVG_HPP
#define DEISM_CLI_SVG_HPP

#include "deism/spectrum.hpp"

#include <string>
#include <vector>

namespace deism::cli
{
    // Two stacked panels over a logarithmic frequency axis: SPL in dB and wrapped phase in rad.
    std::string spectrum_svg(const std::vector<RtfSpectrum> &spectra, const std::string &title);

    // Single-series line plot. Non-positive values are dropped on logarithmic axes.
    struct SeriesPlot
    {
        std::string title;
        std::string x_label;
        std::string y_label;
        bool log_x = false;
        bool log_y = false;
        std::vector<double> x;
        std::vector<double> y;
    };
    std::string series_svg(const SeriesPlot &plot);
}

#endif
