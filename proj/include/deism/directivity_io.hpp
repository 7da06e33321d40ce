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

#ifndef DEISM_DIRECTIVITY_IO_HPP
#define DEISM_DIRECTIVITY_IO_HPP

#include "deism/directivity.hpp"

#include <filesystem>
#include <iosfwd>

namespace deism
{
    // Directivity file, version 1:
    //
    //   {"format":"deism-directivity","version":1,"kind":"source","r0_m":0.4,"max_order":5,"frequencies_hz":[...]}
    //   freq_hz,n,m,re,im
    //   20,0,0,<re>,<im>
    //   ...
    //
    // The first line is a single-line JSON header; rows are sorted by (freq, n, m) and cover every
    // (n, m) with n <= max_order at every header frequency. Numbers are written with 17 significant
    // digits, so finite doubles round-trip bit-exactly.
    //
    // Sampled field file, version 1:
    //
    //   {"format":"deism-sampled-field","version":1,"r0_m":0.4,"frequencies_hz":[...]}
    //   theta_rad,phi_rad,freq_hz,re,im
    //
    // Rows grouped by frequency in header order; the direction list of the first frequency block
    // defines the grid and must repeat identically in every block.
    inline constexpr int directivity_file_version = 1;
    inline constexpr int sampled_field_file_version = 1;

    void write_directivity(std::ostream &out, const Directivity &d);
    void write_directivity(const std::filesystem::path &path, const Directivity &d);
    // Throws ParseError with the offending line number.
    Directivity read_directivity(std::istream &in);
    Directivity read_directivity(const std::filesystem::path &path);

    void write_sampled_field(std::ostream &out, const SampledSphereField &field);
    void write_sampled_field(const std::filesystem::path &path, const SampledSphereField &field);
    SampledSphereField read_sampled_field(std::istream &in);
    SampledSphereField read_sampled_field(const std::filesystem::path &path);
}

#endif
