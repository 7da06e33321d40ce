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

#ifndef DEISM_TEXT_UTIL_HPP
#define DEISM_TEXT_UTIL_HPP

// CSV helpers shared by the file readers and writers.

#include "deism/error.hpp"

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace deism::text
{
    inline std::string format_double(double v)
    {
        char buf[40];
        const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf, static_cast<std::size_t>(n));
    }

    inline std::vector<std::string_view> split(std::string_view line, char sep = ',')
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true)
        {
            const std::size_t pos = line.find(sep, start);
            if (pos == std::string_view::npos)
            {
                out.push_back(line.substr(start));
                return out;
            }
            out.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
    }

    inline std::string_view trim(std::string_view s)
    {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.remove_suffix(1);
        return s;
    }

    inline double parse_double(std::string_view field, std::size_t line)
    {
        field = trim(field);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size())
            throw ParseError("invalid number '" + std::string(field) + "'", line);
        return v;
    }

    inline int parse_int(std::string_view field, std::size_t line)
    {
        field = trim(field);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size())
            throw ParseError("invalid integer '" + std::string(field) + "'", line);
        return v;
    }
}

#endif
