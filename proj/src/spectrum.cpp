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

#include "deism/spectrum.hpp"
#include "deism/error.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace deism
{
    std::string_view artifact_version() noexcept { return DEISM_VERSION_STRING; }

    std::string_view method_name(MethodTag tag) noexcept
    {
        switch (tag)
        {
        case MethodTag::ism_omni:
            return "ISM_OMNI";
        case MethodTag::gism:
            return "GISM";
        case MethodTag::fsrr:
            return "FSRR";
        case MethodTag::deism:
            return "DEISM";
        case MethodTag::deism_lc:
            return "DEISM_LC";
        }
        return "DEISM";
    }

    MethodTag parse_method(std::string_view name)
    {
        std::string norm(name);
        for (char &c : norm)
            c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        for (MethodTag t : {MethodTag::ism_omni, MethodTag::gism, MethodTag::fsrr, MethodTag::deism, MethodTag::deism_lc})
            if (method_name(t) == norm)
                return t;
        throw ConfigError("unknown method '" + std::string(name) +
                          "' (expected ISM_OMNI, GISM, FSRR, DEISM or DEISM_LC)");
    }

    void RtfSpectrum::validate() const
    {
        if (frequencies.size() != values.size())
            throw ConfigError("spectrum has " + std::to_string(frequencies.size()) + " frequencies but " +
                              std::to_string(values.size()) + " values");
        for (std::size_t i = 0; i < frequencies.size(); ++i)
        {
            if (!std::isfinite(frequencies[i]))
                throw ConfigError("spectrum frequency is not finite");
            if (i > 0 && !(frequencies[i] > frequencies[i - 1]))
                throw ConfigError("spectrum frequencies must be strictly increasing");
        }
    }

    void require_same_grid(const std::vector<double> &a, const std::vector<double> &b, std::string_view what)
    {
        if (a != b)
            throw ConfigError(std::string(what) + ": frequency grids differ (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + " points); no interpolation is performed");
    }

    void write_spectrum_csv(std::ostream &out, const RtfSpectrum &s)
    {
        s.validate();
        out << "freq_hz,re,im\n";
        for (std::size_t i = 0; i < s.frequencies.size(); ++i)
            out << text::format_double(s.frequencies[i]) << ',' << text::format_double(s.values[i].real()) << ','
                << text::format_double(s.values[i].imag()) << '\n';
        if (!out)
            throw IoError("failed writing spectrum");
    }

    RtfSpectrum read_spectrum_csv(std::istream &in)
    {
        RtfSpectrum s;
        std::string line;
        if (!std::getline(in, line) || text::trim(line) != "freq_hz,re,im")
            throw ParseError("expected column header 'freq_hz,re,im'", 1);
        std::size_t line_no = 1;
        while (std::getline(in, line))
        {
            ++line_no;
            if (text::trim(line).empty())
                continue;
            const auto fields = text::split(line);
            if (fields.size() != 3)
                throw ParseError("expected 3 columns", line_no);
            const double f = text::parse_double(fields[0], line_no);
            const double re = text::parse_double(fields[1], line_no);
            const double im = text::parse_double(fields[2], line_no);
            if (!std::isfinite(f) || !std::isfinite(re) || !std::isfinite(im))
                throw ParseError("non-finite value", line_no);
            if (!s.frequencies.empty() && !(f > s.frequencies.back()))
                throw ParseError("frequencies must be strictly increasing", line_no);
            s.frequencies.push_back(f);
            s.values.emplace_back(re, im);
        }
        return s;
    }

    std::filesystem::path sidecar_path(const std::filesystem::path &csv_path)
    {
        auto p = csv_path;
        p.replace_extension(".json");
        return p;
    }

    void write_spectrum(const std::filesystem::path &csv_path, const RtfSpectrum &s)
    {
        {
            std::ofstream out(csv_path);
            if (!out)
                throw IoError("cannot open '" + csv_path.string() + "' for writing");
            write_spectrum_csv(out, s);
        }
        nlohmann::ordered_json side = {{"format", "deism-rtf"},
                                       {"version", 1},
                                       {"method", method_name(s.method)},
                                       {"config_fingerprint", s.fingerprint},
                                       {"artifact_version", artifact_version()},
                                       {"frequency_count", s.frequencies.size()},
                                       {"metadata", s.metadata}};
        const auto side_path = sidecar_path(csv_path);
        std::ofstream out(side_path);
        if (!out)
            throw IoError("cannot open '" + side_path.string() + "' for writing");
        out << side.dump(2) << '\n';
        if (!out)
            throw IoError("failed writing '" + side_path.string() + "'");
    }

    RtfSpectrum read_spectrum(const std::filesystem::path &csv_path)
    {
        std::ifstream in(csv_path);
        if (!in)
            throw IoError("cannot open '" + csv_path.string() + "'");
        RtfSpectrum s = read_spectrum_csv(in);

        const auto side_path = sidecar_path(csv_path);
        std::ifstream side_in(side_path);
        if (!side_in)
            return s;
        try
        {
            const auto side = nlohmann::json::parse(side_in);
            if (side.contains("method"))
                s.method = parse_method(side.at("method").get<std::string>());
            if (side.contains("config_fingerprint"))
                s.fingerprint = side.at("config_fingerprint").get<std::string>();
            if (side.contains("metadata"))
                s.metadata = side.at("metadata").get<std::map<std::string, std::string>>();
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ParseError("sidecar '" + side_path.string() + "': " + e.what(), 1);
        }
        catch (const ConfigError &e)
        {
            throw ParseError("sidecar '" + side_path.string() + "': " + e.what(), 1);
        }
        return s;
    }
}
