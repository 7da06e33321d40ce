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

#include "deism/directivity_io.hpp"
#include "deism/error.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace deism
{
    using nlohmann::json;

    namespace
    {
        const char *kind_name(DirectivityKind k) { return k == DirectivityKind::source ? "source" : "receiver"; }

        json read_header(std::istream &in, const char *format, int version)
        {
            std::string line;
            if (!std::getline(in, line))
                throw ParseError("missing JSON header", 1);
            json header;
            try
            {
                header = json::parse(line);
            }
            catch (const json::exception &e)
            {
                throw ParseError(std::string("malformed JSON header: ") + e.what(), 1);
            }
            if (!header.is_object() || header.value("format", "") != format)
                throw ParseError(std::string("header format must be '") + format + "'", 1);
            if (!header.contains("version") || !header["version"].is_number_integer() ||
                header["version"].get<int>() != version)
                throw ParseError("unsupported file version", 1);
            return header;
        }

        template <class T>
        T header_field(const json &h, const char *key)
        {
            if (!h.contains(key))
                throw ParseError(std::string("header is missing '") + key + "'", 1);
            try
            {
                return h.at(key).get<T>();
            }
            catch (const json::exception &)
            {
                throw ParseError(std::string("header field '") + key + "' has the wrong type", 1);
            }
        }

        void expect_columns(std::istream &in, std::string_view expected)
        {
            std::string line;
            if (!std::getline(in, line) || text::trim(line) != expected)
                throw ParseError("expected column header '" + std::string(expected) + "'", 2);
        }

        double finite(double v, std::size_t line)
        {
            if (!std::isfinite(v))
                throw ParseError("non-finite value", line);
            return v;
        }

        std::ofstream open_out(const std::filesystem::path &path)
        {
            std::ofstream out(path);
            if (!out)
                throw IoError("cannot open '" + path.string() + "' for writing");
            return out;
        }

        std::ifstream open_in(const std::filesystem::path &path)
        {
            std::ifstream in(path);
            if (!in)
                throw IoError("cannot open '" + path.string() + "'");
            return in;
        }
    }

    void write_directivity(std::ostream &out, const Directivity &d)
    {
        json header = {{"format", "deism-directivity"},
                       {"version", directivity_file_version},
                       {"kind", kind_name(d.kind())},
                       {"r0_m", d.r0()},
                       {"max_order", d.max_order()},
                       {"frequencies_hz", d.frequencies()}};
        out << header.dump() << '\n' << "freq_hz,n,m,re,im\n";
        for (std::size_t f = 0; f < d.size(); ++f)
        {
            const std::string freq = text::format_double(d.frequencies()[f]);
            for (int n = 0; n <= d.max_order(); ++n)
                for (int m = -n; m <= n; ++m)
                {
                    const cdouble c = d.at(f)(n, m);
                    out << freq << ',' << n << ',' << m << ',' << text::format_double(c.real()) << ','
                        << text::format_double(c.imag()) << '\n';
                }
        }
        if (!out)
            throw IoError("failed writing directivity");
    }

    void write_directivity(const std::filesystem::path &path, const Directivity &d)
    {
        auto out = open_out(path);
        write_directivity(out, d);
    }

    Directivity read_directivity(std::istream &in)
    {
        const json header = read_header(in, "deism-directivity", directivity_file_version);
        const auto kind_str = header_field<std::string>(header, "kind");
        if (kind_str != "source" && kind_str != "receiver")
            throw ParseError("kind must be 'source' or 'receiver'", 1);
        const auto r0 = header_field<double>(header, "r0_m");
        const auto max_order = header_field<int>(header, "max_order");
        const auto freqs = header_field<std::vector<double>>(header, "frequencies_hz");
        if (max_order < 0)
            throw ParseError("max_order must be non-negative", 1);
        expect_columns(in, "freq_hz,n,m,re,im");

        std::vector<ShCoefficients> coeffs(freqs.size(), ShCoefficients::zeros(max_order));
        const std::size_t per_freq = sh_count(max_order);
        const std::size_t expected_rows = per_freq * freqs.size();
        std::size_t row = 0;
        std::size_t line_no = 2;
        std::string line;
        while (std::getline(in, line))
        {
            ++line_no;
            if (text::trim(line).empty())
                continue;
            if (row >= expected_rows)
                throw ParseError("more coefficient rows than the header declares", line_no);
            const auto fields = text::split(line);
            if (fields.size() != 5)
                throw ParseError("expected 5 columns", line_no);
            const std::size_t f = row / per_freq;
            const std::size_t idx = row % per_freq;
            const int n = static_cast<int>(std::sqrt(static_cast<double>(idx)));
            const int m = static_cast<int>(idx) - n * n - n;
            const double freq = finite(text::parse_double(fields[0], line_no), line_no);
            if (freq != freqs[f])
                throw ParseError("row frequency does not match header order", line_no);
            if (text::parse_int(fields[1], line_no) != n || text::parse_int(fields[2], line_no) != m)
                throw ParseError("rows must be sorted by (freq, n, m); expected n=" + std::to_string(n) +
                                     ", m=" + std::to_string(m),
                                 line_no);
            coeffs[f](n, m) = {finite(text::parse_double(fields[3], line_no), line_no),
                               finite(text::parse_double(fields[4], line_no), line_no)};
            ++row;
        }
        if (row != expected_rows)
            throw ParseError("file ends after " + std::to_string(row) + " of " + std::to_string(expected_rows) +
                                 " coefficient rows",
                             line_no);
        try
        {
            return Directivity(kind_str == "source" ? DirectivityKind::source : DirectivityKind::receiver, r0, freqs,
                               std::move(coeffs));
        }
        catch (const ConfigError &e)
        {
            throw ParseError(e.what(), 1);
        }
    }

    Directivity read_directivity(const std::filesystem::path &path)
    {
        auto in = open_in(path);
        return read_directivity(in);
    }

    void write_sampled_field(std::ostream &out, const SampledSphereField &field)
    {
        field.validate();
        json header = {{"format", "deism-sampled-field"},
                       {"version", sampled_field_file_version},
                       {"r0_m", field.r0},
                       {"frequencies_hz", field.frequencies}};
        out << header.dump() << '\n' << "theta_rad,phi_rad,freq_hz,re,im\n";
        for (std::size_t f = 0; f < field.frequencies.size(); ++f)
        {
            const std::string freq = text::format_double(field.frequencies[f]);
            for (std::size_t j = 0; j < field.directions.size(); ++j)
            {
                const cdouble p = field.at(f, j);
                out << text::format_double(field.directions[j].theta) << ','
                    << text::format_double(field.directions[j].phi) << ',' << freq << ','
                    << text::format_double(p.real()) << ',' << text::format_double(p.imag()) << '\n';
            }
        }
        if (!out)
            throw IoError("failed writing sampled field");
    }

    void write_sampled_field(const std::filesystem::path &path, const SampledSphereField &field)
    {
        auto out = open_out(path);
        write_sampled_field(out, field);
    }

    SampledSphereField read_sampled_field(std::istream &in)
    {
        const json header = read_header(in, "deism-sampled-field", sampled_field_file_version);
        SampledSphereField field;
        field.r0 = header_field<double>(header, "r0_m");
        field.frequencies = header_field<std::vector<double>>(header, "frequencies_hz");
        if (field.frequencies.empty())
            throw ParseError("header declares no frequencies", 1);
        expect_columns(in, "theta_rad,phi_rad,freq_hz,re,im");

        std::size_t line_no = 2;
        std::size_t f = 0;
        std::size_t j = 0;
        bool grid_closed = false;
        std::string line;
        while (std::getline(in, line))
        {
            ++line_no;
            if (text::trim(line).empty())
                continue;
            const auto fields = text::split(line);
            if (fields.size() != 5)
                throw ParseError("expected 5 columns", line_no);
            const double theta = finite(text::parse_double(fields[0], line_no), line_no);
            const double phi = finite(text::parse_double(fields[1], line_no), line_no);
            const double freq = finite(text::parse_double(fields[2], line_no), line_no);
            const cdouble p{finite(text::parse_double(fields[3], line_no), line_no),
                            finite(text::parse_double(fields[4], line_no), line_no)};

            if (!grid_closed && f == 0 && freq == field.frequencies[0])
            {
                field.directions.push_back({theta, phi});
                field.pressure.push_back(p);
                ++j;
                continue;
            }
            if (!grid_closed)
            {
                grid_closed = true;
                f = 1;
                j = 0;
            }
            if (j == field.directions.size())
            {
                ++f;
                j = 0;
            }
            if (f >= field.frequencies.size() || freq != field.frequencies[f])
                throw ParseError("row frequency does not match header order", line_no);
            if (theta != field.directions[j].theta || phi != field.directions[j].phi)
                throw ParseError("direction differs from the first frequency block", line_no);
            field.pressure.push_back(p);
            ++j;
        }
        if (field.pressure.size() != field.frequencies.size() * field.directions.size())
            throw ParseError("incomplete sampled field", line_no);
        try
        {
            field.validate();
        }
        catch (const ConfigError &e)
        {
            throw ParseError(e.what(), 0);
        }
        return field;
    }

    SampledSphereField read_sampled_field(const std::filesystem::path &path)
    {
        auto in = open_in(path);
        return read_sampled_field(in);
    }
}
