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

#include "deism/metrics.hpp"
#include "deism/error.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <ostream>

namespace deism
{
    namespace
    {
        void require_magnitudes(const RtfSpectrum &s, const char *which)
        {
            for (std::size_t i = 0; i < s.values.size(); ++i)
                if (std::abs(s.values[i]) == 0.0)
                    throw DomainError(std::string(which) + " spectrum is zero at " +
                                      text::format_double(s.frequencies[i]) + " Hz");
        }

        void require_comparable(const RtfSpectrum &a, const RtfSpectrum &b)
        {
            a.validate();
            b.validate();
            require_same_grid(a.frequencies, b.frequencies, "comparison");
            if (a.values.empty())
                throw ConfigError("cannot compare empty spectra");
        }

        double rms(const std::vector<double> &x)
        {
            double acc = 0.0;
            for (double v : x)
                acc += v * v;
            return std::sqrt(acc / static_cast<double>(x.size()));
        }
    }

    double spl_db(cdouble h) noexcept
    {
        const double mag = std::abs(h);
        if (mag == 0.0)
            return -std::numeric_limits<double>::infinity();
        return 20.0 * std::log10(mag / std::sqrt(2.0) / reference_pressure);
    }

    SplTrace spl(const RtfSpectrum &h)
    {
        h.validate();
        SplTrace out;
        out.level_db.reserve(h.values.size());
        for (std::size_t i = 0; i < h.values.size(); ++i)
        {
            out.level_db.push_back(spl_db(h.values[i]));
            if (std::isinf(out.level_db.back()))
                out.zero_magnitude.push_back(i);
        }
        return out;
    }

    double log_spectral_distance(const RtfSpectrum &test, const RtfSpectrum &reference, LsdForm form)
    {
        require_comparable(test, reference);
        require_magnitudes(test, "test");
        require_magnitudes(reference, "reference");
        std::vector<double> d(test.values.size());
        for (std::size_t i = 0; i < d.size(); ++i)
        {
            const double ratio = std::abs(test.values[i]) / std::abs(reference.values[i]);
            d[i] = form == LsdForm::squared_ratio ? 10.0 * std::log10(ratio * ratio) : 10.0 * std::log10(ratio);
        }
        return rms(d);
    }

    std::vector<double> unwrap_phase(std::span<const cdouble> values)
    {
        std::vector<double> out(values.size());
        double offset = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            const double raw = std::arg(values[i]);
            if (i > 0)
            {
                const double jump = raw + offset - out[i - 1];
                if (std::abs(jump) > pi)
                    offset -= 2.0 * pi * std::round(jump / (2.0 * pi));
            }
            out[i] = raw + offset;
        }
        return out;
    }

    double phase_error(const RtfSpectrum &test, const RtfSpectrum &reference)
    {
        require_comparable(test, reference);
        const auto pt = unwrap_phase(test.values);
        const auto pr = unwrap_phase(reference.values);
        std::vector<double> d(pt.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = pt[i] - pr[i];
        return rms(d);
    }

    double relative_l2(std::span<const cdouble> a, std::span<const cdouble> b)
    {
        if (a.size() != b.size())
            throw ConfigError("relative error needs equally long spectra");
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            num += std::norm(a[i] - b[i]);
            den += std::norm(a[i]);
        }
        if (!(den > 0.0))
            throw DomainError("relative error against a zero reference");
        return std::sqrt(num / den);
    }

    double relative_l2(const RtfSpectrum &a, const RtfSpectrum &b)
    {
        require_comparable(a, b);
        return relative_l2(std::span<const cdouble>(a.values), std::span<const cdouble>(b.values));
    }

    ComparisonReport compare_spectra(const RtfSpectrum &reference, const RtfSpectrum &test)
    {
        require_comparable(reference, test);
        ComparisonReport r;
        r.e_lsd = log_spectral_distance(test, reference, LsdForm::squared_ratio);
        r.e_lsd_single_ratio = log_spectral_distance(test, reference, LsdForm::single_ratio);
        r.e_phase = phase_error(test, reference);
        r.e_l2 = relative_l2(reference, test);
        r.frequencies = reference.frequencies;
        r.f_min = reference.frequencies.front();
        r.f_max = reference.frequencies.back();
        const auto pt = unwrap_phase(test.values);
        const auto pr = unwrap_phase(reference.values);
        for (std::size_t i = 0; i < reference.values.size(); ++i)
        {
            r.level_difference_db.push_back(spl_db(test.values[i]) - spl_db(reference.values[i]));
            r.phase_difference_rad.push_back(pt[i] - pr[i]);
        }
        return r;
    }

    std::string report_json(const ComparisonReport &report)
    {
        nlohmann::ordered_json j = {{"e_lsd_db", report.e_lsd},
                                    {"e_lsd_single_ratio_db", report.e_lsd_single_ratio},
                                    {"e_phase_rad", report.e_phase},
                                    {"e_l2", report.e_l2},
                                    {"band_hz", {report.f_min, report.f_max}}};
        return j.dump(2);
    }

    void write_report_csv(std::ostream &out, const ComparisonReport &report)
    {
        out << "freq_hz,level_difference_db,phase_difference_rad\n";
        for (std::size_t i = 0; i < report.frequencies.size(); ++i)
            out << text::format_double(report.frequencies[i]) << ','
                << text::format_double(report.level_difference_db[i]) << ','
                << text::format_double(report.phase_difference_rad[i]) << '\n';
    }
}
