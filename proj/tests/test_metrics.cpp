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

#include "deism/error.hpp"
#include "deism/metrics.hpp"
#include "deism/spectrum.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace deism;

namespace
{
    RtfSpectrum make(std::vector<double> f, std::vector<cdouble> v, MethodTag m = MethodTag::deism)
    {
        RtfSpectrum s;
        s.frequencies = std::move(f);
        s.values = std::move(v);
        s.method = m;
        return s;
    }

    RtfSpectrum ramp(double scale, double extra_phase)
    {
        std::vector<double> f;
        std::vector<cdouble> v;
        for (int i = 0; i < 30; ++i)
        {
            f.push_back(20.0 + 10.0 * i);
            v.push_back(scale * std::polar(1.0 + 0.01 * i, -0.3 * i + extra_phase));
        }
        return make(f, v);
    }

    std::filesystem::path data_dir() { return std::filesystem::path(DEISM_TEST_DATA_DIR); }
}

TEST_CASE("sound pressure level of a complex amplitude")
{
    CHECK(spl_db(cdouble(2e-5 * std::sqrt(2.0), 0.0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(spl_db(cdouble(0.0, 1.0)) == doctest::Approx(20.0 * std::log10(1.0 / std::sqrt(2.0) / 2e-5)));
    CHECK(std::isinf(spl_db(0.0)));
    const SplTrace t = spl(make({1.0, 2.0}, {0.0, 1.0}));
    REQUIRE(t.zero_magnitude.size() == 1);
    CHECK(t.zero_magnitude[0] == 0);
    CHECK(std::isinf(t.level_db[0]));
}

TEST_CASE("identical spectra compare to zero")
{
    const RtfSpectrum a = ramp(1.0, 0.0);
    const ComparisonReport r = compare_spectra(a, a);
    CHECK(r.e_lsd == 0.0);
    CHECK(r.e_lsd_single_ratio == 0.0);
    CHECK(r.e_phase == 0.0);
    CHECK(r.e_l2 == 0.0);
    CHECK(r.f_min == 20.0);
    CHECK(r.f_max == 310.0);
}

TEST_CASE("doubling the amplitude gives 6.02 dB")
{
    const RtfSpectrum a = ramp(1.0, 0.0), b = ramp(2.0, 0.0);
    CHECK(log_spectral_distance(b, a) == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
    CHECK(log_spectral_distance(b, a) == doctest::Approx(6.0206).epsilon(1e-4));
    CHECK(log_spectral_distance(b, a, LsdForm::single_ratio) == doctest::Approx(10.0 * std::log10(2.0)));
    CHECK(relative_l2(a, b) == doctest::Approx(1.0));
    CHECK(relative_l2(b, a) == doctest::Approx(0.5));
}

TEST_CASE("phase error of a constant shift")
{
    const RtfSpectrum a = ramp(1.0, 0.0), b = ramp(1.0, 0.25);
    CHECK(phase_error(b, a) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("phase unwrapping")
{
    std::vector<cdouble> v;
    for (int i = 0; i < 50; ++i)
        v.push_back(std::polar(1.0, -0.7 * i + 0.1));
    const auto u = unwrap_phase(v);
    for (int i = 0; i < 50; ++i)
        CHECK(u[i] == doctest::Approx(-0.7 * i + 0.1));
    CHECK(unwrap_phase(std::vector<cdouble>{}).empty());
}

TEST_CASE("metric preconditions")
{
    const RtfSpectrum a = ramp(1.0, 0.0);
    RtfSpectrum shifted = a;
    shifted.frequencies.back() += 1.0;
    CHECK_THROWS_AS(compare_spectra(a, shifted), ConfigError);
    RtfSpectrum zero = a;
    zero.values[3] = 0.0;
    CHECK_THROWS_AS(log_spectral_distance(zero, a), DomainError);
    RtfSpectrum all_zero = a;
    for (auto &v : all_zero.values)
        v = 0.0;
    CHECK_THROWS_AS(relative_l2(all_zero, a), DomainError);
    CHECK_THROWS_AS(compare_spectra(make({}, {}), make({}, {})), ConfigError);
}

TEST_CASE("golden pair yields pinned metrics")
{
    const RtfSpectrum ref = read_spectrum(data_dir() / "golden_reference.csv");
    const RtfSpectrum test = read_spectrum(data_dir() / "golden_test.csv");
    const ComparisonReport r = compare_spectra(ref, test);
    CHECK(r.e_lsd == doctest::Approx(3.5218251811136247).epsilon(1e-12));
    CHECK(r.e_lsd_single_ratio == doctest::Approx(1.7609125905568124).epsilon(1e-12));
    CHECK(r.e_phase == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.e_l2 == doctest::Approx(0.5565970413829694).epsilon(1e-12));
    CHECK(r.f_min == 100.0);
    CHECK(r.f_max == 1100.0);

    const auto json = report_json(r);
    CHECK(json.find("\"e_lsd_db\"") != std::string::npos);
    CHECK(json.find("\"band_hz\"") != std::string::npos);
    std::ostringstream csv;
    write_report_csv(csv, r);
    CHECK(csv.str().rfind("freq_hz,level_difference_db,phase_difference_rad\n", 0) == 0);
}

TEST_CASE("method names")
{
    for (MethodTag t : {MethodTag::ism_omni, MethodTag::gism, MethodTag::fsrr, MethodTag::deism, MethodTag::deism_lc})
        CHECK(parse_method(method_name(t)) == t);
    CHECK(parse_method("deism-lc") == MethodTag::deism_lc);
    CHECK(parse_method("Ism_Omni") == MethodTag::ism_omni);
    CHECK_THROWS_AS(parse_method("bogus"), ConfigError);
}

TEST_CASE("spectrum files round-trip with their sidecar")
{
    const auto dir = std::filesystem::temp_directory_path() / "deism_metrics_test";
    std::filesystem::create_directories(dir);
    RtfSpectrum s = ramp(0.3, 1.0);
    s.values[4] = {1e-310, -2.5e-17};
    s.method = MethodTag::fsrr;
    s.fingerprint = "0123456789abcdef";
    s.metadata["note"] = "x";
    write_spectrum(dir / "s.csv", s);
    CHECK(sidecar_path(dir / "s.csv") == dir / "s.json");
    const RtfSpectrum back = read_spectrum(dir / "s.csv");
    CHECK(back.frequencies == s.frequencies);
    CHECK(back.values == s.values);
    CHECK(back.method == MethodTag::fsrr);
    CHECK(back.fingerprint == s.fingerprint);
    CHECK(back.metadata.at("note") == "x");
    std::ifstream side(dir / "s.json");
    std::stringstream text;
    text << side.rdbuf();
    CHECK(text.str().find(std::string(artifact_version())) != std::string::npos);
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_spectrum(dir / "missing.csv"), IoError);
}

TEST_CASE("malformed spectrum CSV")
{
    const auto line_of = [](const std::string &text)
    {
        std::istringstream in(text);
        try
        {
            read_spectrum_csv(in);
        }
        catch (const ParseError &e)
        {
            return e.line();
        }
        return std::size_t(0);
    };
    CHECK(line_of("freq_hz,re,im\n1,0,0\n2,1,1\n") == 0);
    CHECK(line_of("f,re,im\n1,0,0\n") == 1);
    CHECK(line_of("freq_hz,re,im\n1,0,0\n2,1\n") == 3);
    CHECK(line_of("freq_hz,re,im\n2,0,0\n1,1,1\n") == 3);
    CHECK(line_of("freq_hz,re,im\n1,inf,0\n") == 2);
}
