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

#include "deism/cli/config.hpp"
#include "deism/error.hpp"

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

extern "C" int LLVMFuzzerTestOneInput(const std::uint8_t *data, std::size_t size);

namespace
{
    int feed(const std::string &s)
    {
        return LLVMFuzzerTestOneInput(reinterpret_cast<const std::uint8_t *>(s.data()), s.size());
    }

    const std::vector<std::string> seeds = {
        R"({"preset":"paper-config-1"})",
        R"({"preset":"paper-config-2","methods":["DEISM","DEISM_LC"],"frequencies":{"start_hz":20,"stop_hz":100,"step_hz":20}})",
        R"({"room":{"dimensions_m":[5,4,3],"zeta":12},"source":{"position_m":[1,1,1],"orientation":"-y",
            "directivity":{"type":"synthetic","max_order":2,"seed":3}},"receiver":{"position_m":[3,2,1.5],"yaw_rad":0.3,
            "directivity":{"type":"point_receiver","offset_m":0.1,"theta_rad":1,"phi_rad":2}},"methods":["GISM"],
            "fsrr":{"sign_mode":"uniform_interval","measurement_radius_m":1},"sweep":{"distances_m":[2,5],"orders":[1,2]},
            "bench":{"repeats":2},"output":{"directory":"o","plot":"svg"},"chunk_size":8,"lc_contraction":"mode_pairs"})",
        R"({"free_field":true,"receiver":{"position_m":[10,0,0]},"frequencies":{"list_hz":[100,200]}})",
    };
}

TEST_CASE("random bytes never escape as untyped errors")
{
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 20000; ++trial)
    {
        std::string s(static_cast<std::size_t>(rng() % 64), '\0');
        for (auto &c : s)
            c = static_cast<char>(rng() & 0xff);
        CHECK_NOTHROW(feed(s));
    }
}

TEST_CASE("mutated configs never escape as untyped errors")
{
    std::mt19937_64 rng(7);
    const std::string alphabet = "{}[]\",:0123456789.-+eE truefalsnul\\\n\t\x80\xff";
    int accepted = 0;
    for (int trial = 0; trial < 20000; ++trial)
    {
        std::string s = seeds[rng() % seeds.size()];
        const int edits = 1 + static_cast<int>(rng() % 4);
        for (int e = 0; e < edits && !s.empty(); ++e)
        {
            const std::size_t pos = rng() % s.size();
            const char c = alphabet[rng() % alphabet.size()];
            switch (rng() % 3)
            {
            case 0:
                s[pos] = c;
                break;
            case 1:
                s.insert(s.begin() + static_cast<long>(pos), c);
                break;
            default:
                s.erase(pos, 1 + rng() % 3);
            }
        }
        CHECK_NOTHROW(feed(s));
        try
        {
            deism::cli::parse_config(s);
            ++accepted;
        }
        catch (const deism::Error &)
        {
        }
    }
    // The mutator must also produce valid documents, or the fuzz only tests the tokenizer.
    CHECK(accepted > 100);
}

TEST_CASE("seed documents are valid")
{
    for (const auto &s : seeds)
        CHECK_NOTHROW(deism::cli::parse_config(s));
}

TEST_CASE("extreme numbers are rejected with a location")
{
    for (const char *text : {R"({"preset":"paper-config-1","max_reflection_order":1e400})",
                             R"({"preset":"paper-config-1","max_reflection_order":99999999999999999999})",
                             R"({"preset":"paper-config-1","chunk_size":-1})",
                             R"({"preset":"paper-config-1","frequencies":{"start_hz":1,"stop_hz":1e300,"step_hz":1e-300}})"})
    {
        try
        {
            deism::cli::parse_config(text);
            FAIL("accepted: " << text);
        }
        catch (const deism::ParseError &e)
        {
            CHECK(e.line() >= 1);
        }
        catch (const deism::ConfigError &e)
        {
            CHECK(std::string(e.what()).find("config ") == 0);
        }
    }
}
