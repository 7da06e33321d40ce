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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero on any failure.
#include "deism/cli/commands.hpp"
#include "deism/cli/config.hpp"
#include "deism/deism.hpp"
#include "deism/directivity.hpp"
#include "deism/ism_baselines.hpp"
#include "deism/metrics.hpp"
#include "deism/room.hpp"
#include "deism/synthetic.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace deism;
namespace fs = std::filesystem;

namespace
{
    // Tolerances.
    constexpr double monopole_chain_tol = 1e-10;
    constexpr double monopole_chain_seconds = 60.0;
    constexpr double gism_tol = 1e-9;
    constexpr double mirror_tol = 1e-12;
    constexpr double slope_lo = -1.3, slope_hi = -0.7;
    constexpr double far_ratio_min = 5.0;
    constexpr double plateau_spread = 0.10;
    constexpr double speedup_min = 3.0;
    constexpr double counter_lo = 0.5, counter_hi = 1.5;
    constexpr double absorption_target = 0.1994, absorption_tol = 0.001;
    constexpr double roundtrip_tol = 1e-9;
    constexpr double chunk_tol = 1e-12;

    const Medium air{};

    struct Outcome
    {
        bool pass;
        std::string detail;
    };

    std::string fmt(const char *f, double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, f, v);
        return buf;
    }

    std::vector<double> grid(double start, double stop, double step)
    {
        std::vector<double> out;
        for (int i = 0; start + i * step <= stop + 1e-9; ++i)
            out.push_back(start + i * step);
        return out;
    }

    Scene preset_scene(const char *name, int order)
    {
        cli::SimulationConfig c;
        cli::apply_preset(name, c);
        c.scene.max_reflection_order = order;
        return c.scene;
    }

    double max_pointwise_rel(const RtfSpectrum &a, const RtfSpectrum &b)
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i)
            worst = std::max(worst, std::abs(a.values[i] - b.values[i]) / std::abs(a.values[i]));
        return worst;
    }

    Directivity synthetic(int order, std::uint64_t seed, DirectivityKind kind, const std::vector<double> &freqs)
    {
        SyntheticDirectivitySpec spec;
        spec.max_order = order;
        spec.seed = seed;
        spec.kind = kind;
        return synthetic_directivity(spec, freqs, air);
    }

    DeismRequest request(const Scene &scene, Directivity s, Directivity r, const std::vector<double> &freqs,
                         DeismMethod method)
    {
        DeismRequest q;
        q.scene = scene;
        q.source = std::move(s);
        q.receiver = std::move(r);
        q.frequencies = freqs;
        q.method = method;
        return q;
    }

    EngineOptions single_thread(LcContraction contraction = LcContraction::factored)
    {
        EngineOptions o;
        o.execution.workers = 1;
        o.lc_contraction = contraction;
        return o;
    }

    Outcome monopole_chain()
    {
        const Scene scene = preset_scene("paper-config-1", 10);
        const auto freqs = grid(20.0, 1000.0, 20.0);
        const auto t0 = std::chrono::steady_clock::now();
        const auto req = request(scene, monopole_directivity(freqs, air, DirectivityKind::source),
                                 monopole_directivity(freqs, air, DirectivityKind::receiver), freqs,
                                 DeismMethod::full);
        const RtfSpectrum omni = rtf_ism_omni(scene, freqs, ExecutionOptions{1, 256});
        const RtfSpectrum full = rtf_deism(req, single_thread()).spectrum;
        const RtfSpectrum lc = rtf_deism_lc(req, single_thread()).spectrum;
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double worst =
            std::max({max_pointwise_rel(omni, full), max_pointwise_rel(omni, lc), max_pointwise_rel(full, lc)});
        return {worst <= monopole_chain_tol && seconds <= monopole_chain_seconds,
                "max pairwise relative error " + fmt("%.3e", worst) + " (<= 1e-10), " + fmt("%.2f", seconds) +
                    " s (<= 60 s)"};
    }

    Outcome gism_equivalence()
    {
        const Scene scene = preset_scene("paper-config-1", 5);
        const auto freqs = grid(20.0, 1000.0, 50.0);
        const Directivity src = synthetic(3, 1, DirectivityKind::source, freqs);
        std::mt19937_64 rng(314);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 2; ++trial)
        {
            const ObservationOffset offset{0.1, std::acos(2.0 * u01(rng) - 1.0), 2.0 * pi * u01(rng) - pi, -1};
            const RtfSpectrum gism = rtf_gism(scene, src, offset, freqs);
            Scene s = scene;
            s.receiver.yaw = 0.0;
            const auto req = request(
                s, src, point_receiver_directivity(freqs, air, offset.d_y, offset.theta_y, offset.phi_y, -1), freqs,
                DeismMethod::full);
            worst = std::max(worst, relative_l2(gism, rtf_deism(req, single_thread()).spectrum));
        }
        return {worst <= gism_tol, "relative_l2 " + fmt("%.3e", worst) + " (<= 1e-9) over two offset directions"};
    }

    Outcome mirror_identities()
    {
        std::mt19937_64 rng(2718);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 500; ++trial)
        {
            RoomSpec room;
            room.dimensions = {2.0 + 6.0 * u01(rng), 2.0 + 4.0 * u01(rng), 2.0 + 2.0 * u01(rng)};
            Vec3 src, rcv;
            for (int a = 0; a < 3; ++a)
            {
                src[a] = (0.05 + 0.9 * u01(rng)) * room.dimensions[a];
                rcv[a] = (0.05 + 0.9 * u01(rng)) * room.dimensions[a];
            }
            const auto images = generate_images(room, src, rcv, 6);
            const ImageRecord &img = images[rng() % images.size()];
            const int n = static_cast<int>(rng() % 6);
            const int m = static_cast<int>(rng() % (2 * n + 1)) - n;
            const auto dev = mirror_sh_identity_deviation(img, n, m);
            worst = std::max({worst, dev.mirror, dev.opposite});
        }
        return {worst <= mirror_tol, "max deviation " + fmt("%.3e", worst) + " over 500 cases (<= 1e-12)"};
    }

    double loglog_slope(const std::vector<cli::SweepRow> &rows)
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(rows.size());
        for (const auto &r : rows)
        {
            const double x = std::log10(r.x), y = std::log10(r.e_l2);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    cli::SimulationConfig synthetic_config(const char *preset)
    {
        cli::SimulationConfig c;
        cli::apply_preset(preset, c);
        c.source_directivity.type = cli::DirectivitySelector::Type::synthetic;
        c.source_directivity.synthetic.seed = 1;
        c.receiver_directivity.type = cli::DirectivitySelector::Type::synthetic;
        c.receiver_directivity.synthetic.seed = 2;
        return c;
    }

    Outcome far_field_shape()
    {
        cli::SimulationConfig c = synthetic_config("paper-config-1");
        c.frequencies.list_hz = {500.0};
        c.sweep.distances_m = {2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
        const auto rows = cli::sweep_distance(c, ExecutionOptions{1, 256});
        const double slope = loglog_slope(rows);
        const double ratio = rows[2].e_l2 / rows[5].e_l2;
        std::string values;
        for (const auto &r : rows)
            values += fmt(" %.3g", r.e_l2);
        return {slope >= slope_lo && slope <= slope_hi && ratio >= far_ratio_min,
                "slope " + fmt("%.3f", slope) + " (in [-1.3, -0.7]), e(10)/e(100) " + fmt("%.2f", ratio) +
                    " (>= 5); e:" + values};
    }

    Outcome reflection_order_plateau()
    {
        cli::SimulationConfig c = synthetic_config("paper-config-2");
        c.frequencies = {20.0, 1000.0, 20.0, {}};
        c.sweep.orders = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        std::ostringstream notices;
        const auto rows = cli::sweep_order(c, ExecutionOptions{1, 256}, notices);
        const double a = rows[7].e_l2, b = rows[8].e_l2, d = rows[9].e_l2;
        const double spread = (std::max({a, b, d}) - std::min({a, b, d})) / std::min({a, b, d});
        bool below = true;
        std::string values;
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            values += fmt(" %.4f", rows[i].e_l2);
            if (i > 0)
                below = below && rows[i].e_l2 < rows[0].e_l2;
        }
        return {spread <= plateau_spread && below, "last-three spread " + fmt("%.3f", spread) +
                                                       " (<= 0.10), all below order 1: " + (below ? "yes" : "no") +
                                                       "; e:" + values};
    }

    Outcome complexity()
    {
        const Scene scene = preset_scene("paper-config-1", 25);
        const auto freqs = grid(20.0, 1000.0, 20.0);
        const auto src = synthetic(5, 1, DirectivityKind::source, freqs);
        const auto rcv = synthetic(5, 2, DirectivityKind::receiver, freqs);
        const auto options = single_thread(LcContraction::mode_pairs);
        const auto time = [&](DeismMethod method, DeismCounters &counters)
        {
            const auto t0 = std::chrono::steady_clock::now();
            counters = run_deism(request(scene, src, rcv, freqs, method), options).counters;
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        };
        DeismCounters full_c, lc_c;
        const double t_full = time(DeismMethod::full, full_c);
        const double t_lc = time(DeismMethod::lc, lc_c);
        const double speedup = t_full / t_lc;
        const double counter_ratio =
            static_cast<double>(full_c.inner_iterations) / static_cast<double>(lc_c.inner_iterations);
        const double n_plus_v = 10.0;
        const bool ok = speedup >= speedup_min && counter_ratio >= counter_lo * n_plus_v &&
                        counter_ratio <= counter_hi * n_plus_v;
        return {ok, "wall-clock ratio " + fmt("%.2f", speedup) + " (>= 3.0; " + fmt("%.2f", t_full) + " s vs " +
                        fmt("%.2f", t_lc) + " s), counter ratio " + fmt("%.2f", counter_ratio) + " (in [5, 15])"};
    }

    Outcome image_bookkeeping()
    {
        const RoomSpec room;
        bool counts_ok = true;
        std::string counts;
        for (int order = 0; order <= 3; ++order)
        {
            std::size_t brute = 0;
            for (int qx = -5; qx <= 5; ++qx)
                for (int qy = -5; qy <= 5; ++qy)
                    for (int qz = -5; qz <= 5; ++qz)
                        for (int p = 0; p < 8; ++p)
                            brute += std::abs(2 * qx - (p & 1)) + std::abs(2 * qy - ((p >> 1) & 1)) +
                                         std::abs(2 * qz - ((p >> 2) & 1)) <=
                                     order;
            const std::size_t got = generate_images(room, {1.1, 1.1, 1.3}, {2.9, 1.9, 1.3}, order).size();
            counts_ok = counts_ok && got == brute;
            counts += " " + std::to_string(got) + "/" + std::to_string(brute);
        }

        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        int mismatches = 0;
        for (int path = 0; path < 50; ++path)
        {
            RoomSpec r;
            r.dimensions = {2.0 + 6.0 * u01(rng), 2.0 + 4.0 * u01(rng), 2.0 + 2.0 * u01(rng)};
            r.zeta = 2.0 + 30.0 * u01(rng);
            Vec3 src, rcv;
            for (int a = 0; a < 3; ++a)
            {
                src[a] = (0.05 + 0.9 * u01(rng)) * r.dimensions[a];
                rcv[a] = (0.05 + 0.9 * u01(rng)) * r.dimensions[a];
            }
            const auto images = generate_images(r, src, rcv, 7);
            const ImageRecord &img = images[rng() % images.size()];
            const Vec3 angles = incident_angles(img.sI_to_r);
            double expected = 1.0;
            int total = 0;
            for (int a = 0; a < 3; ++a)
            {
                // Walls crossed by the straight unfolded ray from the image to the receiver.
                const double lo = std::min(img.image_position[a], rcv[a]);
                const double hi = std::max(img.image_position[a], rcv[a]);
                int hits = 0;
                for (long k = static_cast<long>(std::floor(lo / r.dimensions[a]));
                     k <= static_cast<long>(std::ceil(hi / r.dimensions[a])); ++k)
                    hits += (k * r.dimensions[a] > lo && k * r.dimensions[a] < hi);
                mismatches += hits != std::abs(img.q[a] - img.p[a]) + std::abs(img.q[a]);
                expected *= std::pow(reflection_coefficient(r.zeta, angles[a]), hits);
                total += hits;
            }
            mismatches += total != img.reflection_order;
            mismatches += std::abs(img.attenuation - expected) > 1e-14 * std::max(1.0, std::abs(expected));
        }
        return {counts_ok && mismatches == 0, "counts generated/brute-force for orders 0..3:" + counts +
                                                  "; unfolded-ray mismatches " + std::to_string(mismatches) +
                                                  " of 50 paths"};
    }

    Outcome reflection_coefficient_check()
    {
        const double beta = reflection_coefficient(18.0, 0.0);
        const double absorption = 1.0 - beta * beta;
        return {std::abs(absorption - absorption_target) <= absorption_tol,
                "1 - beta^2 = " + fmt("%.5f", absorption) + " (0.1994 +/- 0.001)"};
    }

    Outcome directivity_round_trip()
    {
        std::mt19937_64 rng(161803);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const auto freqs = grid(100.0, 1000.0, 100.0);
        std::vector<ShCoefficients> coeffs;
        for (std::size_t f = 0; f < freqs.size(); ++f)
        {
            ShCoefficients c = ShCoefficients::zeros(5);
            for (auto &v : c.values)
                v = {u(rng), u(rng)};
            coeffs.push_back(c);
        }
        const double r0 = 0.2;
        const Directivity original(DirectivityKind::source, r0, freqs, coeffs);
        const auto dirs = fibonacci_grid(128).directions;
        const SampledSphereField samples = sample_directivity(original, air, dirs, r0);
        const Directivity fitted = directivity_from_field(samples, 5, air, DirectivityKind::source);
        const SampledSphereField again = sample_directivity(fitted, air, dirs, r0);
        double worst = 0.0;
        for (std::size_t f = 0; f < freqs.size(); ++f)
        {
            double num = 0.0, den = 0.0;
            for (std::size_t j = 0; j < dirs.size(); ++j)
            {
                num += std::norm(again.at(f, j) - samples.at(f, j));
                den += std::norm(samples.at(f, j));
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
        return {worst <= roundtrip_tol, "max relative residual " + fmt("%.3e", worst) + " (<= 1e-9)"};
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    Outcome determinism()
    {
        const fs::path root = fs::temp_directory_path() / "deism_acceptance_determinism";
        fs::remove_all(root);
        fs::create_directories(root);
        const auto write_config = [&](const std::string &name, int chunk)
        {
            std::ofstream(root / name) << R"({
  "preset": "paper-config-2",
  "source": {"directivity": {"type": "synthetic", "max_order": 3, "seed": 11}},
  "receiver": {"directivity": {"type": "synthetic", "max_order": 3, "seed": 12}},
  "methods": ["ISM_OMNI", "FSRR", "DEISM", "DEISM_LC"],
  "max_reflection_order": 6,
  "frequencies": {"start_hz": 20, "stop_hz": 1000, "step_hz": 50},
  "rng_seed": 42,
  "chunk_size": )" << chunk << "\n}\n";
        };
        write_config("small.json", 16);
        write_config("large.json", 1000);
        const auto run = [&](const std::string &config, const std::string &out, const char *workers)
        {
            const std::string cfg = (root / config).string(), dir = (root / out).string();
            const char *argv[] = {"deism", "simulate", "--config", cfg.c_str(), "--output", dir.c_str(),
                                  "--workers", workers};
            std::ostringstream o, e;
            return cli::run_cli(8, argv, o, e);
        };
        const bool ran = run("small.json", "a", "1") == 0 && run("small.json", "b", "1") == 0 &&
                         run("small.json", "c", "3") == 0 && run("large.json", "d", "2") == 0;
        if (!ran)
            return {false, "simulate failed"};
        int differing = 0;
        double chunk_worst = 0.0;
        for (const char *stem : {"ism_omni", "fsrr", "deism", "deism_lc"})
        {
            for (const char *ext : {".csv", ".json"})
            {
                const std::string a = slurp(root / "a" / (std::string(stem) + ext));
                differing += a.empty() || a != slurp(root / "b" / (std::string(stem) + ext)) ||
                             a != slurp(root / "c" / (std::string(stem) + ext));
            }
            chunk_worst = std::max(chunk_worst, relative_l2(read_spectrum(root / "a" / (std::string(stem) + ".csv")),
                                                            read_spectrum(root / "d" / (std::string(stem) + ".csv"))));
        }
        fs::remove_all(root);
        return {differing == 0 && chunk_worst <= chunk_tol,
                "files differing across runs/workers " + std::to_string(differing) + " of 8, chunk-size relative_l2 " +
                    fmt("%.3e", chunk_worst) + " (<= 1e-12)"};
    }
}

int main(int argc, char **argv)
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"monopole_reduction_chain", monopole_chain},
        {"gism_equivalence", gism_equivalence},
        {"mirror_identities", mirror_identities},
        {"far_field_convergence_shape", far_field_shape},
        {"reflection_order_plateau", reflection_order_plateau},
        {"complexity_speedup", complexity},
        {"image_bookkeeping", image_bookkeeping},
        {"reflection_coefficient", reflection_coefficient_check},
        {"directivity_round_trip", directivity_round_trip},
        {"determinism", determinism},
    };
    const std::string only = argc > 1 ? argv[1] : "";
    int failures = 0;
    for (const auto &[name, check] : criteria)
    {
        if (!only.empty() && only != name)
            continue;
        Outcome o;
        try
        {
            o = check();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
