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

#include "deism/cli/commands.hpp"
#include "deism/cli/svg.hpp"
#include "deism/directivity_io.hpp"
#include "deism/error.hpp"
#include "deism/ism_baselines.hpp"
#include "deism/metrics.hpp"
#include "deism/synthetic.hpp"

#include "../text_util.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace deism::cli
{
    namespace fs = std::filesystem;

    namespace
    {
        struct Prepared
        {
            std::vector<double> frequencies;
            Directivity source;
            Directivity receiver;
            std::optional<std::vector<cdouble>> override_values;
        };

        Prepared prepare(const SimulationConfig &config, bool with_override = true)
        {
            Prepared p;
            p.frequencies = config.frequencies.values();
            const Medium &medium = config.scene.room.medium;
            p.source = build_directivity(config.source_directivity, DirectivityKind::source, p.frequencies, medium);
            p.receiver =
                build_directivity(config.receiver_directivity, DirectivityKind::receiver, p.frequencies, medium);
            if (with_override && !config.direct_path_override.empty())
                p.override_values = load_direct_path_override(config.direct_path_override, p.frequencies);
            return p;
        }

        DeismRequest make_request(const SimulationConfig &config, const Scene &scene, const Prepared &p,
                                  DeismMethod method)
        {
            DeismRequest r;
            r.scene = scene;
            r.source = p.source;
            r.receiver = p.receiver;
            r.frequencies = p.frequencies;
            r.method = method;
            r.direct_path_override = p.override_values;
            r.adaptive_truncation = config.adaptive_truncation;
            return r;
        }

        EngineOptions engine_options(const SimulationConfig &config, const ExecutionOptions &execution)
        {
            EngineOptions o;
            o.execution = execution;
            o.lc_contraction = config.lc_contraction;
            return o;
        }

        RtfSpectrum run_method(const SimulationConfig &config, const Scene &scene, const Prepared &p,
                               MethodTag method, const ExecutionOptions &execution, DeismCounters *counters)
        {
            RtfSpectrum s;
            switch (method)
            {
            case MethodTag::ism_omni:
                s = rtf_ism_omni(scene, p.frequencies, execution);
                break;
            case MethodTag::gism:
                if (config.receiver_directivity.type != DirectivitySelector::Type::point_receiver)
                    throw ConfigError("GISM needs a receiver directivity of type point_receiver");
                s = rtf_gism(scene, p.source, config.receiver_directivity.offset, p.frequencies);
                break;
            case MethodTag::fsrr:
            {
                FsrrConfig fsrr = config.fsrr;
                fsrr.rng_seed = config.rng_seed;
                s = rtf_fsrr(scene, p.source, p.receiver, p.frequencies, fsrr, execution);
                break;
            }
            case MethodTag::deism:
            case MethodTag::deism_lc:
            {
                const auto request =
                    make_request(config, scene, p, method == MethodTag::deism ? DeismMethod::full : DeismMethod::lc);
                DeismResult r = run_deism(request, engine_options(config, execution));
                if (counters)
                    *counters = r.counters;
                s = std::move(r.spectrum);
                s.metadata["paths"] = std::to_string(r.counters.paths);
                s.metadata["inner_iterations"] = std::to_string(r.counters.inner_iterations);
                break;
            }
            }
            s.method = method;
            s.fingerprint = config_fingerprint(config);
            s.metadata["preset"] = config.preset;
            s.metadata["rng_seed"] = std::to_string(config.rng_seed);
            s.metadata["max_reflection_order"] = std::to_string(scene.max_reflection_order);
            return s;
        }

        fs::path ensure_directory(const fs::path &dir)
        {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec || !fs::is_directory(dir))
                throw IoError("cannot create output directory '" + dir.string() + "'");
            return dir;
        }

        void write_text(const fs::path &path, const std::string &text)
        {
            std::ofstream out(path, std::ios::binary);
            if (!out)
                throw IoError("cannot write '" + path.string() + "'");
            out << text;
            if (!out)
                throw IoError("write failed for '" + path.string() + "'");
        }

        std::string lower_method(MethodTag t)
        {
            std::string s(method_name(t));
            std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
            return s;
        }

        Vec3 sweep_direction(const SimulationConfig &config)
        {
            Vec3 d = config.sweep.direction.value_or(Vec3{
                config.scene.receiver.position[0] - config.scene.source.position[0],
                config.scene.receiver.position[1] - config.scene.source.position[1],
                config.scene.receiver.position[2] - config.scene.source.position[2]});
            const double n = norm(d);
            if (!(n > 0.0))
                return {1.0, 0.0, 0.0};
            return {d[0] / n, d[1] / n, d[2] / n};
        }

        double seconds_since(std::chrono::steady_clock::time_point t0)
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    }

    int exit_code_for(const std::exception &e) noexcept
    {
        if (dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const DomainError *>(&e) ||
            dynamic_cast<const ParseError *>(&e))
            return exit_config;
        if (dynamic_cast<const ConditioningError *>(&e) || dynamic_cast<const SingularityError *>(&e) ||
            dynamic_cast<const ResourceError *>(&e))
            return exit_numeric;
        if (dynamic_cast<const IoError *>(&e))
            return exit_io;
        return exit_internal;
    }

    ExecutionOptions execution_options(const SimulationConfig &config, std::optional<int> workers_flag)
    {
        ExecutionOptions o;
        o.chunk_size = config.chunk_size;
        o.workers = 0;
        if (workers_flag)
        {
            if (*workers_flag < 0)
                throw ConfigError("--workers must be non-negative");
            o.workers = static_cast<unsigned>(*workers_flag);
        }
        else if (const char *env = std::getenv("DEISM_WORKERS"); env && *env)
        {
            int w = 0;
            try
            {
                w = text::parse_int(env, 0);
            }
            catch (const ParseError &)
            {
                throw ConfigError(std::string("DEISM_WORKERS is not an integer: '") + env + "'");
            }
            if (w < 0)
                throw ConfigError("DEISM_WORKERS must be non-negative");
            o.workers = static_cast<unsigned>(w);
        }
        return o;
    }

    Directivity build_directivity(const DirectivitySelector &selector, DirectivityKind kind,
                                  const std::vector<double> &frequencies, const Medium &medium)
    {
        switch (selector.type)
        {
        case DirectivitySelector::Type::monopole:
            return monopole_directivity(frequencies, medium, kind);
        case DirectivitySelector::Type::point_receiver:
            if (kind != DirectivityKind::receiver)
                throw ConfigError("point_receiver directivity is only valid for the receiver");
            return point_receiver_directivity(frequencies, medium, selector.offset.d_y, selector.offset.theta_y,
                                              selector.offset.phi_y, selector.offset.max_order_cap);
        case DirectivitySelector::Type::synthetic:
        {
            SyntheticDirectivitySpec spec = selector.synthetic;
            spec.kind = kind;
            return synthetic_directivity(spec, frequencies, medium);
        }
        case DirectivitySelector::Type::file:
        {
            Directivity d = read_directivity(selector.path);
            if (d.kind() != kind)
                throw ConfigError("directivity file '" + selector.path.string() + "' holds " +
                                  (d.kind() == DirectivityKind::source ? "source" : "receiver") + " coefficients");
            require_same_grid(d.frequencies(), frequencies, "directivity file " + selector.path.string());
            return d;
        }
        }
        throw ConfigError("unknown directivity selector");
    }

    std::vector<cdouble> load_direct_path_override(const fs::path &path, const std::vector<double> &frequencies)
    {
        const RtfSpectrum s = read_spectrum(path);
        require_same_grid(s.frequencies, frequencies, "direct_path_override");
        return s.values;
    }

    RtfSpectrum simulate_method(const SimulationConfig &config, MethodTag method, const ExecutionOptions &execution,
                                DeismCounters *counters)
    {
        validate_config(config);
        const Prepared p = prepare(config);
        return run_method(config, config.scene, p, method, execution, counters);
    }

    std::vector<RtfSpectrum> simulate(const SimulationConfig &config, const ExecutionOptions &execution)
    {
        validate_config(config);
        const Prepared p = prepare(config);
        std::vector<RtfSpectrum> out;
        for (MethodTag m : config.methods)
            out.push_back(run_method(config, config.scene, p, m, execution, nullptr));
        return out;
    }

    std::vector<SweepRow> sweep_distance(const SimulationConfig &config, const ExecutionOptions &execution)
    {
        validate_config(config);
        if (config.sweep.distances_m.empty())
            throw ConfigError("distance sweep needs at least one distance");
        const Prepared p = prepare(config, false);
        const Vec3 dir = sweep_direction(config);
        std::vector<SweepRow> rows;
        for (double d : config.sweep.distances_m)
        {
            if (!(d > 0.0))
                throw ConfigError("sweep distances must be positive");
            Scene scene = config.scene;
            scene.free_field = true;
            for (int a = 0; a < 3; ++a)
                scene.receiver.position[a] = scene.source.position[a] + d * dir[a];
            const RtfSpectrum full = run_method(config, scene, p, MethodTag::deism, execution, nullptr);
            const RtfSpectrum lc = run_method(config, scene, p, MethodTag::deism_lc, execution, nullptr);
            rows.push_back({d, relative_l2(full, lc)});
        }
        return rows;
    }

    std::vector<SweepRow> sweep_order(const SimulationConfig &config, const ExecutionOptions &execution,
                                      std::ostream &notices)
    {
        validate_config(config);
        if (config.sweep.orders.empty())
            throw ConfigError("order sweep needs at least one reflection order");
        const Prepared p = prepare(config);
        std::vector<SweepRow> rows;
        for (int order : config.sweep.orders)
        {
            if (order < 0)
                throw ConfigError("reflection orders must be non-negative");
            if (order == 0 && p.override_values)
            {
                notices << "notice: reflection order 0 omitted because the direct path is supplied externally\n";
                continue;
            }
            Scene scene = config.scene;
            scene.max_reflection_order = order;
            const RtfSpectrum full = run_method(config, scene, p, MethodTag::deism, execution, nullptr);
            const RtfSpectrum lc = run_method(config, scene, p, MethodTag::deism_lc, execution, nullptr);
            rows.push_back({static_cast<double>(order), relative_l2(full, lc)});
        }
        return rows;
    }

    void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows, const std::string &x_column)
    {
        out << x_column << ",e_l2\n";
        for (const auto &r : rows)
        {
            if (x_column == "order")
                out << static_cast<long long>(r.x);
            else
                out << text::format_double(r.x);
            out << ',' << text::format_double(r.e_l2) << '\n';
        }
    }

    std::string bench_report(const SimulationConfig &config, const ExecutionOptions &execution)
    {
        validate_config(config);
        const Prepared p = prepare(config);
        const auto repeats = std::max(1, config.bench_repeats);
        double best[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
        DeismCounters counters[2];
        const MethodTag tags[2] = {MethodTag::deism, MethodTag::deism_lc};
        for (int r = 0; r < repeats; ++r)
            for (int i = 0; i < 2; ++i)
            {
                const auto request =
                    make_request(config, config.scene, p, i == 0 ? DeismMethod::full : DeismMethod::lc);
                const auto t0 = std::chrono::steady_clock::now();
                const DeismResult result = run_deism(request, engine_options(config, execution));
                best[i] = std::min(best[i], seconds_since(t0));
                counters[i] = result.counters;
            }

        const double nf = static_cast<double>(p.frequencies.size());
        nlohmann::json methods = nlohmann::json::object();
        for (int i = 0; i < 2; ++i)
            methods[std::string(method_name(tags[i]))] = {
                {"wall_time_s", best[i]},
                {"frequencies_per_second", best[i] > 0.0 ? nf / best[i] : 0.0},
                {"paths", counters[i].paths},
                {"inner_iterations", counters[i].inner_iterations},
            };
        const double lc_iter = static_cast<double>(counters[1].inner_iterations);
        nlohmann::json report = {
            {"format", "deism-bench"},
            {"version", 1},
            {"artifact_version", std::string(artifact_version())},
            {"config_fingerprint", config_fingerprint(config)},
            {"frequency_count", p.frequencies.size()},
            {"source_max_order", p.source.max_order()},
            {"receiver_max_order", p.receiver.max_order()},
            {"max_reflection_order", config.scene.max_reflection_order},
            {"lc_contraction", config.lc_contraction == LcContraction::factored ? "factored" : "mode_pairs"},
            {"workers", resolve_workers(execution.workers)},
            {"repeats", repeats},
            {"methods", methods},
            {"speedup", best[1] > 0.0 ? best[0] / best[1] : 0.0},
            {"counter_ratio", lc_iter > 0.0 ? static_cast<double>(counters[0].inner_iterations) / lc_iter : 0.0},
        };
        return report.dump(2) + "\n";
    }

    void fit_directivity_command(const FitRequest &request, std::ostream &log)
    {
        const SampledSphereField field = read_sampled_field(request.input);
        WaveSpectrumFit fit;
        const Directivity d = directivity_from_field(field, request.max_order, request.medium, request.kind, &fit);
        write_directivity(request.output, d);
        log << "freq_hz,relative_residual\n";
        for (std::size_t i = 0; i < field.frequencies.size(); ++i)
            log << text::format_double(field.frequencies[i]) << ','
                << text::format_double(fit.relative_residual[i]) << '\n';
        log << "condition_number," << text::format_double(fit.condition_number) << '\n';
        log << "wrote " << request.output.string() << '\n';
    }

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Room transfer functions with directional sources and receivers", "deism"};
        app.require_subcommand(1);
        app.set_version_flag("--version", std::string(artifact_version()));

        struct Common
        {
            std::string config;
            std::vector<std::string> methods;
            std::optional<std::uint64_t> seed;
            std::optional<int> workers;
            std::string output;
            std::string plot;
        };
        Common c;
        const auto add_common = [&](CLI::App *sub, bool methods)
        {
            sub->add_option("--config", c.config, "JSON configuration file")->required();
            if (methods)
                sub->add_option("--method", c.methods, "Methods, comma separated")->delimiter(',');
            sub->add_option("--seed", c.seed, "Random seed");
            sub->add_option("--workers", c.workers, "Worker threads (0 = hardware)");
            sub->add_option("--output", c.output, "Output directory");
            sub->add_option("--plot", c.plot, "Plot format")->check(CLI::IsMember({"none", "svg"}));
        };

        auto *simulate_cmd = app.add_subcommand("simulate", "Compute RTF spectra for the configured methods");
        add_common(simulate_cmd, true);

        std::vector<double> distances;
        auto *distance_cmd = app.add_subcommand("sweep-distance", "Free-field LC error against distance");
        add_common(distance_cmd, false);
        distance_cmd->add_option("--distances", distances, "Distances in m, comma separated")->delimiter(',');

        std::vector<int> orders;
        auto *order_cmd = app.add_subcommand("sweep-order", "LC error against maximum reflection order");
        add_common(order_cmd, false);
        order_cmd->add_option("--orders", orders, "Reflection orders, comma separated")->delimiter(',');

        std::optional<int> repeats;
        auto *bench_cmd = app.add_subcommand("bench", "Time DEISM against DEISM_LC");
        add_common(bench_cmd, false);
        bench_cmd->add_option("--repeats", repeats, "Timing repetitions (minimum is reported)");

        std::string file_a, file_b;
        auto *compare_cmd = app.add_subcommand("compare", "Error metrics between two spectra");
        compare_cmd->add_option("reference", file_a, "Reference spectrum CSV")->required();
        compare_cmd->add_option("test", file_b, "Test spectrum CSV")->required();
        compare_cmd->add_option("--output", c.output, "Output directory");
        compare_cmd->add_option("--plot", c.plot, "Plot format")->check(CLI::IsMember({"none", "svg"}));

        FitRequest fit;
        std::string fit_input, fit_kind = "source";
        auto *fit_cmd = app.add_subcommand("fit-directivity", "Least-squares fit of a sampled sphere field");
        fit_cmd->add_option("input", fit_input, "Sampled field CSV")->required();
        fit_cmd->add_option("--order", fit.max_order, "Maximum spherical harmonic order")->required();
        fit_cmd->add_option("--kind", fit_kind, "Directivity role")->check(CLI::IsMember({"source", "receiver"}));
        fit_cmd->add_option("--config", c.config, "Configuration supplying the medium");
        fit_cmd->add_option("--output", c.output, "Output file (.csv) or directory");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_success : exit_config;
        }

        try
        {
            const auto load = [&]
            {
                SimulationConfig cfg = load_config(c.config);
                if (!c.methods.empty())
                {
                    cfg.methods.clear();
                    for (const auto &m : c.methods)
                    {
                        const MethodTag tag = parse_method(m);
                        if (std::find(cfg.methods.begin(), cfg.methods.end(), tag) == cfg.methods.end())
                            cfg.methods.push_back(tag);
                    }
                }
                if (c.seed)
                    cfg.rng_seed = *c.seed;
                if (!c.output.empty())
                    cfg.output_directory = c.output;
                if (!c.plot.empty())
                    cfg.plot = c.plot;
                if (!distances.empty())
                    cfg.sweep.distances_m = distances;
                if (!orders.empty())
                    cfg.sweep.orders = orders;
                if (repeats)
                {
                    if (*repeats < 1)
                        throw ConfigError("--repeats must be at least 1");
                    cfg.bench_repeats = *repeats;
                }
                validate_config(cfg);
                return cfg;
            };

            if (simulate_cmd->parsed())
            {
                const SimulationConfig cfg = load();
                const auto spectra = simulate(cfg, execution_options(cfg, c.workers));
                const fs::path dir = ensure_directory(cfg.output_directory);
                for (const auto &s : spectra)
                {
                    const fs::path path = dir / (lower_method(s.method) + ".csv");
                    write_spectrum(path, s);
                    out << "wrote " << path.string() << '\n';
                }
                if (cfg.plot == "svg")
                {
                    write_text(dir / "rtf.svg", spectrum_svg(spectra, "Room transfer function"));
                    out << "wrote " << (dir / "rtf.svg").string() << '\n';
                }
                out << "config_fingerprint " << config_fingerprint(cfg) << '\n';
            }
            else if (distance_cmd->parsed() || order_cmd->parsed())
            {
                const bool by_distance = distance_cmd->parsed();
                const SimulationConfig cfg = load();
                const auto exec = execution_options(cfg, c.workers);
                const auto rows = by_distance ? sweep_distance(cfg, exec) : sweep_order(cfg, exec, err);
                const std::string column = by_distance ? "distance_m" : "order";
                const std::string stem = by_distance ? "sweep_distance" : "sweep_order";
                const fs::path dir = ensure_directory(cfg.output_directory);
                std::ostringstream csv;
                write_sweep_csv(csv, rows, column);
                write_text(dir / (stem + ".csv"), csv.str());
                out << csv.str();
                if (cfg.plot == "svg")
                {
                    SeriesPlot plot;
                    plot.title = by_distance ? "LC error against distance" : "LC error against reflection order";
                    plot.x_label = by_distance ? "Distance [m]" : "Maximum reflection order";
                    plot.y_label = "Relative error";
                    plot.log_x = by_distance;
                    plot.log_y = true;
                    for (const auto &r : rows)
                    {
                        plot.x.push_back(r.x);
                        plot.y.push_back(r.e_l2);
                    }
                    write_text(dir / (stem + ".svg"), series_svg(plot));
                }
            }
            else if (bench_cmd->parsed())
            {
                const SimulationConfig cfg = load();
                const std::string report = bench_report(cfg, execution_options(cfg, c.workers));
                const fs::path dir = ensure_directory(cfg.output_directory);
                write_text(dir / "bench.json", report);
                out << report;
            }
            else if (compare_cmd->parsed())
            {
                const RtfSpectrum a = read_spectrum(file_a);
                const RtfSpectrum b = read_spectrum(file_b);
                const ComparisonReport report = compare_spectra(a, b);
                const std::string json = report_json(report);
                out << json << '\n';
                if (!c.output.empty())
                {
                    const fs::path dir = ensure_directory(c.output);
                    write_text(dir / "compare.json", json + "\n");
                    std::ostringstream csv;
                    write_report_csv(csv, report);
                    write_text(dir / "compare.csv", csv.str());
                    if (c.plot == "svg")
                        write_text(dir / "compare.svg", spectrum_svg({a, b}, "Comparison"));
                }
            }
            else if (fit_cmd->parsed())
            {
                fit.input = fit_input;
                fit.kind = fit_kind == "receiver" ? DirectivityKind::receiver : DirectivityKind::source;
                if (!c.config.empty())
                    fit.medium = load_config(c.config).scene.room.medium;
                fs::path target = c.output.empty() ? fs::path("directivity.csv") : fs::path(c.output);
                if (target.extension() != ".csv")
                    target = ensure_directory(target) / "directivity.csv";
                fit.output = target;
                fit_directivity_command(fit, out);
            }
            return exit_success;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_code_for(e);
        }
    }
}
