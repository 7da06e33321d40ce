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

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

namespace deism::cli
{
    using nlohmann::json;

    namespace
    {
        constexpr double half_pi = pi / 2.0;

        // A JSON value together with its pointer, so every error names its location.
        class Node
        {
        public:
            Node(const json &value, std::string pointer) : value_(value), pointer_(std::move(pointer)) {}

            const json &value() const noexcept { return value_; }
            const std::string &pointer() const noexcept { return pointer_; }

            [[noreturn]] void fail(const std::string &message) const
            {
                throw ConfigError("config " + (pointer_.empty() ? std::string("/") : pointer_) + ": " + message);
            }

            void require_object(std::initializer_list<const char *> allowed) const
            {
                if (!value_.is_object())
                    fail("expected an object");
                for (const auto &item : value_.items())
                    if (std::find_if(allowed.begin(), allowed.end(),
                                     [&](const char *k) { return item.key() == k; }) == allowed.end())
                        child(item.key()).fail("unknown key");
            }

            bool has(const char *key) const { return value_.is_object() && value_.contains(key); }
            Node child(const std::string &key) const { return {value_.at(key), pointer_ + "/" + key}; }
            Node element(std::size_t i) const { return {value_.at(i), pointer_ + "/" + std::to_string(i)}; }

            double number() const
            {
                if (!value_.is_number())
                    fail("expected a number");
                const double v = value_.get<double>();
                if (!std::isfinite(v))
                    fail("expected a finite number");
                return v;
            }

            long long integer(long long lo, long long hi) const
            {
                if (!value_.is_number_integer())
                    fail("expected an integer");
                if (value_.is_number_unsigned())
                {
                    const auto u = value_.get<std::uint64_t>();
                    if (u > static_cast<std::uint64_t>(hi))
                        fail("integer out of range");
                    return static_cast<long long>(u);
                }
                const auto v = value_.get<long long>();
                if (v < lo || v > hi)
                    fail("integer out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
                return v;
            }

            std::uint64_t unsigned_integer() const
            {
                if (!value_.is_number_integer())
                    fail("expected a non-negative integer");
                if (value_.is_number_unsigned())
                    return value_.get<std::uint64_t>();
                const auto v = value_.get<long long>();
                if (v < 0)
                    fail("expected a non-negative integer");
                return static_cast<std::uint64_t>(v);
            }

            bool boolean() const
            {
                if (!value_.is_boolean())
                    fail("expected true or false");
                return value_.get<bool>();
            }

            std::string string() const
            {
                if (!value_.is_string())
                    fail("expected a string");
                return value_.get<std::string>();
            }

            std::size_t array_size() const
            {
                if (!value_.is_array())
                    fail("expected an array");
                return value_.size();
            }

            Vec3 vec3() const
            {
                if (array_size() != 3)
                    fail("expected an array of 3 numbers");
                return {element(0).number(), element(1).number(), element(2).number()};
            }

            std::vector<double> numbers() const
            {
                std::vector<double> out;
                for (std::size_t i = 0; i < array_size(); ++i)
                    out.push_back(element(i).number());
                return out;
            }

        private:
            const json &value_;
            std::string pointer_;
        };

        double orientation_yaw(const Node &node)
        {
            const std::string s = node.string();
            if (s == "+x")
                return 0.0;
            if (s == "-x")
                return pi;
            if (s == "+y")
                return half_pi;
            if (s == "-y")
                return -half_pi;
            node.fail("orientation must be one of +x, -x, +y, -y");
        }

        std::string orientation_name(double yaw)
        {
            if (yaw == 0.0)
                return "+x";
            if (yaw == pi)
                return "-x";
            if (yaw == half_pi)
                return "+y";
            if (yaw == -half_pi)
                return "-y";
            return {};
        }

        std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p)
        {
            std::filesystem::path path(p);
            if (path.is_relative() && !base.empty())
                path = base / path;
            return path.lexically_normal();
        }

        void read_directivity(const Node &node, DirectivitySelector &sel, DirectivityKind kind, std::uint64_t seed,
                              const std::filesystem::path &base)
        {
            node.require_object({"type", "path", "offset_m", "theta_rad", "phi_rad", "max_order", "monopoles",
                                 "r0_m", "seed"});
            if (!node.has("type"))
                node.fail("missing 'type' (monopole, point_receiver, synthetic or file)");
            const Node type = node.child("type");
            const std::string t = type.string();
            const auto only = [&](std::initializer_list<const char *> keys)
            {
                for (const auto &item : node.value().items())
                    if (item.key() != "type" && std::find_if(keys.begin(), keys.end(), [&](const char *k)
                                                             { return item.key() == k; }) == keys.end())
                        node.child(item.key()).fail("not valid for directivity type '" + t + "'");
            };
            if (t == "monopole")
            {
                only({});
                sel.type = DirectivitySelector::Type::monopole;
            }
            else if (t == "point_receiver")
            {
                only({"offset_m", "theta_rad", "phi_rad", "max_order"});
                if (kind != DirectivityKind::receiver)
                    type.fail("point_receiver is only valid for the receiver");
                sel.type = DirectivitySelector::Type::point_receiver;
                if (node.has("offset_m"))
                    sel.offset.d_y = node.child("offset_m").number();
                if (node.has("theta_rad"))
                    sel.offset.theta_y = node.child("theta_rad").number();
                if (node.has("phi_rad"))
                    sel.offset.phi_y = node.child("phi_rad").number();
                if (node.has("max_order"))
                    sel.offset.max_order_cap = static_cast<int>(node.child("max_order").integer(-1, 40));
                if (sel.offset.d_y < 0.0)
                    node.child("offset_m").fail("must be non-negative");
                if (sel.offset.theta_y < 0.0 || sel.offset.theta_y > pi)
                    node.child("theta_rad").fail("must lie in [0, pi]");
            }
            else if (t == "synthetic")
            {
                only({"max_order", "monopoles", "r0_m", "seed"});
                sel.type = DirectivitySelector::Type::synthetic;
                sel.synthetic.kind = kind;
                sel.synthetic.seed = seed;
                if (node.has("max_order"))
                    sel.synthetic.max_order = static_cast<int>(node.child("max_order").integer(0, 40));
                if (node.has("monopoles"))
                    sel.synthetic.monopole_count = static_cast<int>(node.child("monopoles").integer(1, 1000));
                if (node.has("r0_m"))
                {
                    sel.synthetic.r0 = node.child("r0_m").number();
                    if (!(sel.synthetic.r0 > 0.0))
                        node.child("r0_m").fail("must be positive");
                }
                if (node.has("seed"))
                    sel.synthetic.seed = node.child("seed").unsigned_integer();
            }
            else if (t == "file")
            {
                only({"path"});
                if (!node.has("path"))
                    node.fail("missing 'path'");
                sel.type = DirectivitySelector::Type::file;
                sel.path = resolve(base, node.child("path").string());
            }
            else
            {
                type.fail("unknown directivity type '" + t + "'");
            }
        }

        void read_pose(const Node &node, TransducerPose &pose, DirectivitySelector &sel, DirectivityKind kind,
                       std::uint64_t default_seed, const std::filesystem::path &base)
        {
            node.require_object({"position_m", "orientation", "yaw_rad", "directivity"});
            if (node.has("position_m"))
                pose.position = node.child("position_m").vec3();
            if (node.has("orientation") && node.has("yaw_rad"))
                node.child("yaw_rad").fail("give either 'orientation' or 'yaw_rad', not both");
            if (node.has("orientation"))
                pose.yaw = orientation_yaw(node.child("orientation"));
            if (node.has("yaw_rad"))
                pose.yaw = node.child("yaw_rad").number();
            if (node.has("directivity"))
                read_directivity(node.child("directivity"), sel, kind, default_seed, base);
        }

        std::size_t line_of(std::string_view text, std::size_t byte)
        {
            const std::size_t end = std::min(byte, text.size());
            return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(end), '\n'));
        }

        // Byte offset of the first numeric literal outside strings that does not fit a double.
        std::size_t overflowing_number(std::string_view text)
        {
            bool in_string = false;
            for (std::size_t i = 0; i < text.size(); ++i)
            {
                const char c = text[i];
                if (in_string)
                {
                    if (c == '\\')
                        ++i;
                    else if (c == '"')
                        in_string = false;
                    continue;
                }
                if (c == '"')
                {
                    in_string = true;
                    continue;
                }
                if (c != '-' && !(c >= '0' && c <= '9'))
                    continue;
                std::size_t j = i;
                while (j < text.size() && std::strchr("+-.eE0123456789", text[j]) != nullptr)
                    ++j;
                const std::string token(text.substr(i, j - i));
                if (std::isinf(std::strtod(token.c_str(), nullptr)))
                    return i;
                i = j - 1;
            }
            return 0;
        }

        json selector_json(const DirectivitySelector &sel)
        {
            switch (sel.type)
            {
            case DirectivitySelector::Type::monopole:
                return {{"type", "monopole"}};
            case DirectivitySelector::Type::point_receiver:
                return {{"type", "point_receiver"},
                        {"offset_m", sel.offset.d_y},
                        {"theta_rad", sel.offset.theta_y},
                        {"phi_rad", sel.offset.phi_y},
                        {"max_order", sel.offset.max_order_cap}};
            case DirectivitySelector::Type::synthetic:
                return {{"type", "synthetic"},
                        {"max_order", sel.synthetic.max_order},
                        {"monopoles", sel.synthetic.monopole_count},
                        {"r0_m", sel.synthetic.r0},
                        {"seed", sel.synthetic.seed}};
            case DirectivitySelector::Type::file:
                return {{"type", "file"}, {"path", sel.path.generic_string()}};
            }
            return {};
        }

        const char *sign_mode_name(FsrrSignMode m)
        {
            switch (m)
            {
            case FsrrSignMode::random_sign:
                return "random_sign";
            case FsrrSignMode::uniform_interval:
                return "uniform_interval";
            case FsrrSignMode::all_plus:
                return "all_plus";
            }
            return "random_sign";
        }
    }

    std::vector<double> FrequencyGrid::values() const
    {
        if (!list_hz.empty())
            return list_hz;
        std::vector<double> out;
        if (!(step_hz > 0.0) || !(start_hz > 0.0) || !(stop_hz >= start_hz))
            return out;
        const auto count = static_cast<std::size_t>(std::floor((stop_hz - start_hz) / step_hz + 1e-9)) + 1;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(start_hz + static_cast<double>(i) * step_hz);
        return out;
    }

    std::vector<std::string> preset_names()
    {
        return {"paper-config-1", "paper-config-2", "paper-config-3", "paper-config-4", "paper-config-5"};
    }

    void apply_preset(std::string_view name, SimulationConfig &config)
    {
        struct Layout
        {
            Vec3 src;
            double src_yaw;
            Vec3 rcv;
            double rcv_yaw;
        };
        static const Layout layouts[] = {
            {{1.1, 1.1, 1.3}, 0.0, {2.9, 1.9, 1.3}, pi},
            {{1.1, 1.1, 1.3}, 0.0, {1.9, 1.6, 1.4}, pi},
            {{1.1, 1.1, 1.3}, 0.0, {1.05, 1.1, 1.5}, 0.0}, // receiver on the source device, large cuboid
            {{0.4, 1.1, 1.3}, 0.0, {2.1, 1.6, 1.3}, pi},
            {{0.4, 1.1, 1.3}, 0.0, {2.5, 2.6, 1.3}, -half_pi},
        };
        const auto names = preset_names();
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            throw ConfigError("unknown preset '" + std::string(name) + "' (expected paper-config-1 .. paper-config-5)");
        const Layout &l = layouts[it - names.begin()];
        config.preset = std::string(name);
        config.scene.room = RoomSpec{};
        config.scene.room.dimensions = {4.0, 3.0, 2.5};
        config.scene.room.zeta = 18.0;
        config.scene.room.medium = Medium{343.0, 1.2};
        config.scene.source = {l.src, l.src_yaw};
        config.scene.receiver = {l.rcv, l.rcv_yaw};
    }

    SimulationConfig parse_config(std::string_view text, const std::filesystem::path &base_dir)
    {
        json doc;
        try
        {
            doc = json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e)
        {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_of(text, e.byte));
        }
        catch (const json::exception &e)
        {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_of(text, overflowing_number(text)));
        }

        try
        {
            SimulationConfig cfg;
            cfg.source_directivity.synthetic.kind = DirectivityKind::source;
            cfg.receiver_directivity.synthetic.kind = DirectivityKind::receiver;
            cfg.source_directivity.synthetic.seed = 1;
            cfg.receiver_directivity.synthetic.seed = 2;

            const Node root(doc, "");
            root.require_object({"$schema", "$comment", "preset", "room", "source", "receiver", "methods",
                                 "max_reflection_order", "cube_half_width", "angle_convention", "free_field",
                                 "frequencies", "rng_seed", "fsrr", "direct_path_override", "adaptive_truncation",
                                 "lc_contraction", "chunk_size", "output", "sweep", "bench"});

            if (root.has("preset"))
            {
                const Node p = root.child("preset");
                try
                {
                    apply_preset(p.string(), cfg);
                }
                catch (const ConfigError &)
                {
                    p.fail("unknown preset (expected paper-config-1 .. paper-config-5)");
                }
            }

            if (root.has("room"))
            {
                const Node room = root.child("room");
                room.require_object({"dimensions_m", "zeta", "speed_of_sound_m_s", "density_kg_m3"});
                if (room.has("dimensions_m"))
                    cfg.scene.room.dimensions = room.child("dimensions_m").vec3();
                if (room.has("zeta"))
                    cfg.scene.room.zeta = room.child("zeta").number();
                if (room.has("speed_of_sound_m_s"))
                    cfg.scene.room.medium.speed_of_sound = room.child("speed_of_sound_m_s").number();
                if (room.has("density_kg_m3"))
                    cfg.scene.room.medium.density = room.child("density_kg_m3").number();
                for (int a = 0; a < 3; ++a)
                    if (!(cfg.scene.room.dimensions[a] > 0.0))
                        room.child("dimensions_m").element(static_cast<std::size_t>(a)).fail("must be positive");
                if (!(cfg.scene.room.zeta > 0.0))
                    room.child("zeta").fail("must be positive");
                if (!(cfg.scene.room.medium.speed_of_sound > 0.0))
                    room.child("speed_of_sound_m_s").fail("must be positive");
                if (!(cfg.scene.room.medium.density > 0.0))
                    room.child("density_kg_m3").fail("must be positive");
            }

            if (root.has("source"))
                read_pose(root.child("source"), cfg.scene.source, cfg.source_directivity, DirectivityKind::source, 1,
                          base_dir);
            if (root.has("receiver"))
                read_pose(root.child("receiver"), cfg.scene.receiver, cfg.receiver_directivity,
                          DirectivityKind::receiver, 2, base_dir);

            if (root.has("methods"))
            {
                const Node m = root.child("methods");
                cfg.methods.clear();
                for (std::size_t i = 0; i < m.array_size(); ++i)
                {
                    const Node e = m.element(i);
                    MethodTag tag;
                    try
                    {
                        tag = parse_method(e.string());
                    }
                    catch (const ConfigError &err)
                    {
                        e.fail(err.what());
                    }
                    if (std::find(cfg.methods.begin(), cfg.methods.end(), tag) != cfg.methods.end())
                        e.fail("duplicate method");
                    cfg.methods.push_back(tag);
                }
                if (cfg.methods.empty())
                    m.fail("at least one method is required");
            }

            if (root.has("max_reflection_order"))
                cfg.scene.max_reflection_order = static_cast<int>(root.child("max_reflection_order").integer(0, 200));
            if (root.has("cube_half_width"))
                cfg.scene.image_options.cube_half_width =
                    static_cast<int>(root.child("cube_half_width").integer(-1, 200));
            if (root.has("angle_convention"))
            {
                const Node a = root.child("angle_convention");
                const std::string s = a.string();
                if (s == "absolute")
                    cfg.scene.image_options.angles = AngleConvention::absolute;
                else if (s == "signed")
                    cfg.scene.image_options.angles = AngleConvention::signed_component;
                else
                    a.fail("expected 'absolute' or 'signed'");
            }
            if (root.has("free_field"))
                cfg.scene.free_field = root.child("free_field").boolean();

            if (root.has("frequencies"))
            {
                const Node f = root.child("frequencies");
                f.require_object({"start_hz", "stop_hz", "step_hz", "list_hz"});
                if (f.has("list_hz") && (f.has("start_hz") || f.has("stop_hz") || f.has("step_hz")))
                    f.child("list_hz").fail("give either 'list_hz' or a start/stop/step range");
                if (f.has("list_hz"))
                {
                    const Node l = f.child("list_hz");
                    cfg.frequencies.list_hz = l.numbers();
                    if (cfg.frequencies.list_hz.empty())
                        l.fail("must not be empty");
                    for (std::size_t i = 0; i < cfg.frequencies.list_hz.size(); ++i)
                        if (!(cfg.frequencies.list_hz[i] > 0.0) ||
                            (i > 0 && !(cfg.frequencies.list_hz[i] > cfg.frequencies.list_hz[i - 1])))
                            l.element(i).fail("frequencies must be positive and strictly increasing");
                }
                if (f.has("start_hz"))
                    cfg.frequencies.start_hz = f.child("start_hz").number();
                if (f.has("stop_hz"))
                    cfg.frequencies.stop_hz = f.child("stop_hz").number();
                if (f.has("step_hz"))
                    cfg.frequencies.step_hz = f.child("step_hz").number();
                if (cfg.frequencies.list_hz.empty())
                {
                    if (!(cfg.frequencies.start_hz > 0.0))
                        f.fail("start_hz must be positive");
                    if (!(cfg.frequencies.step_hz > 0.0))
                        f.fail("step_hz must be positive");
                    if (!(cfg.frequencies.stop_hz >= cfg.frequencies.start_hz))
                        f.fail("stop_hz must not be below start_hz");
                    if ((cfg.frequencies.stop_hz - cfg.frequencies.start_hz) / cfg.frequencies.step_hz > 1e7)
                        f.fail("more than 10^7 frequencies requested");
                }
            }

            if (root.has("rng_seed"))
                cfg.rng_seed = root.child("rng_seed").unsigned_integer();

            if (root.has("fsrr"))
            {
                const Node f = root.child("fsrr");
                f.require_object({"sign_mode", "measurement_radius_m"});
                if (f.has("sign_mode"))
                {
                    const Node s = f.child("sign_mode");
                    const std::string v = s.string();
                    if (v == "random_sign")
                        cfg.fsrr.sign_mode = FsrrSignMode::random_sign;
                    else if (v == "uniform_interval")
                        cfg.fsrr.sign_mode = FsrrSignMode::uniform_interval;
                    else if (v == "all_plus")
                        cfg.fsrr.sign_mode = FsrrSignMode::all_plus;
                    else
                        s.fail("expected random_sign, uniform_interval or all_plus");
                }
                if (f.has("measurement_radius_m"))
                {
                    cfg.fsrr.measurement_radius = f.child("measurement_radius_m").number();
                    if (!(cfg.fsrr.measurement_radius > 0.0))
                        f.child("measurement_radius_m").fail("must be positive");
                }
            }

            if (root.has("direct_path_override"))
                cfg.direct_path_override = resolve(base_dir, root.child("direct_path_override").string());
            if (root.has("adaptive_truncation"))
                cfg.adaptive_truncation = root.child("adaptive_truncation").boolean();
            if (root.has("lc_contraction"))
            {
                const Node c = root.child("lc_contraction");
                const std::string s = c.string();
                if (s == "factored")
                    cfg.lc_contraction = LcContraction::factored;
                else if (s == "mode_pairs")
                    cfg.lc_contraction = LcContraction::mode_pairs;
                else
                    c.fail("expected 'factored' or 'mode_pairs'");
            }
            if (root.has("chunk_size"))
                cfg.chunk_size = static_cast<std::size_t>(root.child("chunk_size").integer(1, 1 << 30));

            if (root.has("output"))
            {
                const Node o = root.child("output");
                o.require_object({"directory", "plot"});
                if (o.has("directory"))
                    cfg.output_directory = resolve(base_dir, o.child("directory").string());
                if (o.has("plot"))
                {
                    cfg.plot = o.child("plot").string();
                    if (cfg.plot != "none" && cfg.plot != "svg")
                        o.child("plot").fail("expected 'none' or 'svg'");
                }
            }

            if (root.has("sweep"))
            {
                const Node s = root.child("sweep");
                s.require_object({"distances_m", "orders", "direction"});
                if (s.has("distances_m"))
                {
                    const Node d = s.child("distances_m");
                    cfg.sweep.distances_m = d.numbers();
                    for (std::size_t i = 0; i < cfg.sweep.distances_m.size(); ++i)
                        if (!(cfg.sweep.distances_m[i] > 0.0))
                            d.element(i).fail("distances must be positive");
                }
                if (s.has("orders"))
                {
                    const Node o = s.child("orders");
                    cfg.sweep.orders.clear();
                    for (std::size_t i = 0; i < o.array_size(); ++i)
                        cfg.sweep.orders.push_back(static_cast<int>(o.element(i).integer(0, 200)));
                }
                if (s.has("direction"))
                {
                    const Vec3 dir = s.child("direction").vec3();
                    if (!(norm(dir) > 0.0))
                        s.child("direction").fail("must be a non-zero vector");
                    cfg.sweep.direction = dir;
                }
            }

            if (root.has("bench"))
            {
                const Node b = root.child("bench");
                b.require_object({"repeats"});
                if (b.has("repeats"))
                    cfg.bench_repeats = static_cast<int>(b.child("repeats").integer(1, 1000));
            }

            validate_config(cfg);
            return cfg;
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }

    SimulationConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open config '" + path.string() + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_config(buf.str(), path.parent_path());
    }

    void validate_config(const SimulationConfig &config)
    {
        config.scene.validate();
        if (config.frequencies.values().empty())
            throw ConfigError("config /frequencies: the grid is empty");
        if (config.methods.empty())
            throw ConfigError("config /methods: at least one method is required");
        const bool point_receiver =
            config.receiver_directivity.type == DirectivitySelector::Type::point_receiver;
        if (std::find(config.methods.begin(), config.methods.end(), MethodTag::gism) != config.methods.end() &&
            !point_receiver)
            throw ConfigError("config /methods: GISM needs a receiver directivity of type point_receiver");
        if (config.chunk_size == 0)
            throw ConfigError("config /chunk_size: must be positive");
        if (config.plot != "none" && config.plot != "svg")
            throw ConfigError("config /output/plot: expected 'none' or 'svg'");
    }

    std::string canonical_json(const SimulationConfig &config)
    {
        const auto &s = config.scene;
        json methods = json::array();
        for (MethodTag t : config.methods)
            methods.push_back(std::string(method_name(t)));
        const auto pose = [](const TransducerPose &p, const DirectivitySelector &sel)
        {
            json j = {{"position_m", p.position}, {"yaw_rad", p.yaw}, {"directivity", selector_json(sel)}};
            const std::string o = orientation_name(p.yaw);
            if (!o.empty())
                j["orientation"] = o;
            return j;
        };
        json j = {
            {"preset", config.preset},
            {"room",
             {{"dimensions_m", s.room.dimensions},
              {"zeta", s.room.zeta},
              {"speed_of_sound_m_s", s.room.medium.speed_of_sound},
              {"density_kg_m3", s.room.medium.density}}},
            {"source", pose(s.source, config.source_directivity)},
            {"receiver", pose(s.receiver, config.receiver_directivity)},
            {"methods", methods},
            {"max_reflection_order", s.max_reflection_order},
            {"cube_half_width", s.image_options.cube_half_width},
            {"angle_convention", s.image_options.angles == AngleConvention::absolute ? "absolute" : "signed"},
            {"free_field", s.free_field},
            {"frequencies_hz", config.frequencies.values()},
            {"rng_seed", config.rng_seed},
            {"fsrr",
             {{"sign_mode", sign_mode_name(config.fsrr.sign_mode)},
              {"measurement_radius_m", config.fsrr.measurement_radius}}},
            {"direct_path_override", config.direct_path_override.generic_string()},
            {"adaptive_truncation", config.adaptive_truncation},
            {"lc_contraction", config.lc_contraction == LcContraction::factored ? "factored" : "mode_pairs"},
            {"chunk_size", config.chunk_size},
        };
        return j.dump();
    }

    std::string config_fingerprint(const SimulationConfig &config)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : canonical_json(config))
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
}
