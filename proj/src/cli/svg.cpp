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

#include "deism/cli/svg.hpp"
#include "deism/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace deism::cli
{
    namespace
    {
        constexpr double width = 720.0;
        constexpr double panel_height = 260.0;
        constexpr double margin_left = 70.0;
        constexpr double margin_right = 20.0;
        constexpr double margin_top = 40.0;
        constexpr double panel_gap = 60.0;

        const char *const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", v);
            return buf;
        }

        std::string escape(const std::string &s)
        {
            std::string out;
            for (char c : s)
            {
                switch (c)
                {
                case '&':
                    out += "&amp;";
                    break;
                case '<':
                    out += "&lt;";
                    break;
                case '>':
                    out += "&gt;";
                    break;
                case '"':
                    out += "&quot;";
                    break;
                default:
                    out += c;
                }
            }
            return out;
        }

        struct Axis
        {
            double lo = 0.0;
            double hi = 1.0;
            bool log = false;

            double map(double v, double p0, double p1) const
            {
                const double a = log ? std::log10(lo) : lo;
                const double b = log ? std::log10(hi) : hi;
                const double t = ((log ? std::log10(v) : v) - a) / (b - a);
                return p0 + t * (p1 - p0);
            }
        };

        Axis make_axis(const std::vector<double> &values, bool log)
        {
            Axis axis{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), log};
            for (double v : values)
            {
                if (!std::isfinite(v) || (log && v <= 0.0))
                    continue;
                axis.lo = std::min(axis.lo, v);
                axis.hi = std::max(axis.hi, v);
            }
            if (!(axis.lo <= axis.hi))
                return {log ? 1.0 : 0.0, log ? 10.0 : 1.0, log};
            if (axis.lo == axis.hi)
            {
                if (log)
                    return {axis.lo / 2.0, axis.hi * 2.0, true};
                return {axis.lo - 1.0, axis.hi + 1.0, false};
            }
            if (log)
            {
                axis.lo = std::pow(10.0, std::floor(std::log10(axis.lo)));
                axis.hi = std::pow(10.0, std::ceil(std::log10(axis.hi)));
            }
            else
            {
                const double pad = 0.05 * (axis.hi - axis.lo);
                axis.lo -= pad;
                axis.hi += pad;
            }
            return axis;
        }

        std::vector<double> ticks(const Axis &axis)
        {
            std::vector<double> out;
            if (axis.log)
            {
                for (double d = axis.lo; d <= axis.hi * 1.0000001; d *= 10.0)
                    out.push_back(d);
                return out;
            }
            const double raw = (axis.hi - axis.lo) / 5.0;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            double step = mag;
            for (double f : {1.0, 2.0, 5.0, 10.0})
                if (f * mag >= raw)
                {
                    step = f * mag;
                    break;
                }
            for (double t = std::ceil(axis.lo / step) * step; t <= axis.hi; t += step)
                out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
            return out;
        }

        std::string tick_label(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", v);
            return buf;
        }

        struct Panel
        {
            double top;
            Axis x;
            Axis y;
            std::string x_label;
            std::string y_label;

            double px(double v) const { return x.map(v, margin_left, width - margin_right); }
            double py(double v) const { return y.map(v, top + panel_height, top); }
        };

        void draw_frame(std::ostringstream &o, const Panel &p)
        {
            o << "<rect x=\"" << num(margin_left) << "\" y=\"" << num(p.top) << "\" width=\""
              << num(width - margin_left - margin_right) << "\" height=\"" << num(panel_height)
              << "\" fill=\"none\" stroke=\"#333\"/>\n";
            for (double t : ticks(p.x))
            {
                const double x = p.px(t);
                o << "<line x1=\"" << num(x) << "\" y1=\"" << num(p.top) << "\" x2=\"" << num(x) << "\" y2=\""
                  << num(p.top + panel_height) << "\" stroke=\"#ddd\"/>\n";
                o << "<text x=\"" << num(x) << "\" y=\"" << num(p.top + panel_height + 16)
                  << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
            }
            for (double t : ticks(p.y))
            {
                const double y = p.py(t);
                o << "<line x1=\"" << num(margin_left) << "\" y1=\"" << num(y) << "\" x2=\""
                  << num(width - margin_right) << "\" y2=\"" << num(y) << "\" stroke=\"#ddd\"/>\n";
                o << "<text x=\"" << num(margin_left - 6) << "\" y=\"" << num(y + 4)
                  << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
            }
            o << "<text x=\"" << num((margin_left + width - margin_right) / 2) << "\" y=\""
              << num(p.top + panel_height + 34) << "\" font-size=\"12\" text-anchor=\"middle\">"
              << escape(p.x_label) << "</text>\n";
            const double cy = p.top + panel_height / 2;
            o << "<text x=\"18\" y=\"" << num(cy) << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
              << num(cy) << ")\">" << escape(p.y_label) << "</text>\n";
        }

        // Breaks the polyline wherever a point cannot be drawn.
        void draw_series(std::ostringstream &o, const Panel &p, const std::vector<double> &x,
                         const std::vector<double> &y, const char *colour)
        {
            std::string points;
            const auto flush = [&]
            {
                if (!points.empty())
                    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"" << points
                      << "\"/>\n";
                points.clear();
            };
            for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
            {
                const bool ok = std::isfinite(x[i]) && std::isfinite(y[i]) && (!p.x.log || x[i] > 0.0) &&
                                (!p.y.log || y[i] > 0.0);
                if (!ok)
                {
                    flush();
                    continue;
                }
                points += num(p.px(x[i])) + "," + num(p.py(y[i])) + " ";
            }
            flush();
        }

        void open(std::ostringstream &o, double height, const std::string &title)
        {
            o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
              << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
              << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\" font-family=\"sans-serif\">\n"
              << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
              << "<text x=\"" << num(width / 2) << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">"
              << escape(title) << "</text>\n";
        }
    }

    std::string spectrum_svg(const std::vector<RtfSpectrum> &spectra, const std::string &title)
    {
        std::vector<double> all_f, all_level;
        std::vector<std::vector<double>> levels, phases;
        for (const auto &s : spectra)
        {
            all_f.insert(all_f.end(), s.frequencies.begin(), s.frequencies.end());
            levels.push_back(spl(s).level_db);
            all_level.insert(all_level.end(), levels.back().begin(), levels.back().end());
            std::vector<double> ph;
            for (const auto &v : s.values)
                ph.push_back(std::arg(v));
            phases.push_back(std::move(ph));
        }
        const Axis fx = make_axis(all_f, true);
        const Panel mag{margin_top, fx, make_axis(all_level, false), "Frequency [Hz]", "SPL [dB]"};
        const Panel phase{margin_top + panel_height + panel_gap, fx, Axis{-pi, pi, false}, "Frequency [Hz]",
                          "Phase [rad]"};

        const double height = margin_top + 2 * panel_height + panel_gap + 50 + 18.0 * static_cast<double>(spectra.size());
        std::ostringstream o;
        open(o, height, title);
        draw_frame(o, mag);
        draw_frame(o, phase);
        for (std::size_t i = 0; i < spectra.size(); ++i)
        {
            const char *colour = palette[i % std::size(palette)];
            draw_series(o, mag, spectra[i].frequencies, levels[i], colour);
            draw_series(o, phase, spectra[i].frequencies, phases[i], colour);
            const double y = margin_top + 2 * panel_height + panel_gap + 56 + 18.0 * static_cast<double>(i);
            o << "<line x1=\"" << num(margin_left) << "\" y1=\"" << num(y - 4) << "\" x2=\"" << num(margin_left + 24)
              << "\" y2=\"" << num(y - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
              << "<text x=\"" << num(margin_left + 30) << "\" y=\"" << num(y) << "\" font-size=\"12\">"
              << escape(std::string(method_name(spectra[i].method))) << "</text>\n";
        }
        o << "</svg>\n";
        return o.str();
    }

    std::string series_svg(const SeriesPlot &plot)
    {
        const Panel p{margin_top, make_axis(plot.x, plot.log_x), make_axis(plot.y, plot.log_y), plot.x_label,
                      plot.y_label};
        std::ostringstream o;
        open(o, margin_top + panel_height + 50, plot.title);
        draw_frame(o, p);
        draw_series(o, p, plot.x, plot.y, palette[0]);
        for (std::size_t i = 0; i < plot.x.size() && i < plot.y.size(); ++i)
            if (std::isfinite(plot.x[i]) && std::isfinite(plot.y[i]) && (!plot.log_x || plot.x[i] > 0.0) &&
                (!plot.log_y || plot.y[i] > 0.0))
                o << "<circle cx=\"" << num(p.px(plot.x[i])) << "\" cy=\"" << num(p.py(plot.y[i]))
                  << "\" r=\"3\" fill=\"" << palette[0] << "\"/>\n";
        o << "</svg>\n";
        return o.str();
    }
}
