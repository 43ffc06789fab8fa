// SPDX-License-Identifier: Apache-2.0
//
// starsim - simulator and beamforming optimizer for active STAR-RIS links
// Copyright (C) 2026 starsim developers
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
#include "starsim/scenario_io.hpp"

#include "starsim/error.hpp"

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace starsim::io
{

using std::numbers::pi;

namespace
{

constexpr double deg = pi / 180.0;

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::io, "cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string exact(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// ---------------------------------------------------------------------------
// Strict YAML reading with source positions.

struct Source
{
    std::string name;
    std::filesystem::path base_dir;
};

[[noreturn]] void parse_error(const Source &src, const YAML::Mark &mark, const std::string &key,
                              const std::string &message)
{
    std::string where = src.name;
    if (!mark.is_null())
        where += ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1);
    fail(ErrorCode::parse, where + ": " + key + ": " + message);
}

class MapReader
{
public:
    MapReader(const Source &src, const YAML::Node &node, std::string path)
        : src_(src), node_(node), path_(std::move(path))
    {
        if (!node_.IsMap())
            parse_error(src_, node_.Mark(), path_.empty() ? "<document>" : path_, "expected a mapping");
    }

    std::string key_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }
    const YAML::Mark mark() const { return node_.Mark(); }
    const Source &source() const { return src_; }

    bool has(const std::string &key) const { return static_cast<bool>(node_[key]); }

    YAML::Node required(const std::string &key)
    {
        known_.insert(key);
        const YAML::Node v = node_[key];
        if (!v)
            parse_error(src_, node_.Mark(), key_path(key), "missing required key");
        return v;
    }

    std::optional<YAML::Node> optional(const std::string &key)
    {
        known_.insert(key);
        const YAML::Node v = node_[key];
        if (!v)
            return std::nullopt;
        return v;
    }

    double number(const YAML::Node &v, const std::string &key) const
    {
        if (!v.IsScalar())
            parse_error(src_, v.Mark(), key_path(key), "expected a number");
        const std::string text = v.Scalar();
        char *end = nullptr;
        const double x = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(x))
            parse_error(src_, v.Mark(), key_path(key), "expected a finite number, got '" + text + "'");
        return x;
    }

    double number(const std::string &key) { return number(required(key), key); }

    double number_or(const std::string &key, double fallback)
    {
        const auto v = optional(key);
        return v ? number(*v, key) : fallback;
    }

    long long integer(const YAML::Node &v, const std::string &key) const
    {
        if (!v.IsScalar())
            parse_error(src_, v.Mark(), key_path(key), "expected an integer");
        const std::string text = v.Scalar();
        char *end = nullptr;
        errno = 0;
        const long long x = std::strtoll(text.c_str(), &end, 10);
        if (text.empty() || end != text.c_str() + text.size())
            parse_error(src_, v.Mark(), key_path(key), "expected an integer, got '" + text + "'");
        if (errno == ERANGE)
            parse_error(src_, v.Mark(), key_path(key), "integer out of range: '" + text + "'");
        return x;
    }

    std::uint64_t unsigned_integer(const YAML::Node &v, const std::string &key) const
    {
        if (!v.IsScalar())
            parse_error(src_, v.Mark(), key_path(key), "expected an integer");
        const std::string text = v.Scalar();
        char *end = nullptr;
        errno = 0;
        const unsigned long long x = std::strtoull(text.c_str(), &end, 10);
        if (text.empty() || text.front() == '-' || end != text.c_str() + text.size())
            parse_error(src_, v.Mark(), key_path(key), "expected an integer >= 0, got '" + text + "'");
        if (errno == ERANGE)
            parse_error(src_, v.Mark(), key_path(key), "integer out of range: '" + text + "'");
        return x;
    }

    long long integer_or(const std::string &key, long long fallback)
    {
        const auto v = optional(key);
        return v ? integer(*v, key) : fallback;
    }

    std::string text(const YAML::Node &v, const std::string &key) const
    {
        if (!v.IsScalar())
            parse_error(src_, v.Mark(), key_path(key), "expected a string");
        return v.Scalar();
    }

    // Rejects keys nobody asked for.
    void finish() const
    {
        for (auto it = node_.begin(); it != node_.end(); ++it)
        {
            const std::string key = it->first.Scalar();
            if (!known_.count(key))
                parse_error(src_, it->first.Mark(), key_path(key), "unknown key");
        }
    }

    // Up-front unknown-key check for sections whose values depend on each
    // other, so a misspelled key is reported instead of its consequences.
    void allow(std::initializer_list<const char *> keys)
    {
        known_.insert(keys.begin(), keys.end());
        finish();
    }

    template <typename Check>
    void check(bool ok, const YAML::Node &v, const std::string &key, Check &&message) const
    {
        if (!ok)
            parse_error(src_, v.Mark(), key_path(key), message());
    }

private:
    const Source &src_;
    YAML::Node node_;
    std::string path_;
    std::set<std::string> known_;
};

double positive(MapReader &r, const std::string &key)
{
    const auto v = r.required(key);
    const double x = r.number(v, key);
    r.check(x > 0.0, v, key, []
            { return std::string("must be > 0"); });
    return x;
}

double positive_or(MapReader &r, const std::string &key, double fallback)
{
    return r.has(key) ? positive(r, key) : fallback;
}

channel::AntennaPattern read_pattern_node(const Source &src, const YAML::Node &node, const std::string &path)
{
    MapReader r(src, node, path);
    const auto kind_node = r.required("kind");
    const std::string kind = r.text(kind_node, "kind");
    channel::AntennaPattern p;
    if (kind == "isotropic")
    {
        p = channel::AntennaPattern::isotropic();
    }
    else if (kind == "cosine_power")
    {
        const auto q_node = r.required("exponent");
        const double q = r.number(q_node, "exponent");
        r.check(q >= 0.0, q_node, "exponent", []
                { return std::string("must be >= 0"); });
        const auto g = r.optional("peak_gain");
        double peak = 2.0 * (q + 1.0);
        if (g && !(g->IsScalar() && g->Scalar() == "auto"))
        {
            peak = r.number(*g, "peak_gain");
            r.check(peak >= 1.0, *g, "peak_gain", []
                    { return std::string("linear peak gain must be >= 1"); });
        }
        p = channel::AntennaPattern::cosine_power(q, peak);
    }
    else
    {
        parse_error(src, kind_node.Mark(), r.key_path("kind"),
                    "unknown pattern kind '" + kind + "' (expected isotropic or cosine_power)");
    }
    r.finish();
    return p;
}

link::Terminal read_terminal(const Source &src, const YAML::Node &node, const std::string &path, Side side,
                             bool is_tx)
{
    MapReader r(src, node, path);
    geometry::TerminalPosition pos;
    const bool cartesian = r.has("position_m");
    const bool spherical = r.has("range_m") || r.has("zenith_deg") || r.has("azimuth_deg");
    if (cartesian == spherical)
        parse_error(src, r.mark(), path, "give either position_m: [x, y, z] or range_m/zenith_deg/azimuth_deg");
    YAML::Mark where = r.mark();
    if (cartesian)
    {
        const auto v = r.required("position_m");
        where = v.Mark();
        if (!v.IsSequence() || v.size() != 3)
            parse_error(src, v.Mark(), r.key_path("position_m"), "expected a list of three numbers");
        pos = geometry::TerminalPosition::from_cartesian(
            {r.number(v[0], "position_m"), r.number(v[1], "position_m"), r.number(v[2], "position_m")});
    }
    else
    {
        const double range = positive(r, "range_m");
        const auto zn = r.required("zenith_deg");
        where = zn.Mark();
        const double zenith = r.number(zn, "zenith_deg");
        r.check(zenith >= 0.0 && zenith <= 180.0, zn, "zenith_deg", []
                { return std::string("must lie in [0, 180] (measured from +z)"); });
        const double azimuth = r.number_or("azimuth_deg", 0.0);
        pos = geometry::TerminalPosition::from_spherical(range, zenith * deg, azimuth * deg);
    }
    const double z = pos.cartesian().z;
    if (is_tx && !(z > 0.0))
        parse_error(src, where, path, "half-space violation: the transmitter must lie at z > 0");
    if (!is_tx && side == Side::transmit && !(z < 0.0))
        parse_error(src, where, path,
                    "half-space violation: the transmission receiver must lie at z < 0 (zenith > 90 deg)");
    if (!is_tx && side == Side::reflect && !(z > 0.0))
        parse_error(src, where, path,
                    "half-space violation: the reflection receiver must lie at z > 0 (zenith < 90 deg)");

    channel::AntennaPattern pattern = channel::AntennaPattern::isotropic();
    if (const auto p = r.optional("pattern"))
        pattern = read_pattern_node(src, *p, r.key_path("pattern"));
    r.finish();
    return {pos, pattern};
}

element::CalibrationCurves read_calibration_map(MapReader &r)
{
    std::vector<element::PaGainAnchor> pa;
    std::vector<element::SplitAnchor> split;
    const auto pa_node = r.required("pa_gain_table");
    if (!pa_node.IsSequence() || pa_node.size() == 0)
        parse_error(r.source(), pa_node.Mark(), r.key_path("pa_gain_table"), "expected a nonempty list");
    for (std::size_t i = 0; i < pa_node.size(); ++i)
    {
        MapReader a(r.source(), pa_node[i], r.key_path("pa_gain_table") + "[" + std::to_string(i) + "]");
        const double ma = a.number("current_ma");
        const double db = a.number("gain_db");
        a.finish();
        pa.push_back({ma, db});
    }
    const auto split_node = r.required("split_table");
    if (!split_node.IsSequence() || split_node.size() == 0)
        parse_error(r.source(), split_node.Mark(), r.key_path("split_table"), "expected a nonempty list");
    for (std::size_t i = 0; i < split_node.size(); ++i)
    {
        MapReader a(r.source(), split_node[i], r.key_path("split_table") + "[" + std::to_string(i) + "]");
        const double v = a.number("bias_v");
        const double f = a.number("transmit_fraction");
        a.finish();
        split.push_back({v, f});
    }
    try
    {
        return element::CalibrationCurves(std::move(pa), std::move(split));
    }
    catch (const Error &e)
    {
        parse_error(r.source(), r.mark(), r.key_path("calibration"), e.what());
    }
}

YAML::Node load_yaml(const Source &src, std::string_view text)
{
    try
    {
        return YAML::Load(std::string(text));
    }
    catch (const YAML::Exception &e)
    {
        parse_error(src, e.mark, "<document>", e.msg);
    }
}

element::CalibrationCurves calibration_from_text(const Source &src, std::string_view text)
{
    const YAML::Node root = load_yaml(src, text);
    MapReader r(src, root, "");
    auto curves = read_calibration_map(r);
    r.finish();
    return curves;
}

ScenarioFile parse_document(const Source &src, std::string_view text)
{
    const YAML::Node root = load_yaml(src, text);
    MapReader r(src, root, "");
    ScenarioFile f;
    Scenario &s = f.scenario;

    if (const auto v = r.optional("seed"))
    {
        f.seed = r.unsigned_integer(*v, "seed");
    }

    {
        MapReader a(src, r.required("array"), "array");
        const auto rows = a.required("rows");
        const auto cols = a.required("cols");
        s.layout.n_rows = static_cast<int>(a.integer(rows, "rows"));
        s.layout.n_cols = static_cast<int>(a.integer(cols, "cols"));
        a.check(s.layout.n_rows >= 1, rows, "rows", []
                { return std::string("must be >= 1"); });
        a.check(s.layout.n_cols >= 1, cols, "cols", []
                { return std::string("must be >= 1"); });
        s.layout.pitch_x = positive(a, "pitch_x_m");
        s.layout.pitch_y = positive(a, "pitch_y_m");
        a.finish();
    }

    s.carrier_hz = positive(r, "carrier_frequency_hz");
    s.tx_power_w = positive(r, "tx_power_w");
    s.noise_t_w = positive_or(r, "noise_power_t_w", s.noise_t_w);
    s.noise_r_w = positive_or(r, "noise_power_r_w", s.noise_r_w);

    if (const auto p = r.optional("element_pattern"))
        s.element_pattern = read_pattern_node(src, *p, "element_pattern");

    s.tx = read_terminal(src, r.required("tx"), "tx", Side::reflect, true);
    s.rx_t = read_terminal(src, r.required("rx_t"), "rx_t", Side::transmit, false);
    s.rx_r = read_terminal(src, r.required("rx_r"), "rx_r", Side::reflect, false);

    if (const auto e = r.optional("element"))
    {
        MapReader a(src, *e, "element");
        a.allow({"bits", "bias_v", "pa_ma", "efficiency", "phase_code_t", "phase_code_r", "jitter_deg"});
        auto &el = f.element;
        if (const auto v = a.optional("bits"))
        {
            el.bits = static_cast<int>(a.integer(*v, "bits"));
            a.check(el.bits >= 1 && el.bits <= 16, *v, "bits", []
                    { return std::string("must lie in 1..16"); });
        }
        el.bias_v = a.number_or("bias_v", el.bias_v);
        if (const auto v = a.optional("pa_ma"))
        {
            el.pa_ma = a.number(*v, "pa_ma");
            a.check(el.pa_ma >= 0.0, *v, "pa_ma", []
                    { return std::string("amplifier current must be >= 0 mA"); });
        }
        if (const auto v = a.optional("efficiency"))
        {
            el.efficiency = a.number(*v, "efficiency");
            a.check(el.efficiency > 0.0 && el.efficiency <= 1.0, *v, "efficiency", []
                    { return std::string("must lie in (0, 1]"); });
        }
        const int size = 1 << el.bits;
        for (const char *key : {"phase_code_t", "phase_code_r"})
        {
            if (const auto v = a.optional(key))
            {
                const long long c = a.integer(*v, key);
                a.check(c >= 0 && c < size, *v, key, [&]
                        { return "must lie in [0, " + std::to_string(size) + ")"; });
                (std::string(key) == "phase_code_t" ? el.phase_code_t : el.phase_code_r) = static_cast<int>(c);
            }
        }
        if (const auto v = a.optional("jitter_deg"))
        {
            f.jitter_deg = a.number(*v, "jitter_deg");
            a.check(f.jitter_deg >= 0.0, *v, "jitter_deg", []
                    { return std::string("must be >= 0"); });
        }
        a.finish();
    }

    if (const auto c = r.optional("calibration"))
    {
        MapReader a(src, *c, "calibration");
        if (a.has("file"))
        {
            const auto v = a.required("file");
            std::filesystem::path p = a.text(v, "file");
            if (p.is_relative())
                p = src.base_dir / p;
            a.finish();
            try
            {
                s.calibration = load_calibration(p);
            }
            catch (const Error &e)
            {
                parse_error(src, v.Mark(), "calibration.file", e.what());
            }
        }
        else
        {
            s.calibration = read_calibration_map(a);
            a.finish();
        }
    }
    else
    {
        try
        {
            s.calibration = default_calibration();
        }
        catch (const Error &e)
        {
            parse_error(src, r.mark(), calibration_env, e.what());
        }
    }

    if (const auto c = r.optional("configuration"))
    {
        MapReader a(src, *c, "configuration");
        a.allow({"bits", "codes_t", "codes_r"});
        PhaseConfiguration cfg;
        const auto bits = a.optional("bits");
        cfg.bits = bits ? static_cast<int>(a.integer(*bits, "bits")) : f.element.bits;
        const int size = cfg.bits >= 1 && cfg.bits <= 16 ? 1 << cfg.bits : 0;
        if (size == 0)
            parse_error(src, bits->Mark(), "configuration.bits", "must lie in 1..16");
        for (const char *key : {"codes_t", "codes_r"})
        {
            const auto v = a.required(key);
            if (!v.IsSequence() || v.size() != s.layout.size())
                parse_error(src, v.Mark(), a.key_path(key),
                            "expected a list of " + std::to_string(s.layout.size()) + " codes");
            auto &codes = std::string(key) == "codes_t" ? cfg.codes_t : cfg.codes_r;
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                const long long x = a.integer(v[i], key);
                a.check(x >= 0 && x < size, v[i], key, [&]
                        { return "code " + std::to_string(x) + " outside [0, " + std::to_string(size) + ")"; });
                codes.push_back(static_cast<int>(x));
            }
        }
        a.finish();
        f.configuration = std::move(cfg);
    }

    if (const auto o = r.optional("optimizer"))
    {
        MapReader a(src, *o, "optimizer");
        auto &opt = f.optimizer;
        if (const auto v = a.optional("method"))
        {
            const auto m = parse_method(a.text(*v, "method"));
            if (!m)
                parse_error(src, v->Mark(), "optimizer.method",
                            "expected conjugate, quantized, greedy or exhaustive");
            opt.method = *m;
        }
        if (const auto v = a.optional("side"))
        {
            const auto sd = parse_side(a.text(*v, "side"));
            if (!sd)
                parse_error(src, v->Mark(), "optimizer.side", "expected transmit or reflect");
            opt.side = *sd;
        }
        if (const auto v = a.optional("zenith_deg"))
        {
            opt.zenith_deg = a.number(*v, "zenith_deg");
            a.check(*opt.zenith_deg >= 0.0 && *opt.zenith_deg < 90.0, *v, "zenith_deg", []
                    { return std::string("must lie in [0, 90) off the face normal"); });
        }
        opt.azimuth_deg = a.number_or("azimuth_deg", opt.azimuth_deg);
        if (const auto v = a.optional("max_passes"))
        {
            opt.max_passes = static_cast<int>(a.integer(*v, "max_passes"));
            a.check(opt.max_passes >= 1, *v, "max_passes", []
                    { return std::string("must be >= 1"); });
        }
        if (const auto v = a.optional("budget_bits"))
        {
            opt.budget_bits = static_cast<int>(a.integer(*v, "budget_bits"));
            a.check(opt.budget_bits >= 1 && opt.budget_bits <= 62, *v, "budget_bits", []
                    { return std::string("must lie in 1..62"); });
        }
        a.finish();
    }

    if (const auto p = r.optional("pattern"))
    {
        MapReader a(src, *p, "pattern");
        auto &pat = f.pattern;
        if (const auto v = a.optional("side"))
        {
            const auto sd = parse_side(a.text(*v, "side"));
            if (!sd)
                parse_error(src, v->Mark(), "pattern.side", "expected transmit or reflect");
            pat.side = *sd;
        }
        pat.from_deg = a.number_or("from_deg", pat.from_deg);
        pat.to_deg = a.number_or("to_deg", pat.to_deg);
        if (const auto v = a.optional("step_deg"))
        {
            pat.step_deg = a.number(*v, "step_deg");
            a.check(pat.step_deg > 0.0, *v, "step_deg", []
                    { return std::string("must be > 0"); });
        }
        pat.azimuth_deg = a.number_or("azimuth_deg", pat.azimuth_deg);
        a.check(pat.from_deg > -90.0 && pat.to_deg < 90.0 && pat.from_deg <= pat.to_deg, *p, "pattern",
                []
                { return std::string("grid must satisfy -90 < from_deg <= to_deg < 90"); });
        a.finish();
    }

    r.finish();

    try
    {
        s.validate();
    }
    catch (const Error &e)
    {
        parse_error(src, root.Mark(), "<scenario>", e.what());
    }
    return f;
}

void write_pattern_yaml(std::ostringstream &out, const channel::AntennaPattern &p, const std::string &indent)
{
    if (p.kind == channel::AntennaPattern::Kind::isotropic)
    {
        out << indent << "kind: isotropic\n";
        return;
    }
    out << indent << "kind: cosine_power\n";
    out << indent << "exponent: " << exact(p.exponent) << "\n";
    out << indent << "peak_gain: " << exact(p.peak_gain) << "\n";
}

void write_terminal_yaml(std::ostringstream &out, const char *name, const link::Terminal &t)
{
    const auto &c = t.position.cartesian();
    out << name << ":\n";
    out << "  position_m: [" << exact(c.x) << ", " << exact(c.y) << ", " << exact(c.z) << "]\n";
    out << "  pattern:\n";
    write_pattern_yaml(out, t.pattern, "    ");
}

std::string join_codes(const std::vector<int> &codes)
{
    std::string s = "[";
    for (std::size_t i = 0; i < codes.size(); ++i)
        s += (i ? ", " : "") + std::to_string(codes[i]);
    return s + "]";
}

} // namespace

const char *to_string(Method method)
{
    switch (method)
    {
    case Method::conjugate:
        return "conjugate";
    case Method::quantized:
        return "quantized";
    case Method::greedy:
        return "greedy";
    case Method::exhaustive:
        return "exhaustive";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name)
{
    for (Method m : {Method::conjugate, Method::quantized, Method::greedy, Method::exhaustive})
        if (name == to_string(m))
            return m;
    return std::nullopt;
}

std::optional<Side> parse_side(std::string_view name)
{
    if (name == "transmit")
        return Side::transmit;
    if (name == "reflect")
        return Side::reflect;
    return std::nullopt;
}

std::optional<ExportFormat> parse_format(std::string_view name)
{
    if (name == "csv")
        return ExportFormat::csv;
    if (name == "json")
        return ExportFormat::json;
    return std::nullopt;
}

std::vector<ElementState> ScenarioFile::states() const
{
    auto out = link::uniform_states(scenario, element);
    if (configuration)
        out = beamform::apply(*configuration, out);
    if (jitter_deg > 0.0)
    {
        for (std::size_t n = 0; n < out.size(); ++n)
        {
            const std::uint64_t base = splitmix64(seed) ^ splitmix64(2 * n + 1);
            out[n].phase_error_t = element::phase_jitter(0.0, jitter_deg, splitmix64(base));
            out[n].phase_error_r = element::phase_jitter(0.0, jitter_deg, splitmix64(base + 1));
        }
    }
    return out;
}

ScenarioFile parse_scenario(const std::filesystem::path &path)
{
    const std::string text = read_file(path);
    return parse_document({path.string(), path.parent_path()}, text);
}

ScenarioFile parse_scenario_text(std::string_view text, std::string_view source)
{
    return parse_document({std::string(source), std::filesystem::path{}}, text);
}

std::string serialize_scenario(const ScenarioFile &f)
{
    const auto &s = f.scenario;
    std::ostringstream out;
    out << "seed: " << f.seed << "\n";
    out << "array:\n";
    out << "  rows: " << s.layout.n_rows << "\n";
    out << "  cols: " << s.layout.n_cols << "\n";
    out << "  pitch_x_m: " << exact(s.layout.pitch_x) << "\n";
    out << "  pitch_y_m: " << exact(s.layout.pitch_y) << "\n";
    out << "carrier_frequency_hz: " << exact(s.carrier_hz) << "\n";
    out << "tx_power_w: " << exact(s.tx_power_w) << "\n";
    out << "noise_power_t_w: " << exact(s.noise_t_w) << "\n";
    out << "noise_power_r_w: " << exact(s.noise_r_w) << "\n";
    out << "element_pattern:\n";
    write_pattern_yaml(out, s.element_pattern, "  ");
    write_terminal_yaml(out, "tx", s.tx);
    write_terminal_yaml(out, "rx_t", s.rx_t);
    write_terminal_yaml(out, "rx_r", s.rx_r);

    const auto &e = f.element;
    out << "element:\n";
    out << "  bits: " << e.bits << "\n";
    out << "  bias_v: " << exact(e.bias_v) << "\n";
    out << "  pa_ma: " << exact(e.pa_ma) << "\n";
    out << "  efficiency: " << exact(e.efficiency) << "\n";
    out << "  phase_code_t: " << e.phase_code_t << "\n";
    out << "  phase_code_r: " << e.phase_code_r << "\n";
    out << "  jitter_deg: " << exact(f.jitter_deg) << "\n";

    out << "calibration:\n";
    out << "  pa_gain_table:\n";
    for (const auto &a : s.calibration.pa_gain_table())
        out << "    - {current_ma: " << exact(a.current_ma) << ", gain_db: " << exact(a.gain_db) << "}\n";
    out << "  split_table:\n";
    for (const auto &a : s.calibration.split_table())
        out << "    - {bias_v: " << exact(a.bias_v) << ", transmit_fraction: " << exact(a.transmit_fraction)
            << "}\n";

    if (f.configuration)
    {
        out << "configuration:\n";
        out << "  bits: " << f.configuration->bits << "\n";
        out << "  codes_t: " << join_codes(f.configuration->codes_t) << "\n";
        out << "  codes_r: " << join_codes(f.configuration->codes_r) << "\n";
    }

    const auto &o = f.optimizer;
    out << "optimizer:\n";
    out << "  method: " << to_string(o.method) << "\n";
    out << "  side: " << geometry::to_string(o.side) << "\n";
    if (o.zenith_deg)
        out << "  zenith_deg: " << exact(*o.zenith_deg) << "\n";
    out << "  azimuth_deg: " << exact(o.azimuth_deg) << "\n";
    out << "  max_passes: " << o.max_passes << "\n";
    out << "  budget_bits: " << o.budget_bits << "\n";

    const auto &p = f.pattern;
    out << "pattern:\n";
    out << "  side: " << geometry::to_string(p.side) << "\n";
    out << "  from_deg: " << exact(p.from_deg) << "\n";
    out << "  to_deg: " << exact(p.to_deg) << "\n";
    out << "  step_deg: " << exact(p.step_deg) << "\n";
    out << "  azimuth_deg: " << exact(p.azimuth_deg) << "\n";
    return out.str();
}

element::CalibrationCurves load_calibration(const std::filesystem::path &path)
{
    return calibration_from_text({path.string(), path.parent_path()}, read_file(path));
}

element::CalibrationCurves parse_calibration_text(std::string_view text, std::string_view source)
{
    return calibration_from_text({std::string(source), {}}, text);
}

element::CalibrationCurves default_calibration()
{
    const char *env = std::getenv(calibration_env);
    if (env && *env)
        return load_calibration(env);
    return element::CalibrationCurves::defaults();
}

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string format_pattern(std::span<const PatternSample> samples, ExportFormat format)
{
    if (samples.empty())
        fail(ErrorCode::invalid_parameter, "refusing to export an empty pattern");
    if (format == ExportFormat::csv)
    {
        std::string out = "zenith_deg,azimuth_deg,power_w,power_db_rel\n";
        for (const auto &s : samples)
            out += format_number(s.zenith_deg) + "," + format_number(s.azimuth_deg) + "," +
                   format_number(s.power_w) + "," + format_number(s.power_db_rel) + "\n";
        return out;
    }
    // Round through the 9-digit text so both formats carry the same values.
    const auto rounded = [](double v) -> nlohmann::ordered_json
    {
        if (!std::isfinite(v))
            return nullptr;
        return std::strtod(format_number(v).c_str(), nullptr);
    };
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &s : samples)
        rows.push_back({{"zenith_deg", rounded(s.zenith_deg)},
                        {"azimuth_deg", rounded(s.azimuth_deg)},
                        {"power_w", rounded(s.power_w)},
                        {"power_db_rel", rounded(s.power_db_rel)}});
    nlohmann::ordered_json doc = {{"samples", rows}};
    return doc.dump(2) + "\n";
}

void export_pattern(std::span<const PatternSample> samples, const std::filesystem::path &path,
                    ExportFormat format)
{
    const std::string text = format_pattern(samples, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out)
        fail(ErrorCode::io, "failed writing '" + path.string() + "'");
}

std::vector<PatternSample> read_pattern(const std::filesystem::path &path, ExportFormat format)
{
    const std::string text = read_file(path);
    std::vector<PatternSample> out;
    if (format == ExportFormat::json)
    {
        nlohmann::json doc;
        try
        {
            doc = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::exception &e)
        {
            fail(ErrorCode::parse, path.string() + ": " + e.what());
        }
        const auto value = [](const nlohmann::json &v)
        { return v.is_null() ? -std::numeric_limits<double>::infinity() : v.get<double>(); };
        for (const auto &row : doc.at("samples"))
            out.push_back({value(row.at("zenith_deg")), value(row.at("azimuth_deg")), value(row.at("power_w")),
                           value(row.at("power_db_rel"))});
        return out;
    }

    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "zenith_deg,azimuth_deg,power_w,power_db_rel")
        fail(ErrorCode::parse, path.string() + ":1: unexpected CSV header");
    int lineno = 1;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        double v[4];
        const char *p = line.c_str();
        for (int k = 0; k < 4; ++k)
        {
            char *end = nullptr;
            v[k] = std::strtod(p, &end);
            if (end == p || (k < 3 && *end != ',') || (k == 3 && *end != '\0'))
                fail(ErrorCode::parse, path.string() + ":" + std::to_string(lineno) + ": malformed CSV row");
            p = end + 1;
        }
        out.push_back({v[0], v[1], v[2], v[3]});
    }
    return out;
}

} // namespace starsim::io
