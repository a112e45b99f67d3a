/*
 * Copyright (c) 2026 The pmcs-sim Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmcs/scenario.hpp"

#include "pmcs/errors.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace pmcs::scenario {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool is_identifier(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'))
            return false;
    return true;
}

struct Entry
{
    std::string value;
    int line;
};

using Section = std::map<std::string, Entry>;

const std::set<std::string>& known_sections()
{
    static const std::set<std::string> names = {"sim",    "battery",  "panel", "irradiance", "solar_charger",
                                                "usb",    "load",     "schedule", "rtc",     "adc",
                                                "buttons", "shutdown"};
    return names;
}

class Binder
{
public:
    explicit Binder(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

    bool has_section(const std::string& sec) const { return sections_.count(sec) != 0; }

    void require_section(const std::string& sec) const
    {
        if (!has_section(sec))
            throw ConfigError(sec, "missing required section [" + sec + "]");
    }

    void number(const std::string& sec, const std::string& key, double& out)
    {
        if (auto e = take(sec, key))
            out = parse_number(sec, key, e->value, e->line);
    }

    void number(const std::string& sec, const std::string& key, std::optional<double>& out)
    {
        if (auto e = take(sec, key))
            out = parse_number(sec, key, e->value, e->line);
    }

    void integer(const std::string& sec, const std::string& key, int& out)
    {
        if (auto e = take(sec, key)) {
            const double v = parse_number(sec, key, e->value, e->line);
            if (v != static_cast<double>(static_cast<long long>(v)) || v > 2e9 || v < -2e9)
                fail(sec, key, e->line, "expected an integer");
            out = static_cast<int>(v);
        }
    }

    void boolean(const std::string& sec, const std::string& key, bool& out)
    {
        if (auto e = take(sec, key)) {
            if (e->value == "true")
                out = true;
            else if (e->value == "false")
                out = false;
            else
                fail(sec, key, e->line, "expected true or false");
        }
    }

    bool list(const std::string& sec, const std::string& key, std::vector<double>& out)
    {
        auto e = take(sec, key);
        if (!e)
            return false;
        out.clear();
        for (auto item : split(e->value))
            out.push_back(parse_number(sec, key, item, e->line));
        return true;
    }

    // `a:b, c:d` pairs
    bool pairs(const std::string& sec, const std::string& key, std::vector<std::pair<double, double>>& out)
    {
        auto e = take(sec, key);
        if (!e)
            return false;
        out.clear();
        for (auto item : split(e->value)) {
            const auto colon = item.find(':');
            if (colon == std::string_view::npos)
                fail(sec, key, e->line, "expected start:end pairs");
            out.emplace_back(parse_number(sec, key, trim(item.substr(0, colon)), e->line),
                             parse_number(sec, key, trim(item.substr(colon + 1)), e->line));
        }
        return true;
    }

    std::optional<Entry> word(const std::string& sec, const std::string& key) { return take(sec, key); }

    // Anything left over was never bound: unknown key.
    void reject_leftovers() const
    {
        for (const auto& [sec, keys] : sections_)
            for (const auto& [key, entry] : keys)
                if (!consumed_.count(sec + "." + key))
                    fail(sec, key, entry.line, "unknown key");
    }

    [[noreturn]] static void fail(const std::string& sec, const std::string& key, int line, const std::string& msg)
    {
        throw ConfigError(sec + "." + key, "line " + std::to_string(line) + ": " + msg);
    }

private:
    std::optional<Entry> take(const std::string& sec, const std::string& key)
    {
        auto s = sections_.find(sec);
        if (s == sections_.end())
            return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end())
            return std::nullopt;
        consumed_.insert(sec + "." + key);
        return k->second;
    }

    static std::vector<std::string_view> split(std::string_view v)
    {
        std::vector<std::string_view> items;
        while (true) {
            const auto comma = v.find(',');
            auto item = trim(v.substr(0, comma));
            if (!item.empty())
                items.push_back(item);
            if (comma == std::string_view::npos)
                break;
            v.remove_prefix(comma + 1);
        }
        return items;
    }

    static double parse_number(const std::string& sec, const std::string& key, std::string_view text, int line)
    {
        text = trim(text);
        if (!text.empty() && text.front() == '+')
            text.remove_prefix(1);
        double v = 0.0;
        const auto* end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
            fail(sec, key, line, "expected a number, got '" + std::string(text) + "'");
        return v;
    }

    std::map<std::string, Section> sections_;
    std::set<std::string> consumed_;
};

std::map<std::string, Section> tokenize(std::string_view text)
{
    std::map<std::string, Section> sections;
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("scenario", where + ": malformed section header");
            std::string name(trim(line.substr(1, line.size() - 2)));
            if (!known_sections().count(name))
                throw ConfigError(name, where + ": unknown section [" + name + "]");
            if (sections.count(name))
                throw ConfigError(name, where + ": duplicate section [" + name + "]");
            sections[name];
            current = name;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(current.empty() ? "scenario" : current, where + ": expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (current.empty())
            throw ConfigError(key, where + ": key outside of any section");
        if (!is_identifier(key))
            throw ConfigError(current + "." + key, where + ": keys are lowercase snake_case");
        auto& sec = sections[current];
        if (sec.count(key))
            throw ConfigError(current + "." + key, where + ": duplicate key");
        sec.emplace(std::move(key), Entry{std::move(value), line_no});
    }
    return sections;
}

std::vector<engine::TimeWindow> to_windows(const std::vector<std::pair<double, double>>& p)
{
    std::vector<engine::TimeWindow> out;
    for (auto [a, b] : p)
        out.push_back({a, b});
    return out;
}

} // namespace

engine::SimConfig parse_scenario(std::string_view text)
{
    Binder b(tokenize(text));
    b.require_section("sim");
    b.require_section("battery");

    engine::SimConfig cfg;

    b.number("sim", "dt_s", cfg.dt_s);
    b.integer("sim", "duration_days", cfg.duration_days);
    b.number("sim", "threshold_v", cfg.threshold_V);
    b.integer("sim", "output_stride", cfg.output_stride);
    b.boolean("sim", "latch_on_at_start", cfg.latch_on_at_start);

    auto& bat = cfg.battery;
    b.number("battery", "capacity_ah", bat.capacity_Ah);
    b.number("battery", "soc_initial", bat.soc);
    b.number("battery", "r_internal_ohm", bat.r_internal_ohm);
    b.number("battery", "v_overdischarge", bat.thresholds.v_overdischarge);
    b.number("battery", "v_overcharge", bat.thresholds.v_overcharge);
    b.number("battery", "i_overcurrent_a", bat.thresholds.i_overcurrent_A);
    b.number("battery", "i_short_a", bat.thresholds.i_short_A);
    b.list("battery", "reset_times_s", cfg.protection_reset_times_s);
    {
        std::vector<double> socs, volts;
        const bool has_s = b.list("battery", "ocv_soc", socs);
        const bool has_v = b.list("battery", "ocv_v", volts);
        if (has_s != has_v)
            throw ConfigError("battery.ocv_v", "ocv_soc and ocv_v must be given together");
        if (has_s) {
            if (socs.size() != volts.size())
                throw ConfigError("battery.ocv_v", "ocv_soc and ocv_v differ in length");
            bat.ocv_anchors.clear();
            for (std::size_t k = 0; k < socs.size(); ++k)
                bat.ocv_anchors.push_back({socs[k], volts[k]});
        }
    }

    b.number("panel", "p_rated_w", cfg.panel.p_rated_W);
    b.number("panel", "v_oc", cfg.panel.v_oc);
    b.number("panel", "v_mpp", cfg.panel.v_mpp);
    b.number("panel", "k_mppt", cfg.panel.k_mppt);

    auto& irr = cfg.irradiance;
    if (auto kind = b.word("irradiance", "kind")) {
        if (kind->value == "clear_sky")
            irr.kind = harvest::IrradianceKind::ClearSky;
        else if (kind->value == "constant")
            irr.kind = harvest::IrradianceKind::Constant;
        else if (kind->value == "trace")
            irr.kind = harvest::IrradianceKind::Trace;
        else
            Binder::fail("irradiance", "kind", kind->line, "expected clear_sky, constant or trace");
    }
    b.number("irradiance", "sunrise_s", irr.sunrise_s);
    b.number("irradiance", "sunset_s", irr.sunset_s);
    b.number("irradiance", "peak_fraction", irr.peak_fraction);
    {
        std::vector<double> ts, fs;
        const bool has_t = b.list("irradiance", "trace_t_s", ts);
        const bool has_f = b.list("irradiance", "trace_fraction", fs);
        if (has_t != has_f || ts.size() != fs.size())
            throw ConfigError("irradiance.trace_fraction", "trace_t_s and trace_fraction must match");
        for (std::size_t k = 0; k < ts.size(); ++k)
            irr.trace.push_back({ts[k], fs[k]});
    }

    auto& sc = cfg.solar_charger;
    b.boolean("solar_charger", "jumper_3a", sc.jumper_3A);
    b.number("solar_charger", "eta", sc.eta);
    b.number("solar_charger", "v_cv", sc.v_cv);
    b.number("solar_charger", "term_fraction", sc.term_fraction);
    b.number("solar_charger", "tau_cv_s", sc.tau_cv_s);
    b.number("solar_charger", "p_min_w", sc.p_min_W);
    b.number("solar_charger", "v_recharge_v", sc.v_recharge);
    {
        std::vector<std::pair<double, double>> w;
        if (b.pairs("solar_charger", "reverse_polarity_windows_s", w))
            cfg.reverse_polarity_windows = to_windows(w);
    }

    auto& u = cfg.usb;
    b.number("usb", "p_usb_w", u.p_usb_W);
    b.number("usb", "eta", u.eta);
    b.number("usb", "i_cc_a", u.i_cc_A);
    b.number("usb", "i_trickle_a", u.i_trickle_A);
    b.number("usb", "v_trickle_v", u.v_trickle);
    b.number("usb", "i_term_a", u.i_term_A);
    b.number("usb", "v_cv", u.v_cv);
    b.number("usb", "tau_cv_s", u.tau_cv_s);
    b.number("usb", "v_recharge_v", u.v_recharge);
    b.boolean("usb", "data_connected", u.usb_data_connected);
    {
        std::vector<std::pair<double, double>> w;
        if (b.pairs("usb", "present_windows_s", w))
            cfg.usb_windows = to_windows(w);
    }

    auto& lm = cfg.load.model;
    b.number("load", "i_sleep_a", lm.i_sleep_A);
    b.number("load", "i_idle_a", lm.i_idle_5v_A);
    b.number("load", "i_boot_a", lm.i_boot_5v_A);
    b.number("load", "i_capture_a", lm.i_capture_5v_A);
    b.number("load", "i_sensors_a", lm.i_sensors_5v_A);
    b.number("load", "t_boot_s", lm.t_boot_s);
    b.number("load", "t_capture_s", lm.t_capture_s);
    b.boolean("load", "sensors_enabled", cfg.load.sensors_enabled);
    b.boolean("load", "auto_shutdown", cfg.load.auto_shutdown);

    b.number("schedule", "sunrise_s", cfg.schedule.sunrise_s);
    b.number("schedule", "sunset_s", cfg.schedule.sunset_s);
    b.number("schedule", "capture_interval_s", cfg.schedule.capture_interval_s);

    b.boolean("rtc", "enabled", cfg.rtc.enabled);
    b.number("rtc", "wake_period_s", cfg.rtc.wake_period_s);
    b.number("rtc", "first_wake_s", cfg.rtc.first_wake_s);
    b.number("rtc", "pulse_width_s", cfg.rtc.pulse_width_s);
    b.boolean("rtc", "gate_to_schedule", cfg.rtc.gate_to_schedule);

    b.boolean("adc", "sample_on_capture", cfg.adc.sample_on_capture);
    b.number("adc", "ratio", cfg.adc.divider.ratio);
    b.number("adc", "r_total_ohm", cfg.adc.divider.r_total_ohm);

    b.number("buttons", "t_long_s", cfg.latch.t_long_s);
    {
        std::vector<std::pair<double, double>> p;
        if (b.pairs("buttons", "presses", p))
            for (auto [t, d] : p)
                cfg.presses.push_back({t, d});
    }
    b.number("shutdown", "t_shutdown_s", cfg.latch.t_shutdown_s);
    b.list("shutdown", "times_s", cfg.shutdown_times_s);

    b.reject_leftovers();

    cfg.schedule.day_count = cfg.duration_days;
    engine::validate(cfg);
    return cfg;
}

engine::SimConfig load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("error reading scenario file " + path.string());
    return parse_scenario(buf.str());
}

} // namespace pmcs::scenario
