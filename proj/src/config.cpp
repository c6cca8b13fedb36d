// SPDX-License-Identifier: Apache-2.0

#include "radsim/config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "radsim/errors.hpp"

namespace radsim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed)
{
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            if (item.key() == a) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw UnknownKey("unrecognized key '" + path + "." + item.key() + "'");
        }
    }
}

const json& require(const json& j, const std::string& path, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError("missing required key '" + path + "." + key + "'");
    }
    return *it;
}

double as_double(const json& j, const std::string& where)
{
    if (!j.is_number()) throw ParseError("'" + where + "' must be a number");
    return j.get<double>();
}

double get_double(const json& j, const std::string& path, const char* key)
{
    return as_double(require(j, path, key), path + "." + std::string(key));
}

double get_double_or(const json& j, const std::string& path, const char* key, double dflt)
{
    const auto it = j.find(key);
    return it == j.end() ? dflt : as_double(*it, path + "." + key);
}

/// Number, or the string "-inf" for a switched-off level.
double get_level_or(const json& j, const std::string& path, const char* key, double dflt)
{
    const auto it = j.find(key);
    if (it == j.end()) return dflt;
    if (it->is_string() && it->get<std::string>() == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    return as_double(*it, path + "." + key);
}

std::string get_string(const json& j, const std::string& path, const char* key)
{
    const json& v = require(j, path, key);
    if (!v.is_string()) throw ParseError("'" + path + "." + key + "' must be a string");
    return v.get<std::string>();
}

std::string get_string_or(const json& j, const std::string& path, const char* key,
                          const std::string& dflt)
{
    const auto it = j.find(key);
    if (it == j.end()) return dflt;
    if (!it->is_string()) throw ParseError("'" + path + "." + key + "' must be a string");
    return it->get<std::string>();
}

std::uint64_t get_u64_or(const json& j, const std::string& path, const char* key,
                         std::uint64_t dflt)
{
    const auto it = j.find(key);
    if (it == j.end()) return dflt;
    if (!it->is_number_unsigned()) {
        throw ParseError("'" + path + "." + key + "' must be an unsigned integer");
    }
    return it->get<std::uint64_t>();
}

WaveformConfig parse_waveform(const json& j, const std::string& path)
{
    WaveformConfig w;
    const std::string type = get_string(j, path, "type");
    if (type == "lfm") {
        w.type = WaveformConfig::Type::lfm;
        check_keys(j, path,
                   {"type", "bandwidth_hz", "duration_s", "center_offset_hz", "amplitude",
                    "sweep", "window", "taylor_nbar", "taylor_sll_db"});
        w.chirp.bandwidth_hz = get_double(j, path, "bandwidth_hz");
        w.chirp.duration_s = get_double(j, path, "duration_s");
        w.chirp.center_offset_hz = get_double_or(j, path, "center_offset_hz", 0.0);
        w.chirp.amplitude = get_double_or(j, path, "amplitude", 1.0);
        const std::string sweep = get_string_or(j, path, "sweep", "up");
        if (sweep == "up") {
            w.chirp.sweep = SweepDirection::up;
        } else if (sweep == "down") {
            w.chirp.sweep = SweepDirection::down;
        } else {
            throw ParseError("'" + path + ".sweep' must be up or down");
        }
        const std::string window = get_string_or(j, path, "window", "rectangular");
        if (window == "rectangular") {
            w.chirp.window = ChirpWindow::rectangular;
        } else if (window == "hann") {
            w.chirp.window = ChirpWindow::hann;
        } else if (window == "taylor") {
            w.chirp.window = ChirpWindow::taylor;
        } else {
            throw ParseError("'" + path + ".window' must be rectangular, hann or taylor");
        }
        w.chirp.taylor_nbar = static_cast<int>(get_double_or(j, path, "taylor_nbar", 4));
        w.chirp.taylor_sll_db = get_double_or(j, path, "taylor_sll_db", -35.0);
    } else if (type == "cw") {
        w.type = WaveformConfig::Type::cw;
        check_keys(j, path, {"type", "duration_s", "offset_hz", "amplitude"});
        w.cw_duration_s = get_double(j, path, "duration_s");
        w.cw_offset_hz = get_double_or(j, path, "offset_hz", 0.0);
        w.cw_amplitude = get_double_or(j, path, "amplitude", 1.0);
    } else {
        throw ParseError("'" + path + ".type' must be lfm or cw");
    }
    return w;
}

FilterConfig parse_filter(const json& j, const std::string& path)
{
    FilterConfig f;
    const std::string type = get_string(j, path, "type");
    f.kind = filter_kind_from_string(type);
    switch (f.kind) {
    case FilterKind::matched:
        check_keys(j, path, {"type", "waveform"});
        f.waveform_id = get_string(j, path, "waveform");
        break;
    case FilterKind::mismatched: {
        check_keys(j, path, {"type", "waveform", "length", "mainlobe_halfwidth_samples"});
        f.waveform_id = get_string(j, path, "waveform");
        f.length = static_cast<std::size_t>(get_double(j, path, "length"));
        const auto it = j.find("mainlobe_halfwidth_samples");
        if (it != j.end()) {
            f.mainlobe_halfwidth_samples =
                static_cast<std::size_t>(as_double(*it, path + ".mainlobe_halfwidth_samples"));
        }
        break;
    }
    case FilterKind::delay:
        check_keys(j, path, {"type", "delay_samples"});
        f.delay_samples = static_cast<std::size_t>(get_double_or(j, path, "delay_samples", 0.0));
        break;
    }
    return f;
}

MixerSpec parse_mixer(const json& j, const std::string& path)
{
    check_keys(j, path,
               {"conversion_loss_db", "lo_to_if_isolation_db", "lo_drive_dbm", "max_order",
                "default_suppression_dbc", "spur_table"});
    MixerSpec m = MixerSpec::representative();
    m.conversion_loss_db = get_double_or(j, path, "conversion_loss_db", m.conversion_loss_db);
    m.lo_to_if_isolation_db =
        get_double_or(j, path, "lo_to_if_isolation_db", m.lo_to_if_isolation_db);
    m.lo_drive_dbm = get_double_or(j, path, "lo_drive_dbm", m.lo_drive_dbm);
    m.max_order = static_cast<int>(get_double_or(j, path, "max_order", m.max_order));
    if (const auto it = j.find("default_suppression_dbc"); it != j.end()) {
        m.default_suppression_dbc = as_double(*it, path + ".default_suppression_dbc");
    }
    if (const auto it = j.find("spur_table"); it != j.end()) {
        if (!it->is_array()) throw ParseError("'" + path + ".spur_table' must be an array");
        m.spur_table.clear();
        std::size_t idx = 0;
        for (const auto& row : *it) {
            const std::string rp = path + ".spur_table[" + std::to_string(idx++) + "]";
            check_keys(row, rp, {"m", "n", "suppression_dbc"});
            const int mm = static_cast<int>(get_double(row, rp, "m"));
            const int nn = static_cast<int>(get_double(row, rp, "n"));
            m.spur_table[{mm, nn}] = get_double(row, rp, "suppression_dbc");
        }
    }
    return m;
}

PlanConfig parse_plan(const json& j, const std::string& path)
{
    check_keys(j, path,
               {"rf_hz", "lo_hz", "if_center_hz", "analog_bandwidth_hz", "sideband",
                "rf_input_dbm", "spur_threshold_dbm", "bandwidth_candidates_hz"});
    PlanConfig p;
    p.plan.rf_hz = get_double(j, path, "rf_hz");
    p.plan.lo_hz = get_double(j, path, "lo_hz");
    p.plan.if_center_hz = get_double(j, path, "if_center_hz");
    p.plan.analog_bandwidth_hz = get_double(j, path, "analog_bandwidth_hz");
    const std::string sb = get_string_or(j, path, "sideband", "difference");
    if (sb == "difference") {
        p.plan.sideband = Sideband::difference;
    } else if (sb == "sum") {
        p.plan.sideband = Sideband::sum;
    } else {
        throw ParseError("'" + path + ".sideband' must be difference or sum");
    }
    p.rf_input_dbm = get_double_or(j, path, "rf_input_dbm", -20.0);
    p.spur_threshold_dbm = get_double_or(j, path, "spur_threshold_dbm", -100.0);
    if (const auto it = j.find("bandwidth_candidates_hz"); it != j.end()) {
        if (!it->is_array()) {
            throw ParseError("'" + path + ".bandwidth_candidates_hz' must be an array");
        }
        for (const auto& v : *it) {
            p.bandwidth_candidates_hz.push_back(as_double(v, path + ".bandwidth_candidates_hz"));
        }
    }
    return p;
}

FilterMask parse_mask(const json& j, const std::string& path)
{
    check_keys(j, path, {"breakpoints"});
    FilterMask mask;
    const json& bps = require(j, path, "breakpoints");
    if (!bps.is_array()) throw ParseError("'" + path + ".breakpoints' must be an array");
    std::size_t idx = 0;
    for (const auto& bp : bps) {
        const std::string bp_path = path + ".breakpoints[" + std::to_string(idx++) + "]";
        check_keys(bp, bp_path, {"frequency_hz", "attenuation_db"});
        mask.breakpoints.emplace_back(get_double(bp, bp_path, "frequency_hz"),
                                      get_double(bp, bp_path, "attenuation_db"));
    }
    return mask;
}

CascadeConfig parse_cascade(const json& j, const std::string& path)
{
    check_keys(j, path, {"input_dbm", "noise_bandwidth_hz", "stages"});
    CascadeConfig c;
    c.input_dbm = get_double_or(j, path, "input_dbm", -60.0);
    c.noise_bandwidth_hz = get_double(j, path, "noise_bandwidth_hz");
    const json& stages = require(j, path, "stages");
    if (!stages.is_array()) throw ParseError("'" + path + ".stages' must be an array");
    std::size_t idx = 0;
    for (const auto& sj : stages) {
        const std::string sp = path + ".stages[" + std::to_string(idx++) + "]";
        check_keys(sj, sp,
                   {"name", "gain_db", "nf_db", "oip3_dbm", "p1db_out_dbm",
                    "power_consumption_w"});
        CascadeStage st;
        st.name = get_string(sj, sp, "name");
        st.gain_db = get_double(sj, sp, "gain_db");
        st.nf_db = get_double(sj, sp, "nf_db");
        if (const auto it = sj.find("oip3_dbm"); it != sj.end()) {
            if (it->is_string() && it->get<std::string>() == "inf") {
                st.oip3_dbm = std::numeric_limits<double>::infinity();
            } else {
                st.oip3_dbm = as_double(*it, sp + ".oip3_dbm");
            }
        }
        if (const auto it = sj.find("p1db_out_dbm"); it != sj.end()) {
            st.p1db_out_dbm = as_double(*it, sp + ".p1db_out_dbm");
        }
        if (const auto it = sj.find("power_consumption_w"); it != sj.end()) {
            st.power_consumption_w = as_double(*it, sp + ".power_consumption_w");
        }
        c.stages.push_back(std::move(st));
    }
    return c;
}

AdcSpec parse_adc(const json& j, const std::string& path)
{
    check_keys(j, path, {"bits", "sample_rate_hz", "full_scale_vpp", "input_impedance_ohm"});
    AdcSpec a;
    a.bits = static_cast<int>(get_double_or(j, path, "bits", 16));
    a.sample_rate_hz = get_double_or(j, path, "sample_rate_hz", 2.0e8);
    a.full_scale_vpp = get_double_or(j, path, "full_scale_vpp", 2.0);
    a.input_impedance_ohm = get_double_or(j, path, "input_impedance_ohm", 50.0);
    return a;
}

ScheduleConfig parse_schedule(const json& j, const std::string& path)
{
    check_keys(j, path, {"prt_s", "guard_s", "max_range_m", "events"});
    ScheduleConfig s;
    s.prt_s = get_double(j, path, "prt_s");
    s.guard_s = get_double_or(j, path, "guard_s", 1.0e-6);
    s.max_range_m = get_double(j, path, "max_range_m");
    const json& events = require(j, path, "events");
    if (!events.is_array()) throw ParseError("'" + path + ".events' must be an array");
    std::size_t idx = 0;
    for (const auto& ej : events) {
        const std::string ep = path + ".events[" + std::to_string(idx++) + "]";
        check_keys(ej, ep, {"kind", "start_s", "duration_s", "waveform", "filter", "level_dbm"});
        PulseEvent e;
        e.kind = event_kind_from_string(get_string(ej, ep, "kind"));
        e.start_s = get_double(ej, ep, "start_s");
        e.duration_s = get_double_or(ej, ep, "duration_s", 0.0);
        e.waveform_id = get_string_or(ej, ep, "waveform", "");
        e.filter_id = get_string_or(ej, ep, "filter", "");
        e.level_dbm = get_level_or(ej, ep, "level_dbm", 0.0);
        s.events.push_back(std::move(e));
    }
    return s;
}

MaskingConfig parse_masking(const json& j, const std::string& path)
{
    check_keys(j, path, {"offsets_m", "cal_injection_dbm", "noise_power"});
    MaskingConfig m;
    const json& offs = require(j, path, "offsets_m");
    if (!offs.is_array()) throw ParseError("'" + path + ".offsets_m' must be an array");
    for (const auto& v : offs) m.offsets_m.push_back(as_double(v, path + ".offsets_m"));
    m.cal_injection_dbm = get_level_or(j, path, "cal_injection_dbm", 0.0);
    m.noise_power = get_double_or(j, path, "noise_power", 0.0);
    return m;
}

Scenario parse_scenario(const json& j, const std::string& path)
{
    check_keys(j, path,
               {"schedule_ref", "seed", "noise_power", "detection_threshold_db", "targets"});
    Scenario s;
    s.schedule_ref = get_string_or(j, path, "schedule_ref", "schedule");
    s.seed = get_u64_or(j, path, "seed", 0);
    s.noise_power = get_double_or(j, path, "noise_power", 0.0);
    s.detection_threshold_db = get_double_or(j, path, "detection_threshold_db", 12.0);
    const json& targets = require(j, path, "targets");
    if (!targets.is_array()) throw ParseError("'" + path + ".targets' must be an array");
    std::size_t idx = 0;
    for (const auto& tj : targets) {
        const std::string tp = path + ".targets[" + std::to_string(idx++) + "]";
        check_keys(tj, tp, {"range_m", "echo_power_dbm", "doppler_hz"});
        PointTarget t;
        t.range_m = get_double(tj, tp, "range_m");
        t.echo_power_dbm = get_double(tj, tp, "echo_power_dbm");
        t.doppler_hz = get_double_or(tj, tp, "doppler_hz", 0.0);
        s.targets.push_back(t);
    }
    return s;
}

} // namespace

double WaveformConfig::duration_s() const
{
    return type == Type::lfm ? chirp.duration_s : cw_duration_s;
}

const IQSignal& Config::waveform(const std::string& id) const
{
    const auto it = waveforms_.find(id);
    if (it == waveforms_.end()) {
        throw CrossRefError("waveform '" + id + "' is not registered");
    }
    return it->second;
}

const FilterTaps& Config::filter(const std::string& id)
{
    const auto hit = filters_.find(id);
    if (hit != filters_.end()) return hit->second;
    const auto cfg_it = filter_configs.find(id);
    if (cfg_it == filter_configs.end()) {
        throw CrossRefError("filter '" + id + "' is not registered");
    }
    const FilterConfig& fc = cfg_it->second;
    FilterTaps taps;
    switch (fc.kind) {
    case FilterKind::matched:
        taps = matched_filter(waveform(fc.waveform_id), tap_budget);
        break;
    case FilterKind::mismatched: {
        const IQSignal& wf = waveform(fc.waveform_id);
        std::size_t halfwidth;
        if (fc.mainlobe_halfwidth_samples) {
            halfwidth = *fc.mainlobe_halfwidth_samples;
        } else {
            // default: ceil(fs / B) samples; 1 for unmodulated waveforms
            const auto& wcfg = waveform_configs.at(fc.waveform_id);
            const double b = wcfg.type == WaveformConfig::Type::lfm ? wcfg.chirp.bandwidth_hz : 0.0;
            halfwidth = b > 0.0
                            ? static_cast<std::size_t>(std::ceil(wf.sample_rate_hz / b))
                            : 1;
        }
        taps = design_mismatched_filter(wf, fc.length, halfwidth, {}, tap_budget);
        break;
    }
    case FilterKind::delay:
        taps = delay_filter(fc.delay_samples);
        break;
    }
    taps.source_waveform_id = fc.waveform_id;
    return filters_.emplace(id, std::move(taps)).first->second;
}

const std::map<std::string, FilterTaps>& Config::all_filters()
{
    for (const auto& [id, cfg] : filter_configs) {
        (void)cfg;
        filter(id);
    }
    return filters_;
}

TimingSchedule Config::build_validated_schedule() const
{
    if (!schedule_config) throw CrossRefError("configuration has no schedule section");
    return build_schedule(schedule_config->prt_s, schedule_config->events,
                          schedule_config->max_range_m, schedule_config->guard_s);
}

Config load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("config parse error: " + std::string(e.what()));
    }

    check_keys(j, "config",
               {"sample_rate_hz", "tap_budget", "waveforms", "filters", "mixer", "plan", "mask",
                "cascade", "adc", "schedule", "masking", "scenario"});

    Config cfg;
    cfg.sample_rate_hz = get_double_or(j, "config", "sample_rate_hz", 0.0);
    cfg.tap_budget =
        static_cast<std::size_t>(get_double_or(j, "config", "tap_budget",
                                               static_cast<double>(kDefaultTapBudget)));

    if (const auto it = j.find("waveforms"); it != j.end()) {
        if (!(cfg.sample_rate_hz > 0.0)) {
            throw InvariantError("config.sample_rate_hz must be positive when waveforms "
                                 "are declared");
        }
        for (const auto& item : it->items()) {
            const std::string wpath = "waveforms." + item.key();
            const WaveformConfig wc = parse_waveform(item.value(), wpath);
            try {
                cfg.waveforms_[item.key()] =
                    wc.type == WaveformConfig::Type::lfm
                        ? generate_lfm_chirp(wc.chirp, cfg.sample_rate_hz)
                        : generate_cw_pulse(wc.cw_duration_s, wc.cw_offset_hz, wc.cw_amplitude,
                                            cfg.sample_rate_hz);
            } catch (const ValidationError& e) {
                throw InvariantError(wpath + ": " + e.what());
            }
            cfg.waveform_configs[item.key()] = wc;
        }
    }

    if (const auto it = j.find("filters"); it != j.end()) {
        for (const auto& item : it->items()) {
            const std::string fpath = "filters." + item.key();
            FilterConfig fc = parse_filter(item.value(), fpath);
            if (fc.kind != FilterKind::delay) {
                if (!cfg.waveform_configs.count(fc.waveform_id)) {
                    throw CrossRefError(fpath + " references unregistered waveform '" +
                                        fc.waveform_id + "'");
                }
                if (fc.kind == FilterKind::mismatched) {
                    const std::size_t wlen = cfg.waveforms_.at(fc.waveform_id).size();
                    if (fc.length > cfg.tap_budget) {
                        throw InvariantError(fpath + ": length exceeds the tap budget of " +
                                             std::to_string(cfg.tap_budget));
                    }
                    if (fc.length < wlen) {
                        throw InvariantError(fpath + ": length is shorter than waveform '" +
                                             fc.waveform_id + "' (" + std::to_string(wlen) + ")");
                    }
                }
            }
            cfg.filter_configs[item.key()] = std::move(fc);
        }
    }

    if (const auto it = j.find("mixer"); it != j.end()) {
        cfg.mixer = parse_mixer(*it, "mixer");
        try {
            cfg.mixer->validate();
        } catch (const ValidationError& e) {
            throw InvariantError("mixer: " + std::string(e.what()));
        }
    }
    if (const auto it = j.find("plan"); it != j.end()) {
        cfg.plan = parse_plan(*it, "plan");
        try {
            cfg.plan->plan.validate();
        } catch (const ValidationError& e) {
            throw InvariantError("plan: " + std::string(e.what()));
        }
    }
    if (const auto it = j.find("mask"); it != j.end()) {
        cfg.mask = parse_mask(*it, "mask");
        try {
            cfg.mask->validate();
        } catch (const ValidationError& e) {
            throw InvariantError("mask: " + std::string(e.what()));
        }
    }
    if (const auto it = j.find("cascade"); it != j.end()) {
        cfg.cascade = parse_cascade(*it, "cascade");
    }
    if (const auto it = j.find("adc"); it != j.end()) {
        cfg.adc = parse_adc(*it, "adc");
    }

    if (const auto it = j.find("schedule"); it != j.end()) {
        ScheduleConfig sc = parse_schedule(*it, "schedule");
        std::size_t idx = 0;
        for (auto& e : sc.events) {
            const std::string ep = "schedule.events[" + std::to_string(idx++) + "]";
            const bool needs_assets = e.kind != EventKind::noise_injection;
            if (needs_assets) {
                if (!cfg.waveform_configs.count(e.waveform_id)) {
                    throw CrossRefError(ep + " references unregistered waveform '" +
                                        e.waveform_id + "'");
                }
                if (!cfg.filter_configs.count(e.filter_id)) {
                    throw CrossRefError(ep + " references unregistered filter '" + e.filter_id +
                                        "'");
                }
                const double wf_dur = cfg.waveform_configs.at(e.waveform_id).duration_s();
                if (e.duration_s == 0.0) {
                    e.duration_s = wf_dur;
                } else if (std::abs(e.duration_s - wf_dur) > 1.0 / cfg.sample_rate_hz) {
                    throw InvariantError(ep + ": duration differs from waveform '" +
                                         e.waveform_id + "' duration");
                }
            } else if (e.duration_s == 0.0) {
                throw ParseError(ep + ": noise_injection requires duration_s");
            }
        }
        cfg.schedule_config = std::move(sc);
        // surfaces overlap and window violations at load time
        (void)cfg.build_validated_schedule();
    }

    if (const auto it = j.find("masking"); it != j.end()) {
        cfg.masking = parse_masking(*it, "masking");
        if (!cfg.schedule_config) {
            throw CrossRefError("masking section requires a schedule section");
        }
    }

    if (const auto it = j.find("scenario"); it != j.end()) {
        Scenario sc = parse_scenario(*it, "scenario");
        sc.sample_rate_hz = cfg.sample_rate_hz;
        if (sc.schedule_ref != "schedule" || !cfg.schedule_config) {
            throw CrossRefError("scenario.schedule_ref '" + sc.schedule_ref +
                                "' does not resolve to a schedule section");
        }
        for (std::size_t i = 0; i < sc.targets.size(); ++i) {
            if (!(sc.targets[i].range_m > 0.0) ||
                sc.targets[i].range_m > cfg.schedule_config->max_range_m) {
                throw InvariantError("scenario.targets[" + std::to_string(i) +
                                     "].range_m must be positive and within schedule.max_range_m");
            }
        }
        cfg.scenario = std::move(sc);
    }

    return cfg;
}

std::string Config::dump_effective() const
{
    ordered_json j;
    if (sample_rate_hz > 0.0) j["sample_rate_hz"] = sample_rate_hz;
    j["tap_budget"] = tap_budget;

    if (!waveform_configs.empty()) {
        ordered_json w;
        for (const auto& [id, wc] : waveform_configs) {
            ordered_json e;
            if (wc.type == WaveformConfig::Type::lfm) {
                e["type"] = "lfm";
                e["bandwidth_hz"] = wc.chirp.bandwidth_hz;
                e["duration_s"] = wc.chirp.duration_s;
                e["center_offset_hz"] = wc.chirp.center_offset_hz;
                e["amplitude"] = wc.chirp.amplitude;
                e["sweep"] = wc.chirp.sweep == SweepDirection::up ? "up" : "down";
                e["window"] = wc.chirp.window == ChirpWindow::rectangular ? "rectangular"
                              : wc.chirp.window == ChirpWindow::hann      ? "hann"
                                                                          : "taylor";
                if (wc.chirp.window == ChirpWindow::taylor) {
                    e["taylor_nbar"] = wc.chirp.taylor_nbar;
                    e["taylor_sll_db"] = wc.chirp.taylor_sll_db;
                }
            } else {
                e["type"] = "cw";
                e["duration_s"] = wc.cw_duration_s;
                e["offset_hz"] = wc.cw_offset_hz;
                e["amplitude"] = wc.cw_amplitude;
            }
            w[id] = std::move(e);
        }
        j["waveforms"] = std::move(w);
    }

    if (!filter_configs.empty()) {
        ordered_json f;
        for (const auto& [id, fc] : filter_configs) {
            ordered_json e;
            e["type"] = to_string(fc.kind);
            if (fc.kind == FilterKind::delay) {
                e["delay_samples"] = fc.delay_samples;
            } else {
                e["waveform"] = fc.waveform_id;
            }
            if (fc.kind == FilterKind::mismatched) {
                e["length"] = fc.length;
                if (fc.mainlobe_halfwidth_samples) {
                    e["mainlobe_halfwidth_samples"] = *fc.mainlobe_halfwidth_samples;
                }
            }
            f[id] = std::move(e);
        }
        j["filters"] = std::move(f);
    }

    if (mixer) {
        ordered_json m;
        m["conversion_loss_db"] = mixer->conversion_loss_db;
        m["lo_to_if_isolation_db"] = mixer->lo_to_if_isolation_db;
        m["lo_drive_dbm"] = mixer->lo_drive_dbm;
        m["max_order"] = mixer->max_order;
        if (mixer->default_suppression_dbc) {
            m["default_suppression_dbc"] = *mixer->default_suppression_dbc;
        }
        ordered_json table = ordered_json::array();
        for (const auto& [mn, dbc] : mixer->spur_table) {
            table.push_back({{"m", mn.first}, {"n", mn.second}, {"suppression_dbc", dbc}});
        }
        m["spur_table"] = std::move(table);
        j["mixer"] = std::move(m);
    }

    if (plan) {
        ordered_json p;
        p["rf_hz"] = plan->plan.rf_hz;
        p["lo_hz"] = plan->plan.lo_hz;
        p["if_center_hz"] = plan->plan.if_center_hz;
        p["analog_bandwidth_hz"] = plan->plan.analog_bandwidth_hz;
        p["sideband"] = plan->plan.sideband == Sideband::difference ? "difference" : "sum";
        p["rf_input_dbm"] = plan->rf_input_dbm;
        p["spur_threshold_dbm"] = plan->spur_threshold_dbm;
        if (!plan->bandwidth_candidates_hz.empty()) {
            p["bandwidth_candidates_hz"] = plan->bandwidth_candidates_hz;
        }
        j["plan"] = std::move(p);
    }

    if (mask) {
        ordered_json bps = ordered_json::array();
        for (const auto& [f, a] : mask->breakpoints) {
            bps.push_back({{"frequency_hz", f}, {"attenuation_db", a}});
        }
        j["mask"] = {{"breakpoints", std::move(bps)}};
    }

    if (cascade) {
        ordered_json c;
        c["input_dbm"] = cascade->input_dbm;
        c["noise_bandwidth_hz"] = cascade->noise_bandwidth_hz;
        ordered_json stages = ordered_json::array();
        for (const auto& st : cascade->stages) {
            ordered_json s;
            s["name"] = st.name;
            s["gain_db"] = st.gain_db;
            s["nf_db"] = st.nf_db;
            if (std::isfinite(st.oip3_dbm)) {
                s["oip3_dbm"] = st.oip3_dbm;
            } else {
                s["oip3_dbm"] = "inf";
            }
            if (st.p1db_out_dbm) s["p1db_out_dbm"] = *st.p1db_out_dbm;
            if (st.power_consumption_w) s["power_consumption_w"] = *st.power_consumption_w;
            stages.push_back(std::move(s));
        }
        c["stages"] = std::move(stages);
        j["cascade"] = std::move(c);
    }

    if (adc) {
        j["adc"] = {{"bits", adc->bits},
                    {"sample_rate_hz", adc->sample_rate_hz},
                    {"full_scale_vpp", adc->full_scale_vpp},
                    {"input_impedance_ohm", adc->input_impedance_ohm}};
    }

    if (schedule_config) {
        ordered_json s;
        s["prt_s"] = schedule_config->prt_s;
        s["guard_s"] = schedule_config->guard_s;
        s["max_range_m"] = schedule_config->max_range_m;
        ordered_json events = ordered_json::array();
        for (const auto& e : schedule_config->events) {
            ordered_json ej;
            ej["kind"] = to_string(e.kind);
            ej["start_s"] = e.start_s;
            ej["duration_s"] = e.duration_s;
            if (!e.waveform_id.empty()) ej["waveform"] = e.waveform_id;
            if (!e.filter_id.empty()) ej["filter"] = e.filter_id;
            if (e.kind == EventKind::cal_short || e.kind == EventKind::cal_medium ||
                e.kind == EventKind::noise_injection) {
                if (std::isfinite(e.level_dbm)) {
                    ej["level_dbm"] = e.level_dbm;
                } else {
                    ej["level_dbm"] = "-inf";
                }
            }
            events.push_back(std::move(ej));
        }
        s["events"] = std::move(events);
        j["schedule"] = std::move(s);
    }

    if (masking) {
        ordered_json m;
        m["offsets_m"] = masking->offsets_m;
        if (std::isfinite(masking->cal_injection_dbm)) {
            m["cal_injection_dbm"] = masking->cal_injection_dbm;
        } else {
            m["cal_injection_dbm"] = "-inf";
        }
        m["noise_power"] = masking->noise_power;
        j["masking"] = std::move(m);
    }

    if (scenario) {
        ordered_json s;
        s["schedule_ref"] = scenario->schedule_ref;
        s["seed"] = scenario->seed;
        s["noise_power"] = scenario->noise_power;
        s["detection_threshold_db"] = scenario->detection_threshold_db;
        ordered_json targets = ordered_json::array();
        for (const auto& t : scenario->targets) {
            targets.push_back({{"range_m", t.range_m},
                               {"echo_power_dbm", t.echo_power_dbm},
                               {"doppler_hz", t.doppler_hz}});
        }
        s["targets"] = std::move(targets);
        j["scenario"] = std::move(s);
    }

    return j.dump(2) + "\n";
}

} // namespace radsim
