// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radsim/cascade.hpp"
#include "radsim/freq_plan.hpp"
#include "radsim/iq_signal.hpp"
#include "radsim/pulse_compression.hpp"
#include "radsim/scenario.hpp"
#include "radsim/timing.hpp"

namespace radsim {

struct WaveformConfig {
    enum class Type { lfm, cw } type = Type::lfm;
    ChirpSpec chirp;         // lfm
    double cw_duration_s = 0.0;
    double cw_offset_hz = 0.0;
    double cw_amplitude = 1.0;

    double duration_s() const;
};

struct FilterConfig {
    FilterKind kind = FilterKind::matched;
    std::string waveform_id;               // matched / mismatched
    std::size_t length = 0;                // mismatched
    std::optional<std::size_t> mainlobe_halfwidth_samples; // default ceil(fs/B)
    std::size_t delay_samples = 0;         // delay
};

struct PlanConfig {
    FrequencyPlan plan;
    double rf_input_dbm = -20.0;
    double spur_threshold_dbm = -100.0;
    std::vector<double> bandwidth_candidates_hz; // optional sweep
};

struct CascadeConfig {
    std::vector<CascadeStage> stages;
    double input_dbm = -60.0;
    double noise_bandwidth_hz = 5.0e6;
};

struct MaskingConfig {
    std::vector<double> offsets_m;
    double cal_injection_dbm = 0.0;
    double noise_power = 0.0;
};

struct ScheduleConfig {
    double prt_s = 0.0;
    double guard_s = 1.0e-6;
    double max_range_m = 0.0;
    std::vector<PulseEvent> events;
};

/// Parsed, validated, cross-referenced configuration. Waveforms are
/// materialized at load time so invariants like the Nyquist bound surface
/// as load errors; filters are designed on first use and memoized.
class Config {
public:
    double sample_rate_hz = 0.0;
    std::size_t tap_budget = kDefaultTapBudget;

    std::map<std::string, WaveformConfig> waveform_configs;
    std::map<std::string, FilterConfig> filter_configs;
    std::optional<MixerSpec> mixer;
    std::optional<PlanConfig> plan;
    std::optional<FilterMask> mask;
    std::optional<CascadeConfig> cascade;
    std::optional<AdcSpec> adc;
    std::optional<ScheduleConfig> schedule_config;
    std::optional<MaskingConfig> masking;
    std::optional<Scenario> scenario;

    const IQSignal& waveform(const std::string& id) const;
    const FilterTaps& filter(const std::string& id); // designs and memoizes
    const std::map<std::string, IQSignal>& waveforms() const { return waveforms_; }
    /// Designs every registered filter and returns the full map.
    const std::map<std::string, FilterTaps>& all_filters();

    TimingSchedule build_validated_schedule() const;

    /// Effective configuration with defaults filled in, as a JSON string.
    std::string dump_effective() const;

private:
    friend Config load_config(const std::filesystem::path&);
    std::map<std::string, IQSignal> waveforms_;
    std::map<std::string, FilterTaps> filters_;
};

// Loads the single JSON configuration file. Unknown keys anywhere are
// errors (UnknownKey names the offending path), dangling references are
// CrossRefError, and any module-level invariant violated by the parsed
// values is reported as InvariantError with the field path.
Config load_config(const std::filesystem::path& path);

} // namespace radsim
