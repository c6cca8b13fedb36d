// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radsim/iq_signal.hpp"
#include "radsim/pulse_compression.hpp"

namespace radsim {

enum class EventKind { transmit_short, transmit_medium, noise_injection, cal_short, cal_medium };

struct PulseEvent {
    EventKind kind = EventKind::transmit_medium;
    double start_s = 0.0;
    double duration_s = 0.0;
    std::string waveform_id; // empty for noise_injection
    std::string filter_id;   // empty for noise_injection
    double level_dbm = 0.0;  // injection level; unused for transmits
};

struct TimingSchedule {
    double prt_s = 0.0;
    std::vector<PulseEvent> events; // sorted by start time
    double receive_window_start_s = 0.0;
    double receive_window_end_s = 0.0;
    double max_range_m = 0.0;
    double guard_s = 0.0;

    std::optional<PulseEvent> first_event(EventKind kind) const;
};

struct CoverageReport {
    bool pass = false;
    double boundary_m = 0.0;     // blind range of the medium pulse
    bool has_covered_gap = false;
    double covered_lo_m = 0.0;   // interval the short pulse covers
    double covered_hi_m = 0.0;
    bool has_uncovered = false;
    double uncovered_lo_m = 0.0;
    double uncovered_hi_m = 0.0;
};

enum class DetectionLimit { noise, sidelobe };

struct MaskingRow {
    double offset_m = 0.0;
    DetectionLimit limit = DetectionLimit::noise;
    double min_detectable_dbm = 0.0;
};

struct MaskingReport {
    std::vector<MaskingRow> rows;
    double noise_limited_dbm = 0.0;      // floor + detection margin
    std::size_t support_gates = 0;       // waveform length + filter length - 1
};

/// One-way blind range c*tau/2 in meters.
double blind_range_m(double pulse_duration_s);

// Validates event layout and derives the receive window, which runs from
// the end of the last transmit event plus the guard time to the end of the
// PRT (the full PRT when there are no transmits). Transmit events must not
// overlap each other; injection events must not overlap each other and
// must sit inside the receive window. The accept/reject decision does not
// depend on the order of the input event list.
TimingSchedule build_schedule(double prt_s, std::vector<PulseEvent> events,
                              double max_range_m, double guard_s = 1.0e-6);

// Blind-range coverage: the short pulse must exist and its blind range
// must not exceed the medium pulse's, with the schedule's max range
// reaching the medium blind range so the short-pulse return window spans
// the gap in between.
CoverageReport coverage_check(const TimingSchedule& schedule, double short_waveform_duration_s,
                              double medium_waveform_duration_s);

// Synthesizes the receive window with the medium cal pulse injected at its
// scheduled position, compresses it with the event's registered filter,
// and reports the minimum detectable echo power per range offset: 10 dB
// above whichever is higher at that offset, the compressed sidelobe of the
// cal injection or the post-compression noise floor noise_power*||taps||^2.
// cal_injection_dbm may be -inf to model the injection switched off.
MaskingReport simulate_cal_window(const TimingSchedule& schedule,
                                  const std::map<std::string, IQSignal>& waveforms,
                                  const std::map<std::string, FilterTaps>& filters,
                                  double cal_injection_dbm, double noise_power,
                                  const std::vector<double>& weak_echo_range_offsets_m,
                                  double sample_rate_hz);

const char* to_string(EventKind kind);
EventKind event_kind_from_string(const std::string& s);

} // namespace radsim
