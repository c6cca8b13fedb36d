// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "radsim/iq_signal.hpp"
#include "radsim/pulse_compression.hpp"
#include "radsim/timing.hpp"

namespace radsim {

struct PointTarget {
    double range_m = 0.0;
    double echo_power_dbm = 0.0; // at the receiver input plane
    double doppler_hz = 0.0;
};

struct Scenario {
    std::vector<PointTarget> targets;
    double noise_power = 0.0;
    std::uint64_t seed = 0;
    std::string schedule_ref;
    double sample_rate_hz = 0.0;
    double detection_threshold_db = 12.0;
};

struct Detection {
    double range_m = 0.0;
    double power_dbm = 0.0;
};

struct RangeProfile {
    std::vector<double> power_db;  // per gate, gate spacing c/(2 fs)
    double range_step_m = 0.0;
    double range_of(std::size_t gate) const { return static_cast<double>(gate) * range_step_m; }
};

struct SimulationResult {
    RangeProfile stitched;
    std::vector<EventKind> stitched_source; // which pulse supplied each gate
    std::map<EventKind, RangeProfile> per_pulse;
    std::vector<Detection> detections;
    double stitch_boundary_m = 0.0; // blind range of the medium pulse
};

// Simulates every transmit event of the schedule: target echoes are
// superposed as integer-gate delayed scaled copies of the waveform (delay
// = round(2 R / c * fs)), the receiver is blanked for the pulse's own
// transmit duration, seeded noise is added, and the record is compressed
// with the event's registered filter. Ranges below the medium pulse's
// blind range take the short-pulse profile, the rest the medium-pulse
// profile. Deterministic for a fixed scenario seed.
SimulationResult run_scenario(const Scenario& scenario, const TimingSchedule& schedule,
                              const std::map<std::string, IQSignal>& waveforms,
                              const std::map<std::string, FilterTaps>& filters);

// Local maxima of the profile at least threshold_db above the median floor.
// A maximum within two gates of a stronger one is absorbed into it.
std::vector<Detection> detect_peaks(const RangeProfile& profile, double threshold_db_above_floor);

} // namespace radsim
