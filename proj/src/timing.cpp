// SPDX-License-Identifier: Apache-2.0

#include "radsim/timing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radsim/errors.hpp"
#include "radsim/kernels.hpp"

namespace radsim {

namespace {

bool is_transmit(EventKind k)
{
    return k == EventKind::transmit_short || k == EventKind::transmit_medium;
}
} // namespace

const char* to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::transmit_short: return "transmit_short";
    case EventKind::transmit_medium: return "transmit_medium";
    case EventKind::noise_injection: return "noise_injection";
    case EventKind::cal_short: return "cal_short";
    case EventKind::cal_medium: return "cal_medium";
    }
    return "transmit_medium";
}

EventKind event_kind_from_string(const std::string& s)
{
    if (s == "transmit_short") return EventKind::transmit_short;
    if (s == "transmit_medium") return EventKind::transmit_medium;
    if (s == "noise_injection") return EventKind::noise_injection;
    if (s == "cal_short") return EventKind::cal_short;
    if (s == "cal_medium") return EventKind::cal_medium;
    throw ParseError("unknown event kind '" + s + "'");
}

std::optional<PulseEvent> TimingSchedule::first_event(EventKind kind) const
{
    for (const auto& e : events) {
        if (e.kind == kind) return e;
    }
    return std::nullopt;
}

double blind_range_m(double pulse_duration_s)
{
    return kSpeedOfLight * pulse_duration_s / 2.0;
}

TimingSchedule build_schedule(double prt_s, std::vector<PulseEvent> events,
                              double max_range_m, double guard_s)
{
    if (!(prt_s > 0.0)) throw InvariantError("PRT must be positive");
    if (guard_s < 0.0) throw InvariantError("guard time must be nonnegative");

    std::stable_sort(events.begin(), events.end(),
                     [](const PulseEvent& a, const PulseEvent& b) { return a.start_s < b.start_s; });

    double last_tx_end = 0.0;
    bool any_tx = false;
    for (const auto& e : events) {
        if (e.start_s < 0.0 || !(e.duration_s > 0.0)) {
            throw InvariantError("event start must be >= 0 and duration > 0");
        }
        if (e.start_s + e.duration_s > prt_s) {
            throw WindowError("event of kind " + std::string(to_string(e.kind)) +
                              " extends past the PRT");
        }
        if (is_transmit(e.kind)) {
            any_tx = true;
            last_tx_end = std::max(last_tx_end, e.start_s + e.duration_s);
        }
    }

    auto check_overlaps = [&](auto filter, const char* what) {
        const PulseEvent* prev = nullptr;
        for (const auto& e : events) {
            if (!filter(e.kind)) continue;
            if (prev && e.start_s < prev->start_s + prev->duration_s) {
                throw OverlapError(std::string(what) + " events " + to_string(prev->kind) +
                                   " and " + to_string(e.kind) + " overlap");
            }
            prev = &e;
        }
    };
    check_overlaps([](EventKind k) { return is_transmit(k); }, "transmit");
    check_overlaps([](EventKind k) { return !is_transmit(k); }, "injection");

    TimingSchedule s;
    s.prt_s = prt_s;
    s.guard_s = guard_s;
    s.max_range_m = max_range_m;
    s.receive_window_start_s = any_tx ? last_tx_end + guard_s : 0.0;
    s.receive_window_end_s = prt_s;
    if (s.receive_window_start_s >= s.receive_window_end_s) {
        throw WindowError("no receive window remains after the transmit events");
    }

    for (const auto& e : events) {
        if (!is_transmit(e.kind)) {
            if (e.start_s < s.receive_window_start_s ||
                e.start_s + e.duration_s > s.receive_window_end_s) {
                throw WindowError("injection event " + std::string(to_string(e.kind)) +
                                  " lies outside the receive window");
            }
        }
    }

    const double window_range = kSpeedOfLight * (s.receive_window_end_s - s.receive_window_start_s) / 2.0;
    if (max_range_m > window_range) {
        throw RangeError("max range " + std::to_string(max_range_m) +
                         " m exceeds what the receive window can observe (" +
                         std::to_string(window_range) + " m)");
    }
    s.events = std::move(events);
    return s;
}

CoverageReport coverage_check(const TimingSchedule& schedule, double short_waveform_duration_s,
                              double medium_waveform_duration_s)
{
    CoverageReport r;
    const double blind_short = blind_range_m(short_waveform_duration_s);
    const double blind_medium = blind_range_m(medium_waveform_duration_s);
    r.boundary_m = blind_medium;

    const bool has_short = schedule.first_event(EventKind::transmit_short).has_value();
    const bool has_medium = schedule.first_event(EventKind::transmit_medium).has_value();

    if (!has_medium) {
        r.pass = true; // nothing to cover
        return r;
    }
    if (!has_short) {
        r.pass = false;
        r.has_uncovered = true;
        r.uncovered_lo_m = 0.0;
        r.uncovered_hi_m = blind_medium;
        return r;
    }
    const bool spans = blind_short <= blind_medium && schedule.max_range_m >= blind_medium;
    r.pass = spans;
    if (spans) {
        r.has_covered_gap = true;
        r.covered_lo_m = blind_short;
        r.covered_hi_m = blind_medium;
    } else {
        r.has_uncovered = true;
        r.uncovered_lo_m = std::min(blind_short, blind_medium);
        r.uncovered_hi_m = blind_medium;
    }
    return r;
}

MaskingReport simulate_cal_window(const TimingSchedule& schedule,
                                  const std::map<std::string, IQSignal>& waveforms,
                                  const std::map<std::string, FilterTaps>& filters,
                                  double cal_injection_dbm, double noise_power,
                                  const std::vector<double>& weak_echo_range_offsets_m,
                                  double sample_rate_hz)
{
    const auto cal = schedule.first_event(EventKind::cal_medium);
    if (!cal) throw MissingCalEvent("schedule has no cal_medium event");
    const auto wf_it = waveforms.find(cal->waveform_id);
    if (wf_it == waveforms.end()) {
        throw UnregisteredAsset("cal_medium waveform '" + cal->waveform_id + "' is not registered");
    }
    const auto flt_it = filters.find(cal->filter_id);
    if (flt_it == filters.end()) {
        throw UnregisteredAsset("cal_medium filter '" + cal->filter_id + "' is not registered");
    }
    const IQSignal& x = wf_it->second;
    const FilterTaps& taps = flt_it->second;
    if (noise_power < 0.0) throw InvariantError("noise power must be nonnegative");

    constexpr double kDetectionMarginDb = 10.0;
    const double fs = sample_rate_hz;

    // Receive window record with the scaled cal pulse at its scheduled slot.
    const auto win_len = static_cast<std::size_t>(
        std::round((schedule.receive_window_end_s - schedule.receive_window_start_s) * fs));
    const auto slot = static_cast<std::size_t>(
        std::round((cal->start_s - schedule.receive_window_start_s) * fs));
    const double amp = std::isinf(cal_injection_dbm) && cal_injection_dbm < 0.0
                           ? 0.0
                           : std::pow(10.0, cal_injection_dbm / 20.0);
    cvec window(std::max(win_len, slot + x.size()), cdouble{});
    for (std::size_t i = 0; i < x.size(); ++i) {
        window[slot + i] = amp * x.samples[i];
    }
    const cvec compressed = kernels::convolve_direct(window, taps.taps);

    double taps_energy = 0.0;
    for (const auto& t : taps.taps) taps_energy += std::norm(t);
    const double noise_floor = noise_power * taps_energy; // after compression

    MaskingReport report;
    report.support_gates = x.size() + taps.taps.size() - 1;
    report.noise_limited_dbm = 10.0 * std::log10(noise_floor) + kDetectionMarginDb;

    const std::size_t peak_gate = slot + response_peak_lag(x, taps);
    for (const double offset_m : weak_echo_range_offsets_m) {
        MaskingRow row;
        row.offset_m = offset_m;
        const auto dg = static_cast<std::ptrdiff_t>(std::round(2.0 * offset_m / kSpeedOfLight * fs));
        const std::ptrdiff_t gate = static_cast<std::ptrdiff_t>(peak_gate) + dg;
        double side = 0.0;
        if (gate >= 0 && gate < static_cast<std::ptrdiff_t>(compressed.size())) {
            side = std::norm(compressed[static_cast<std::size_t>(gate)]);
        }
        if (side > noise_floor) {
            row.limit = DetectionLimit::sidelobe;
            row.min_detectable_dbm = 10.0 * std::log10(side) + kDetectionMarginDb;
        } else {
            row.limit = DetectionLimit::noise;
            row.min_detectable_dbm = report.noise_limited_dbm;
        }
        report.rows.push_back(row);
    }
    return report;
}

} // namespace radsim
