// SPDX-License-Identifier: Apache-2.0

#include "radsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "radsim/errors.hpp"
#include "radsim/kernels.hpp"

namespace radsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-event noise substream: splitmix64 step of the scenario seed keyed by
// the event ordinal, so event records are independent yet reproducible.
std::uint64_t event_seed(std::uint64_t scenario_seed, std::uint64_t ordinal)
{
    std::uint64_t z = scenario_seed + (ordinal + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

SimulationResult run_scenario(const Scenario& scenario, const TimingSchedule& schedule,
                              const std::map<std::string, IQSignal>& waveforms,
                              const std::map<std::string, FilterTaps>& filters)
{
    const double fs = scenario.sample_rate_hz;
    if (!(fs > 0.0)) throw InvariantError("scenario sample rate must be positive");
    for (const auto& t : scenario.targets) {
        if (!(t.range_m > 0.0) || t.range_m > schedule.max_range_m) {
            throw InvariantError("target range must be positive and within the schedule's "
                                 "max range");
        }
    }

    const auto range_gates =
        static_cast<std::size_t>(std::round(2.0 * schedule.max_range_m / kSpeedOfLight * fs));
    const double range_step = kSpeedOfLight / (2.0 * fs);

    SimulationResult result;
    const auto medium = schedule.first_event(EventKind::transmit_medium);
    double medium_duration = 0.0;

    std::uint64_t ordinal = 0;
    for (const auto& ev : schedule.events) {
        if (ev.kind != EventKind::transmit_short && ev.kind != EventKind::transmit_medium) {
            continue;
        }
        const auto wf_it = waveforms.find(ev.waveform_id);
        if (wf_it == waveforms.end()) {
            throw UnregisteredAsset("waveform '" + ev.waveform_id + "' is not registered");
        }
        const auto flt_it = filters.find(ev.filter_id);
        if (flt_it == filters.end()) {
            throw UnregisteredAsset("filter '" + ev.filter_id + "' is not registered");
        }
        const IQSignal& x = wf_it->second;
        const FilterTaps& taps = flt_it->second;
        if (std::abs(x.sample_rate_hz - fs) > 1e-6 * fs) {
            throw InconsistentRates("waveform '" + ev.waveform_id +
                                    "' sample rate differs from the scenario rate");
        }
        if (ev.kind == EventKind::transmit_medium) {
            medium_duration = static_cast<double>(x.size()) / fs;
        }

        // Echo record with t = 0 at this pulse's own transmit start.
        cvec record(range_gates + x.size() + 1, cdouble{});
        for (const auto& target : scenario.targets) {
            const auto delay =
                static_cast<std::size_t>(std::round(2.0 * target.range_m / kSpeedOfLight * fs));
            const double amp = std::pow(10.0, target.echo_power_dbm / 20.0);
            if (target.doppler_hz == 0.0) {
                for (std::size_t i = 0; i < x.size(); ++i) {
                    record[delay + i] += amp * x.samples[i];
                }
            } else {
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double cyc = target.doppler_hz * static_cast<double>(delay + i) / fs;
                    const double arg = 2.0 * std::numbers::pi * std::fmod(cyc, 1.0);
                    record[delay + i] += amp * x.samples[i] * cdouble{std::cos(arg), std::sin(arg)};
                }
            }
        }

        // Receiver is blanked while this pulse transmits.
        const auto blind_gates = static_cast<std::size_t>(std::round(ev.duration_s * fs));
        std::fill(record.begin(),
                  record.begin() + static_cast<std::ptrdiff_t>(std::min(blind_gates, record.size())),
                  cdouble{});

        if (scenario.noise_power > 0.0) {
            GaussianSource src(event_seed(scenario.seed, ordinal));
            const double scale = std::sqrt(scenario.noise_power / 2.0);
            for (std::size_t i = blind_gates; i < record.size(); ++i) {
                const auto [z1, z2] = src.next_pair();
                record[i] += cdouble{scale * z1, scale * z2};
            }
        }
        ++ordinal;

        const cvec compressed = kernels::convolve_direct(record, taps.taps);
        const std::size_t k0 = response_peak_lag(x, taps);

        RangeProfile profile;
        profile.range_step_m = range_step;
        profile.power_db.resize(range_gates + 1);
        for (std::size_t g = 0; g <= range_gates; ++g) {
            const std::size_t idx = g + k0;
            const double p = idx < compressed.size() ? std::norm(compressed[idx]) : 0.0;
            profile.power_db[g] = p > 0.0 ? 10.0 * std::log10(p) : -kInf;
        }
        result.per_pulse[ev.kind] = std::move(profile);
    }

    if (result.per_pulse.empty()) {
        throw InvariantError("schedule contains no transmit events to simulate");
    }

    result.stitch_boundary_m = medium ? blind_range_m(medium_duration) : 0.0;

    // Stitch: short-pulse gates below the medium blind range, medium beyond.
    const auto short_it = result.per_pulse.find(EventKind::transmit_short);
    const auto medium_it = result.per_pulse.find(EventKind::transmit_medium);
    const RangeProfile& fallback =
        medium_it != result.per_pulse.end() ? medium_it->second : result.per_pulse.begin()->second;
    result.stitched.range_step_m = range_step;
    result.stitched.power_db.resize(fallback.power_db.size());
    result.stitched_source.resize(fallback.power_db.size());
    for (std::size_t g = 0; g < result.stitched.power_db.size(); ++g) {
        const double r = static_cast<double>(g) * range_step;
        const bool use_short =
            short_it != result.per_pulse.end() &&
            (r < result.stitch_boundary_m || medium_it == result.per_pulse.end());
        const auto& src = use_short ? short_it->second : fallback;
        result.stitched.power_db[g] = src.power_db[g];
        result.stitched_source[g] =
            use_short ? EventKind::transmit_short
                      : (medium_it != result.per_pulse.end() ? EventKind::transmit_medium
                                                             : result.per_pulse.begin()->first);
    }

    result.detections = detect_peaks(result.stitched, scenario.detection_threshold_db);
    return result;
}

std::vector<Detection> detect_peaks(const RangeProfile& profile, double threshold_db_above_floor)
{
    if (profile.power_db.empty()) throw EmptySignal("detect_peaks requires a profile");
    if (!(threshold_db_above_floor > 0.0)) {
        throw InvariantError("detection threshold must be positive");
    }

    std::vector<double> finite;
    finite.reserve(profile.power_db.size());
    for (const double v : profile.power_db) {
        if (std::isfinite(v)) finite.push_back(v);
    }
    if (finite.empty()) return {};
    const auto mid = finite.begin() + static_cast<std::ptrdiff_t>(finite.size() / 2);
    std::nth_element(finite.begin(), mid, finite.end());
    const double floor = *mid;
    const double cut = floor + threshold_db_above_floor;

    const auto& p = profile.power_db;
    std::vector<std::size_t> maxima;
    for (std::size_t g = 1; g + 1 < p.size(); ++g) {
        if (p[g - 1] < p[g] && p[g] >= p[g + 1] && p[g] >= cut) {
            maxima.push_back(g);
        }
    }

    // A maximum within two gates of a stronger one belongs to the same peak.
    std::vector<Detection> out;
    std::size_t best_gate = 0;
    bool open = false;
    auto flush = [&]() {
        if (open) {
            out.push_back({profile.range_of(best_gate), p[best_gate]});
            open = false;
        }
    };
    std::size_t last_gate = 0;
    for (const std::size_t g : maxima) {
        if (open && g - last_gate <= 2) {
            if (p[g] > p[best_gate]) best_gate = g;
        } else {
            flush();
            best_gate = g;
            open = true;
        }
        last_gate = g;
    }
    flush();
    return out;
}

} // namespace radsim
