// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "radsim/errors.hpp"
#include "radsim/timing.hpp"

using namespace radsim;

namespace {

PulseEvent event(EventKind kind, double start, double dur, std::string wf = "",
                 std::string flt = "", double level = 0.0)
{
    PulseEvent e;
    e.kind = kind;
    e.start_s = start;
    e.duration_s = dur;
    e.waveform_id = std::move(wf);
    e.filter_id = std::move(flt);
    e.level_dbm = level;
    return e;
}

std::vector<PulseEvent> default_events()
{
    return {
        event(EventKind::transmit_medium, 0.0, 20e-6, "medium", "mm"),
        event(EventKind::transmit_short, 20e-6, 1e-6, "short", "delay"),
        event(EventKind::noise_injection, 100e-6, 10e-6),
        event(EventKind::cal_short, 120e-6, 1e-6, "short", "delay", -40.0),
        event(EventKind::cal_medium, 140e-6, 20e-6, "medium", "mm", -35.0),
    };
}

struct MaskingFixture {
    std::map<std::string, IQSignal> waveforms;
    std::map<std::string, FilterTaps> filters;
    TimingSchedule schedule;
    double fs = 1.0e7;

    MaskingFixture()
    {
        ChirpSpec spec;
        spec.bandwidth_hz = 5.0e6;
        spec.duration_s = 20.0e-6;
        waveforms["medium"] = generate_lfm_chirp(spec, fs);
        waveforms["short"] = generate_cw_pulse(1.0e-6, 0.0, 1.0, fs);
        filters["mm"] = design_mismatched_filter(waveforms["medium"], 480, 2);
        filters["delay"] = delay_filter(0);
        schedule = build_schedule(1.0e-3, default_events(), 30000.0);
    }
};

} // namespace

TEST_CASE("blind range arithmetic")
{
    CHECK(blind_range_m(0.0) == 0.0);
    CHECK(blind_range_m(20.0e-6) == doctest::Approx(2997.92).epsilon(1e-5));
    CHECK(blind_range_m(1.0e-6) == doctest::Approx(149.90).epsilon(1e-4));
}

TEST_CASE("blind range is linear in the pulse duration")
{
    std::mt19937_64 rng(501);
    std::uniform_real_distribution<double> tau(1e-7, 1e-4);
    for (int i = 0; i < 50; ++i) {
        const double t1 = tau(rng);
        const double t2 = tau(rng);
        CHECK(blind_range_m(t1 + t2) ==
              doctest::Approx(blind_range_m(t1) + blind_range_m(t2)).epsilon(1e-12));
        CHECK(blind_range_m(3.0 * t1) == doctest::Approx(3.0 * blind_range_m(t1)).epsilon(1e-12));
    }
}

TEST_CASE("empty schedule keeps the full PRT as receive window")
{
    const TimingSchedule s = build_schedule(1.0e-3, {}, 1000.0);
    CHECK(s.receive_window_start_s == 0.0);
    CHECK(s.receive_window_end_s == doctest::Approx(1.0e-3));
}

TEST_CASE("overlapping transmits are rejected")
{
    std::vector<PulseEvent> events = {
        event(EventKind::transmit_medium, 0.0, 20e-6, "m", "f"),
        event(EventKind::transmit_short, 20e-6 - 1e-9, 1e-6, "s", "f"),
    };
    CHECK_THROWS_AS(build_schedule(1.0e-3, events, 1000.0), OverlapError);
}

TEST_CASE("default schedule validates with the expected receive window")
{
    const TimingSchedule s = build_schedule(1.0e-3, default_events(), 30000.0);
    CHECK(s.receive_window_start_s == doctest::Approx(22.0e-6)); // 21 us + 1 us guard
    CHECK(s.receive_window_end_s == doctest::Approx(1.0e-3));
    CHECK(s.first_event(EventKind::cal_medium).has_value());
}

TEST_CASE("schedule acceptance is order independent")
{
    std::mt19937_64 rng(503);
    auto events = default_events();
    for (int i = 0; i < 10; ++i) {
        std::shuffle(events.begin(), events.end(), rng);
        CHECK_NOTHROW(build_schedule(1.0e-3, events, 30000.0));
    }
    // and an invalid set stays invalid under permutation
    auto bad = default_events();
    bad.push_back(event(EventKind::cal_short, 120.5e-6, 1e-6, "s", "f")); // overlaps cal_short
    for (int i = 0; i < 10; ++i) {
        std::shuffle(bad.begin(), bad.end(), rng);
        CHECK_THROWS_AS(build_schedule(1.0e-3, bad, 30000.0), OverlapError);
    }
}

TEST_CASE("injections must sit inside the receive window")
{
    auto events = default_events();
    events.push_back(event(EventKind::cal_short, 21.1e-6, 0.5e-6, "s", "f"));
    CHECK_THROWS_AS(build_schedule(1.0e-3, events, 30000.0), WindowError);

    auto past_end = default_events();
    past_end.push_back(event(EventKind::noise_injection, 0.9999e-3, 1e-6));
    CHECK_THROWS_AS(build_schedule(1.0e-3, past_end, 30000.0), WindowError);
}

TEST_CASE("max range must fit the receive window")
{
    CHECK_THROWS_AS(build_schedule(1.0e-3, default_events(), 1.6e5), RangeError);
    CHECK_NOTHROW(build_schedule(1.0e-3, default_events(), 1.4e5));
}

TEST_CASE("coverage check")
{
    const TimingSchedule s = build_schedule(1.0e-3, default_events(), 30000.0);

    const CoverageReport equal = coverage_check(s, 20e-6, 20e-6);
    CHECK(equal.pass);
    CHECK(equal.has_covered_gap);
    CHECK(equal.covered_hi_m - equal.covered_lo_m == doctest::Approx(0.0));

    const CoverageReport normal = coverage_check(s, 1e-6, 20e-6);
    CHECK(normal.pass);
    CHECK(normal.boundary_m == doctest::Approx(2997.92).epsilon(1e-5));
    CHECK(normal.covered_lo_m == doctest::Approx(149.90).epsilon(1e-4));
    CHECK(normal.covered_hi_m == doctest::Approx(2997.92).epsilon(1e-5));

    std::vector<PulseEvent> no_short;
    for (const auto& e : default_events()) {
        if (e.kind != EventKind::transmit_short) no_short.push_back(e);
    }
    const CoverageReport gap = coverage_check(build_schedule(1.0e-3, no_short, 30000.0),
                                              1e-6, 20e-6);
    CHECK_FALSE(gap.pass);
    CHECK(gap.has_uncovered);
    CHECK(gap.uncovered_lo_m == 0.0);
    CHECK(gap.uncovered_hi_m == doctest::Approx(2997.92).epsilon(1e-5));
}

TEST_CASE("cal-window masking limits")
{
    MaskingFixture fx;
    const std::vector<double> offsets = {-2000.0, -500.0, -100.0, 100.0, 500.0, 2000.0,
                                         15000.0};

    // injection off: the noise floor limits everywhere
    const MaskingReport off = simulate_cal_window(fx.schedule, fx.waveforms, fx.filters,
                                                  -std::numeric_limits<double>::infinity(),
                                                  1e-9, offsets, fx.fs);
    for (const auto& row : off.rows) {
        CHECK(row.limit == DetectionLimit::noise);
        CHECK(row.min_detectable_dbm == doctest::Approx(off.noise_limited_dbm));
    }

    const MaskingReport a = simulate_cal_window(fx.schedule, fx.waveforms, fx.filters, -35.0,
                                                1e-9, offsets, fx.fs);
    const MaskingReport b = simulate_cal_window(fx.schedule, fx.waveforms, fx.filters, -25.0,
                                                1e-9, offsets, fx.fs);
    REQUIRE(a.rows.size() == b.rows.size());
    bool saw_sidelobe = false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        // monotone in injection power everywhere
        CHECK(b.rows[i].min_detectable_dbm >= a.rows[i].min_detectable_dbm - 1e-12);
        if (a.rows[i].limit == DetectionLimit::sidelobe &&
            b.rows[i].limit == DetectionLimit::sidelobe) {
            saw_sidelobe = true;
            // +10 dB injection lifts sidelobe-limited offsets by exactly +10 dB
            CHECK(b.rows[i].min_detectable_dbm - a.rows[i].min_detectable_dbm ==
                  doctest::Approx(10.0).epsilon(1e-9));
        }
    }
    CHECK(saw_sidelobe);
    // far beyond the compressed support: noise limited regardless of power
    CHECK(a.rows.back().limit == DetectionLimit::noise);
    CHECK(b.rows.back().limit == DetectionLimit::noise);
}

TEST_CASE("sidelobe-limited extent equals the compressed support exactly")
{
    MaskingFixture fx;
    const double gate_m = kSpeedOfLight / (2.0 * fx.fs);
    const std::size_t n = fx.waveforms["medium"].size();
    const std::size_t l = fx.filters["mm"].taps.size();
    const std::size_t support = n + l - 1;
    const std::size_t k0 = response_peak_lag(fx.waveforms["medium"], fx.filters["mm"]);

    // probe one gate inside each support edge and one gate outside
    const double last_in = static_cast<double>(support - 1 - k0) * gate_m;
    const double first_out = static_cast<double>(support - k0) * gate_m;
    const double first_in = -static_cast<double>(k0) * gate_m;
    const double before_in = -static_cast<double>(k0 + 1) * gate_m;

    // zero noise makes any nonzero compressed sample sidelobe-limited
    const MaskingReport r = simulate_cal_window(fx.schedule, fx.waveforms, fx.filters, -30.0,
                                                0.0, {before_in, first_in, last_in, first_out},
                                                fx.fs);
    REQUIRE(r.support_gates == support);
    CHECK(r.rows[0].limit == DetectionLimit::noise);
    CHECK(r.rows[1].limit == DetectionLimit::sidelobe);
    CHECK(r.rows[2].limit == DetectionLimit::sidelobe);
    CHECK(r.rows[3].limit == DetectionLimit::noise);
}

TEST_CASE("masking prerequisites")
{
    MaskingFixture fx;
    std::vector<PulseEvent> no_cal;
    for (const auto& e : default_events()) {
        if (e.kind != EventKind::cal_medium) no_cal.push_back(e);
    }
    const TimingSchedule s = build_schedule(1.0e-3, no_cal, 30000.0);
    CHECK_THROWS_AS(simulate_cal_window(s, fx.waveforms, fx.filters, -30.0, 1e-9, {0.0}, fx.fs),
                    MissingCalEvent);

    std::map<std::string, FilterTaps> empty;
    CHECK_THROWS_AS(simulate_cal_window(fx.schedule, fx.waveforms, empty, -30.0, 1e-9, {0.0},
                                        fx.fs),
                    UnregisteredAsset);
}
