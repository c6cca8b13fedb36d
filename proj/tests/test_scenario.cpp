// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "radsim/errors.hpp"
#include "radsim/scenario.hpp"
#include "test_helpers.hpp"

using namespace radsim;

namespace {

struct World {
    double fs = 1.0e7;
    std::map<std::string, IQSignal> waveforms;
    std::map<std::string, FilterTaps> filters;
    TimingSchedule schedule;        // medium + short
    TimingSchedule medium_only;     // one pulse kind, uniform noise floor

    explicit World(double max_range = 30000.0)
    {
        ChirpSpec spec;
        spec.bandwidth_hz = 5.0e6;
        spec.duration_s = 20.0e-6;
        waveforms["medium"] = generate_lfm_chirp(spec, fs);
        waveforms["short"] = generate_cw_pulse(1.0e-6, 0.0, 1.0, fs);
        filters["mm"] = design_mismatched_filter(waveforms["medium"], 480, 2);
        filters["delay"] = delay_filter(0);

        PulseEvent med;
        med.kind = EventKind::transmit_medium;
        med.start_s = 0.0;
        med.duration_s = 20e-6;
        med.waveform_id = "medium";
        med.filter_id = "mm";
        PulseEvent sht;
        sht.kind = EventKind::transmit_short;
        sht.start_s = 20e-6;
        sht.duration_s = 1e-6;
        sht.waveform_id = "short";
        sht.filter_id = "delay";
        schedule = build_schedule(1.0e-3, {med, sht}, max_range);
        medium_only = build_schedule(1.0e-3, {med}, max_range);
    }

    Scenario scenario() const
    {
        Scenario s;
        s.sample_rate_hz = fs;
        s.schedule_ref = "schedule";
        s.detection_threshold_db = 12.0;
        return s;
    }
};

} // namespace

TEST_CASE("no targets and no noise gives a silent profile")
{
    World w;
    Scenario s = w.scenario();
    const SimulationResult r = run_scenario(s, w.schedule, w.waveforms, w.filters);
    CHECK(r.detections.empty());
    for (const double v : r.stitched.power_db) {
        CHECK(v == -std::numeric_limits<double>::infinity());
    }
}

TEST_CASE("single target lands within one gate of its true range")
{
    World w;
    Scenario s = w.scenario();
    s.targets.push_back({10000.0, -40.0, 0.0});
    s.noise_power = 1e-7; // 40 dB echo-to-floor after compression
    s.seed = 7;
    s.detection_threshold_db = 15.0;
    const SimulationResult r = run_scenario(s, w.medium_only, w.waveforms, w.filters);
    REQUIRE(r.detections.size() == 1);
    CHECK(std::abs(r.detections[0].range_m - 10000.0) <= r.stitched.range_step_m);
    // the unit-response design puts the peak at the echo's input power
    CHECK(r.detections[0].power_dbm == doctest::Approx(-40.0).epsilon(0.001));
}

TEST_CASE("noiseless profiles superpose in power for separated targets")
{
    World w;
    Scenario both = w.scenario();
    both.targets.push_back({8000.0, -40.0, 0.0});
    both.targets.push_back({20000.0, -46.0, 0.0});

    Scenario only_a = w.scenario();
    only_a.targets.push_back({8000.0, -40.0, 0.0});
    Scenario only_b = w.scenario();
    only_b.targets.push_back({20000.0, -46.0, 0.0});

    const auto rb = run_scenario(both, w.schedule, w.waveforms, w.filters);
    const auto ra = run_scenario(only_a, w.schedule, w.waveforms, w.filters);
    const auto rc = run_scenario(only_b, w.schedule, w.waveforms, w.filters);

    const auto& pb = rb.per_pulse.at(EventKind::transmit_medium).power_db;
    const auto& pa = ra.per_pulse.at(EventKind::transmit_medium).power_db;
    const auto& pc = rc.per_pulse.at(EventKind::transmit_medium).power_db;
    double max_rel = 0.0;
    double peak = 0.0;
    for (std::size_t g = 0; g < pb.size(); ++g) {
        const double want = (std::isfinite(pa[g]) ? std::pow(10.0, pa[g] / 10.0) : 0.0) +
                            (std::isfinite(pc[g]) ? std::pow(10.0, pc[g] / 10.0) : 0.0);
        const double got = std::isfinite(pb[g]) ? std::pow(10.0, pb[g] / 10.0) : 0.0;
        max_rel = std::max(max_rel, std::abs(got - want));
        peak = std::max(peak, want);
    }
    CHECK(max_rel / peak <= 1e-9);
}

TEST_CASE("stitching uses the short pulse below the medium blind range")
{
    World w;
    Scenario s = w.scenario();
    s.targets.push_back({1000.0, -30.0, 0.0});  // below the 2997.9 m boundary
    s.targets.push_back({10000.0, -40.0, 0.0});
    const SimulationResult r = run_scenario(s, w.schedule, w.waveforms, w.filters);

    CHECK(r.stitch_boundary_m == doctest::Approx(blind_range_m(20e-6)));
    REQUIRE(r.per_pulse.count(EventKind::transmit_short) == 1);
    REQUIRE(r.per_pulse.count(EventKind::transmit_medium) == 1);

    // every gate is sourced per the blind-range rule, values copied verbatim
    for (std::size_t g = 0; g < r.stitched.power_db.size(); ++g) {
        const EventKind want = static_cast<double>(g) * r.stitched.range_step_m <
                                       r.stitch_boundary_m
                                   ? EventKind::transmit_short
                                   : EventKind::transmit_medium;
        CHECK(r.stitched_source[g] == want);
        CHECK(r.stitched.power_db[g] == r.per_pulse.at(want).power_db[g]);
    }

    // the short-pulse section carries the near target's return
    const auto near_gate = static_cast<std::size_t>(std::round(1000.0 / r.stitched.range_step_m));
    CHECK(std::isfinite(r.stitched.power_db[near_gate]));
    CHECK(r.stitched.power_db[near_gate] == doctest::Approx(-30.0).epsilon(0.001));

    // the medium channel alone sees only the blanked echo's smeared tail,
    // several dB below the true return the short pulse recovers
    const auto& med = r.per_pulse.at(EventKind::transmit_medium).power_db;
    CHECK(med[near_gate] < -38.0);
}

TEST_CASE("simulation is deterministic for a fixed seed")
{
    World w;
    Scenario s = w.scenario();
    s.targets.push_back({5000.0, -35.0, 0.0});
    s.noise_power = 1e-6;
    s.seed = 20260809;
    const auto a = run_scenario(s, w.schedule, w.waveforms, w.filters);
    const auto b = run_scenario(s, w.schedule, w.waveforms, w.filters);
    REQUIRE(a.stitched.power_db.size() == b.stitched.power_db.size());
    CHECK(std::memcmp(a.stitched.power_db.data(), b.stitched.power_db.data(),
                      a.stitched.power_db.size() * sizeof(double)) == 0);
    REQUIRE(a.detections.size() == b.detections.size());
    for (std::size_t i = 0; i < a.detections.size(); ++i) {
        CHECK(a.detections[i].range_m == b.detections[i].range_m);
        CHECK(a.detections[i].power_dbm == b.detections[i].power_dbm);
    }
}

TEST_CASE("a moving target is still detected")
{
    World w;
    Scenario s = w.scenario();
    s.targets.push_back({10000.0, -40.0, 500.0}); // 500 Hz Doppler
    s.noise_power = 1e-7;
    s.seed = 11;
    s.detection_threshold_db = 15.0;
    const SimulationResult r = run_scenario(s, w.medium_only, w.waveforms, w.filters);
    REQUIRE(r.detections.size() == 1);
    CHECK(std::abs(r.detections[0].range_m - 10000.0) <= 2.0 * r.stitched.range_step_m);
}

TEST_CASE("scenario asset errors")
{
    World w;
    Scenario s = w.scenario();
    s.targets.push_back({10000.0, -40.0, 0.0});

    std::map<std::string, FilterTaps> no_filters;
    CHECK_THROWS_AS(run_scenario(s, w.schedule, w.waveforms, no_filters), UnregisteredAsset);

    std::map<std::string, IQSignal> wrong_rate = w.waveforms;
    for (auto& [id, sig] : wrong_rate) sig.sample_rate_hz *= 2.0;
    CHECK_THROWS_AS(run_scenario(s, w.schedule, wrong_rate, w.filters), InconsistentRates);

    Scenario far = w.scenario();
    far.targets.push_back({50000.0, -40.0, 0.0});
    CHECK_THROWS_AS(run_scenario(far, w.schedule, w.waveforms, w.filters), InvariantError);
}

TEST_CASE("detect_peaks floor, threshold and merge rules")
{
    RangeProfile p;
    p.range_step_m = 10.0;

    p.power_db.assign(100, -80.0);
    CHECK(detect_peaks(p, 10.0).empty()); // flat profile

    p.power_db[40] = -60.0; // single peak 20 dB above the floor
    const auto one = detect_peaks(p, 10.0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].range_m == doctest::Approx(400.0));
    CHECK(one[0].power_dbm == doctest::Approx(-60.0));

    // two maxima separated by one gate merge to the larger
    p.power_db.assign(100, -80.0);
    p.power_db[50] = -60.0;
    p.power_db[51] = -65.0;
    p.power_db[52] = -59.0;
    const auto merged = detect_peaks(p, 10.0);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].range_m == doctest::Approx(520.0));

    // well-separated peaks stay distinct
    p.power_db.assign(100, -80.0);
    p.power_db[20] = -60.0;
    p.power_db[60] = -58.0;
    CHECK(detect_peaks(p, 10.0).size() == 2);

    // below the threshold: ignored
    p.power_db.assign(100, -80.0);
    p.power_db[10] = -72.0;
    CHECK(detect_peaks(p, 10.0).empty());
}
