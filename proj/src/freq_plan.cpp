// SPDX-License-Identifier: Apache-2.0

#include "radsim/freq_plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radsim/errors.hpp"

namespace radsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFreqTolHz = 1.0;
} // namespace

MixerSpec MixerSpec::representative()
{
    MixerSpec m;
    m.conversion_loss_db = 6.0;
    m.lo_to_if_isolation_db = 30.0;
    m.lo_drive_dbm = 17.0;
    m.max_order = 5;
    m.spur_table[{1, 1}] = 0.0;
    for (int a = 0; a <= 3; ++a) {
        for (int b = 0; b <= 3 - a; ++b) {
            if ((a == 0 && b == 0) || (a == 1 && b == 1)) continue;
            if (a + b >= 2) m.spur_table[{a, b}] = 60.0;
        }
    }
    m.default_suppression_dbc = 80.0;
    return m;
}

void MixerSpec::validate() const
{
    if (!(conversion_loss_db > 0.0) || !(lo_to_if_isolation_db > 0.0)) {
        throw InvariantError("mixer conversion loss and LO-IF isolation must be positive");
    }
    if (max_order < 1) throw InvariantError("mixer max_order must be >= 1");
    auto it = spur_table.find({1, 1});
    if (it == spur_table.end() || it->second != 0.0) {
        throw InvariantError("spur table must map (1,1) to 0 dBc; it is the level reference");
    }
    for (const auto& [mn, dbc] : spur_table) {
        if (mn.first < 0 || mn.second < 0 || (mn.first == 0 && mn.second == 0)) {
            throw InvariantError("spur table orders must be nonnegative and not (0,0)");
        }
        if (dbc < 0.0) throw InvariantError("spur suppressions must be >= 0 dBc");
    }
    if (default_suppression_dbc && *default_suppression_dbc < 0.0) {
        throw InvariantError("default spur suppression must be >= 0 dBc");
    }
}

void FrequencyPlan::validate() const
{
    if (!(rf_hz > 0.0) || !(lo_hz > 0.0) || !(if_center_hz > 0.0) ||
        !(analog_bandwidth_hz > 0.0)) {
        throw InvariantError("plan frequencies and bandwidth must be positive");
    }
    const double expect = sideband == Sideband::difference ? std::abs(rf_hz - lo_hz)
                                                           : rf_hz + lo_hz;
    if (std::abs(expect - if_center_hz) > kFreqTolHz) {
        throw InvariantError("if_center_hz does not match the rf/lo pair for the "
                             "selected sideband (1 Hz tolerance)");
    }
}

double FilterMask::attenuation_db(double frequency_hz) const
{
    if (breakpoints.empty()) return 0.0;
    if (frequency_hz <= breakpoints.front().first) return breakpoints.front().second;
    if (frequency_hz >= breakpoints.back().first) return breakpoints.back().second;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (frequency_hz <= breakpoints[i].first) {
            const auto& [f0, a0] = breakpoints[i - 1];
            const auto& [f1, a1] = breakpoints[i];
            const double t = (frequency_hz - f0) / (f1 - f0);
            return a0 + t * (a1 - a0);
        }
    }
    return breakpoints.back().second;
}

void FilterMask::validate() const
{
    if (breakpoints.empty()) throw InvariantError("filter mask needs at least one breakpoint");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i].second < 0.0) {
            throw InvariantError("mask attenuations must be >= 0 dB");
        }
        if (i > 0 && !(breakpoints[i].first > breakpoints[i - 1].first)) {
            throw InvariantError("mask breakpoint frequencies must be strictly increasing");
        }
    }
}

namespace {

double suppression_for(const MixerSpec& mixer, int m, int n)
{
    auto it = mixer.spur_table.find({m, n});
    if (it != mixer.spur_table.end()) return it->second;
    if (mixer.default_suppression_dbc) return *mixer.default_suppression_dbc;
    throw MissingSpurEntry("no spur-table entry or default for order (" + std::to_string(m) +
                           "," + std::to_string(n) + ")");
}

bool is_desired(const SpurProduct& s, const FrequencyPlan& plan)
{
    return s.m == 1 && s.n == 1 &&
           s.sign == (plan.sideband == Sideband::difference ? '-' : '+');
}

} // namespace

std::vector<SpurProduct> enumerate_spurs(const FrequencyPlan& plan, const MixerSpec& mixer,
                                         double rf_input_dbm)
{
    plan.validate();
    mixer.validate();
    const double desired_dbm = rf_input_dbm - mixer.conversion_loss_db;
    const double half_bw = plan.analog_bandwidth_hz / 2.0;

    std::vector<SpurProduct> out;
    for (int m = 0; m <= mixer.max_order; ++m) {
        for (int n = 0; n + m <= mixer.max_order; ++n) {
            if (m == 0 && n == 0) continue;
            double level;
            if (m == 0 && n == 1) {
                level = mixer.lo_drive_dbm - mixer.lo_to_if_isolation_db; // LO feedthrough
            } else {
                level = desired_dbm - suppression_for(mixer, m, n);
            }
            const bool two_signs = m > 0 && n > 0;
            for (const char sign : {'+', '-'}) {
                if (sign == '-' && !two_signs) continue;
                SpurProduct s;
                s.m = m;
                s.n = n;
                s.sign = sign;
                const double f = sign == '+' ? m * plan.rf_hz + n * plan.lo_hz
                                             : std::abs(m * plan.rf_hz - n * plan.lo_hz);
                s.frequency_hz = f;
                s.level_dbm = level;
                s.in_band = std::abs(f - plan.if_center_hz) <= half_bw + kFreqTolHz;
                out.push_back(s);
            }
        }
    }
    return out;
}

std::vector<SpurProduct> apply_filter_mask(std::vector<SpurProduct> spurs,
                                           const FilterMask& mask)
{
    mask.validate();
    for (auto& s : spurs) {
        s.post_filter_level_dbm = s.level_dbm - mask.attenuation_db(s.frequency_hz);
    }
    return spurs;
}

PlanReport evaluate_plan(const FrequencyPlan& plan, const MixerSpec& mixer,
                         const FilterMask& mask, double rf_input_dbm,
                         double spur_threshold_dbm)
{
    const auto spurs = apply_filter_mask(enumerate_spurs(plan, mixer, rf_input_dbm), mask);

    PlanReport report;
    report.worst_in_band_level_dbm = -kInf;
    report.lo_feedthrough_level_dbm = mixer.lo_drive_dbm - mixer.lo_to_if_isolation_db;
    report.lo_feedthrough_post_filter_dbm =
        report.lo_feedthrough_level_dbm - mask.attenuation_db(plan.lo_hz);
    report.lo_feedthrough_margin_db =
        spur_threshold_dbm - report.lo_feedthrough_post_filter_dbm;

    for (const auto& s : spurs) {
        if (!s.in_band || is_desired(s, plan)) continue;
        const double lvl = *s.post_filter_level_dbm;
        if (lvl > report.worst_in_band_level_dbm) {
            report.worst_in_band_level_dbm = lvl;
            report.worst_spur = s;
        }
    }
    report.margin_db = spur_threshold_dbm - report.worst_in_band_level_dbm; // +inf if none
    report.pass = report.worst_in_band_level_dbm <= spur_threshold_dbm;
    return report;
}

BandwidthSweepResult sweep_analog_bandwidth(const FrequencyPlan& plan_template,
                                            const MixerSpec& mixer, const FilterMask& mask,
                                            double rf_input_dbm, double spur_threshold_dbm,
                                            const std::vector<double>& candidates_hz)
{
    if (candidates_hz.empty()) throw EmptyCandidates("bandwidth sweep needs candidates");
    for (std::size_t i = 0; i < candidates_hz.size(); ++i) {
        if (!(candidates_hz[i] > 0.0) ||
            (i > 0 && !(candidates_hz[i] > candidates_hz[i - 1]))) {
            throw InvariantError("bandwidth candidates must be positive and strictly increasing");
        }
    }
    BandwidthSweepResult result;
    for (const double bw : candidates_hz) {
        FrequencyPlan p = plan_template;
        p.analog_bandwidth_hz = bw;
        PlanReport r = evaluate_plan(p, mixer, mask, rf_input_dbm, spur_threshold_dbm);
        if (r.pass) result.widest_passing_bandwidth_hz = bw;
        result.entries.emplace_back(bw, std::move(r));
    }
    return result;
}

} // namespace radsim
