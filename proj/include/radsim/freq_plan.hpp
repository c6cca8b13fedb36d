// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radsim {

/// Behavioral mixer description. Spur suppressions are dBc below the
/// desired (1,1) product, which is pinned to 0 dBc. Orders without a table
/// entry fall back to default_suppression_dbc when set.
struct MixerSpec {
    double conversion_loss_db = 6.0;
    double lo_to_if_isolation_db = 30.0;
    double lo_drive_dbm = 17.0;
    std::map<std::pair<int, int>, double> spur_table;
    std::optional<double> default_suppression_dbc;
    int max_order = 5;

    /// Representative double-balanced mixer: 6 dB conversion loss, 30 dB
    /// LO-IF isolation, +17 dBm LO drive, 60 dBc second and third order
    /// products, 80 dBc beyond.
    static MixerSpec representative();

    void validate() const;
};

enum class Sideband { difference, sum };

struct FrequencyPlan {
    double rf_hz = 0.0;
    double lo_hz = 0.0;
    double if_center_hz = 0.0;
    double analog_bandwidth_hz = 0.0;
    Sideband sideband = Sideband::difference;

    /// Checks the rf/lo/if relation for the selected sideband within 1 Hz.
    void validate() const;
};

struct SpurProduct {
    int m = 0;
    int n = 0;
    char sign = '+'; // frequency = m*rf + n*lo for '+', |m*rf - n*lo| for '-'
    double frequency_hz = 0.0;
    double level_dbm = 0.0;
    bool in_band = false;
    std::optional<double> post_filter_level_dbm;
};

/// Piecewise-linear attenuation mask in (frequency, dB); flat beyond the
/// end breakpoints.
struct FilterMask {
    std::vector<std::pair<double, double>> breakpoints;

    double attenuation_db(double frequency_hz) const;
    void validate() const;
};

struct PlanReport {
    bool pass = false;
    double worst_in_band_level_dbm = 0.0; // -inf when no in-band offender
    double margin_db = 0.0;               // threshold minus worst level; +inf sentinel
    std::optional<SpurProduct> worst_spur;
    double lo_feedthrough_level_dbm = 0.0;      // before the mask
    double lo_feedthrough_post_filter_dbm = 0.0;
    double lo_feedthrough_margin_db = 0.0;
};

struct BandwidthSweepResult {
    std::vector<std::pair<double, PlanReport>> entries;
    std::optional<double> widest_passing_bandwidth_hz;
};

// One product per (m, n, sign) with m + n <= max_order and (m, n) != (0, 0);
// sum and difference entries are distinct only when both m and n are
// nonzero. The desired product sits at rf_input_dbm - conversion_loss_db;
// other orders subtract their suppression from that. LO feedthrough (0,1)
// is lo_drive_dbm - lo_to_if_isolation_db, overriding the table. A product
// is in band when its frequency is within analog_bandwidth/2 of the IF
// center, with 1 Hz of tolerance on the comparison.
std::vector<SpurProduct> enumerate_spurs(const FrequencyPlan& plan, const MixerSpec& mixer,
                                         double rf_input_dbm);

std::vector<SpurProduct> apply_filter_mask(std::vector<SpurProduct> spurs,
                                           const FilterMask& mask);

/// Pass iff every in-band non-desired post-filter level stays at or below
/// the threshold.
PlanReport evaluate_plan(const FrequencyPlan& plan, const MixerSpec& mixer,
                         const FilterMask& mask, double rf_input_dbm,
                         double spur_threshold_dbm);

BandwidthSweepResult sweep_analog_bandwidth(const FrequencyPlan& plan_template,
                                            const MixerSpec& mixer, const FilterMask& mask,
                                            double rf_input_dbm, double spur_threshold_dbm,
                                            const std::vector<double>& candidates_hz);

} // namespace radsim
