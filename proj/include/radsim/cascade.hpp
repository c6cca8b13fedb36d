// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace radsim {

/// One analog stage. gain_db is negative for attenuators and filters;
/// oip3_dbm may be +inf for passives that contribute no third-order
/// distortion.
struct CascadeStage {
    std::string name;
    double gain_db = 0.0;
    double nf_db = 0.0;
    double oip3_dbm = std::numeric_limits<double>::infinity();
    std::optional<double> p1db_out_dbm;
    std::optional<double> power_consumption_w;
};

struct CascadeReport {
    double total_gain_db = 0.0;
    double total_nf_db = 0.0;
    double total_iip3_dbm = 0.0;  // +inf when every stage is distortion-free
    double total_oip3_dbm = 0.0;  // identity: iip3 + gain
    double mds_dbm = 0.0;         // -174 + NF + 10 log10(B)
    double sfdr_db = 0.0;
    std::vector<double> stage_levels_dbm;   // running output level per stage
    std::vector<bool> compression_flags;    // within 1 dB of stage P1dB
    std::vector<std::string> warnings;      // e.g. passive stage with NF < loss
};

struct AdcSpec {
    int bits = 16;
    double sample_rate_hz = 2.0e8;
    double full_scale_vpp = 2.0;
    double input_impedance_ohm = 50.0;
};

struct AdcFloor {
    double snr_db = 0.0;               // 6.02*bits + 1.76, full-scale sine
    double noise_floor_dbfs_hz = 0.0;  // quantization floor spread over fs/2
    double lsb_volts = 0.0;
};

/// Friis noise figure and reciprocal IIP3 cascade in linear units, plus the
/// running level ladder and per-stage compression flags for `input_dbm`.
CascadeReport analyze_cascade(const std::vector<CascadeStage>& stages, double input_dbm,
                              double noise_bandwidth_hz);

AdcFloor adc_floor(const AdcSpec& adc);

/// Two-tone SFDR against the 290 K thermal floor: (2/3)(IIP3 - MDS).
/// Returns +inf when the report's IIP3 is infinite.
double sfdr(const CascadeReport& report, double noise_bandwidth_hz);

// Gain delta that makes the cascade's thermal-noise RMS voltage at the ADC
// input equal alpha LSBs; negative when the chain is already over-gained.
double lsb_gain_tuning(const std::vector<CascadeStage>& stages, const AdcSpec& adc,
                       double noise_bandwidth_hz, double alpha = 1.0);

/// Via temperature rise: power * theta / via_count.
double thermal_rise(double power_w, double theta_c_per_w, int via_count);

} // namespace radsim
