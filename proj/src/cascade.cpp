// SPDX-License-Identifier: Apache-2.0

#include "radsim/cascade.hpp"

#include <cmath>

#include "radsim/errors.hpp"

namespace radsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kThermalDbmHz = -174.0; // 290 K reference

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace

CascadeReport analyze_cascade(const std::vector<CascadeStage>& stages, double input_dbm,
                              double noise_bandwidth_hz)
{
    if (stages.empty()) throw EmptyCascade("cascade needs at least one stage");
    if (!(noise_bandwidth_hz > 0.0)) {
        throw InvariantError("noise bandwidth must be positive");
    }

    CascadeReport report;
    double gain_before_lin = 1.0; // product of gains preceding the current stage
    double friis_lin = 0.0;
    double inv_iip3_lin = 0.0;    // 1/mW
    double level_dbm = input_dbm;

    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto& st = stages[i];
        if (st.nf_db < 0.0) throw InvariantError("stage '" + st.name + "' has negative NF");
        if (st.gain_db <= 0.0 && st.nf_db + 1e-9 < -st.gain_db) {
            report.warnings.push_back("stage '" + st.name +
                                      "': passive stage NF below its loss");
        }

        const double f = db_to_lin(st.nf_db);
        friis_lin += i == 0 ? f : (f - 1.0) / gain_before_lin;

        if (std::isfinite(st.oip3_dbm)) {
            const double iip3_stage_mw = db_to_lin(st.oip3_dbm - st.gain_db);
            inv_iip3_lin += gain_before_lin / iip3_stage_mw;
        }

        gain_before_lin *= db_to_lin(st.gain_db);
        level_dbm += st.gain_db;
        report.stage_levels_dbm.push_back(level_dbm);
        report.compression_flags.push_back(st.p1db_out_dbm &&
                                           level_dbm > *st.p1db_out_dbm - 1.0);
        report.total_gain_db += st.gain_db;
    }

    report.total_nf_db = lin_to_db(friis_lin);
    report.total_iip3_dbm = inv_iip3_lin > 0.0 ? lin_to_db(1.0 / inv_iip3_lin) : kInf;
    report.total_oip3_dbm = report.total_iip3_dbm + report.total_gain_db;
    report.mds_dbm = kThermalDbmHz + report.total_nf_db + 10.0 * std::log10(noise_bandwidth_hz);
    report.sfdr_db = sfdr(report, noise_bandwidth_hz);
    return report;
}

AdcFloor adc_floor(const AdcSpec& adc)
{
    if (adc.bits < 1) throw InvariantError("ADC needs at least one bit");
    AdcFloor out;
    out.snr_db = 6.02 * adc.bits + 1.76;
    out.noise_floor_dbfs_hz = -out.snr_db - 10.0 * std::log10(adc.sample_rate_hz / 2.0);
    out.lsb_volts = adc.full_scale_vpp / std::pow(2.0, adc.bits);
    return out;
}

double sfdr(const CascadeReport& report, double noise_bandwidth_hz)
{
    if (!std::isfinite(report.total_iip3_dbm)) return kInf;
    const double floor_dbm =
        kThermalDbmHz + report.total_nf_db + 10.0 * std::log10(noise_bandwidth_hz);
    return (2.0 / 3.0) * (report.total_iip3_dbm - floor_dbm);
}

double lsb_gain_tuning(const std::vector<CascadeStage>& stages, const AdcSpec& adc,
                       double noise_bandwidth_hz, double alpha)
{
    if (!(alpha > 0.0)) throw InvariantError("alpha must be positive");
    const CascadeReport rep = analyze_cascade(stages, 0.0, noise_bandwidth_hz);
    const double out_noise_dbm = kThermalDbmHz + 10.0 * std::log10(noise_bandwidth_hz) +
                                 rep.total_nf_db + rep.total_gain_db;
    const double target_v = alpha * adc.full_scale_vpp / std::pow(2.0, adc.bits);
    const double target_dbm =
        10.0 * std::log10(target_v * target_v / adc.input_impedance_ohm * 1.0e3);
    return target_dbm - out_noise_dbm;
}

double thermal_rise(double power_w, double theta_c_per_w, int via_count)
{
    if (power_w < 0.0) throw InvariantError("power must be nonnegative");
    if (!(theta_c_per_w > 0.0)) throw InvariantError("thermal resistance must be positive");
    if (via_count < 1) throw InvariantError("via count must be >= 1");
    return power_w * theta_c_per_w / static_cast<double>(via_count);
}

} // namespace radsim
