// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "radsim/config.hpp"
#include "radsim/errors.hpp"
#include "radsim/io.hpp"

namespace {

using namespace radsim;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    bool dump_effective = false;
};

void add_common(CLI::App* cmd, CommonArgs& args)
{
    cmd->add_option("--config", args.config_path, "configuration file (JSON)")->required();
    cmd->add_option("--out", args.out_path, "output path (stdout for csv when omitted)");
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"csv", "raw"}));
    cmd->add_option("--seed", args.seed, "override the scenario seed");
    cmd->add_flag("--dump-effective-config", args.dump_effective,
                  "print the effective configuration with defaults filled");
}

Config load_and_maybe_dump(const CommonArgs& args)
{
    Config cfg = load_config(args.config_path);
    if (args.dump_effective) std::cout << cfg.dump_effective();
    return cfg;
}

void emit_csv(const CsvWriter& csv, const CommonArgs& args)
{
    if (args.out_path.empty()) {
        std::cout << csv.text();
    } else {
        csv.write(args.out_path);
    }
}

int run_chirp(CommonArgs& args, const std::string& waveform_id)
{
    Config cfg = load_and_maybe_dump(args);
    const IQSignal& sig = cfg.waveform(waveform_id);
    if (args.format == "raw") {
        if (args.out_path.empty()) throw InvariantError("--format raw requires --out");
        write_iq(args.out_path, sig);
        return 0;
    }
    CsvWriter csv("n,i,q");
    for (std::size_t n = 0; n < sig.size(); ++n) {
        csv.add_row({std::to_string(n), format_double(sig.samples[n].real()),
                     format_double(sig.samples[n].imag())});
    }
    emit_csv(csv, args);
    return 0;
}

int run_pc_design(CommonArgs& args, const std::string& filter_id)
{
    Config cfg = load_and_maybe_dump(args);
    const FilterTaps& taps = cfg.filter(filter_id);
    if (args.format == "raw") {
        if (args.out_path.empty()) throw InvariantError("--format raw requires --out");
        IQSignal as_signal;
        as_signal.samples = taps.taps;
        as_signal.sample_rate_hz = cfg.sample_rate_hz;
        write_iq(args.out_path, as_signal, {{"design_kind", to_string(taps.design_kind)}});
        return 0;
    }
    CsvWriter csv("n,i,q");
    for (std::size_t n = 0; n < taps.taps.size(); ++n) {
        csv.add_row({std::to_string(n), format_double(taps.taps[n].real()),
                     format_double(taps.taps[n].imag())});
    }
    emit_csv(csv, args);
    return 0;
}

int run_pc_eval(CommonArgs& args, const std::string& waveform_id, const std::string& filter_id)
{
    Config cfg = load_and_maybe_dump(args);
    const IQSignal& wf = cfg.waveform(waveform_id);
    const FilterTaps& taps = cfg.filter(filter_id);
    const double range_per_sample = kSpeedOfLight / (2.0 * wf.sample_rate_hz);
    const CompressionMetrics m = compression_metrics(wf, taps, range_per_sample);

    CsvWriter csv("psl_db,isl_db,mainlobe_width_samples,mainlobe_width_m,"
                  "mismatch_loss_db,processing_gain_db");
    csv.add_row({format_double(m.psl_db), format_double(m.isl_db),
                 format_double(m.mainlobe_width_samples), format_double(m.mainlobe_width_m),
                 format_double(m.mismatch_loss_db), format_double(m.processing_gain_db)});
    emit_csv(csv, args);
    if (!args.out_path.empty()) {
        std::fprintf(stderr, "psl %.2f dB, isl %.2f dB, width %.2f samples, loss %.3f dB\n",
                     m.psl_db, m.isl_db, m.mainlobe_width_samples, m.mismatch_loss_db);
    }
    return 0;
}

int run_spurs(CommonArgs& args)
{
    Config cfg = load_and_maybe_dump(args);
    if (!cfg.plan || !cfg.mixer) {
        throw CrossRefError("spurs requires plan and mixer sections in the configuration");
    }
    FilterMask mask;
    if (cfg.mask) mask = *cfg.mask;
    else mask.breakpoints = {{1.0, 0.0}};

    const PlanConfig& pc = *cfg.plan;
    const auto spurs =
        apply_filter_mask(enumerate_spurs(pc.plan, *cfg.mixer, pc.rf_input_dbm), mask);
    CsvWriter csv("m,n,sign,frequency_hz,level_dbm,post_filter_level_dbm,in_band,margin_db");
    for (const auto& s : spurs) {
        csv.add_row({std::to_string(s.m), std::to_string(s.n), std::string(1, s.sign),
                     format_double(s.frequency_hz), format_double(s.level_dbm),
                     format_double(*s.post_filter_level_dbm), s.in_band ? "1" : "0",
                     format_double(pc.spur_threshold_dbm - *s.post_filter_level_dbm)});
    }
    emit_csv(csv, args);

    const PlanReport report =
        evaluate_plan(pc.plan, *cfg.mixer, mask, pc.rf_input_dbm, pc.spur_threshold_dbm);
    std::fprintf(stderr,
                 "plan %s: worst in-band %.2f dBm, margin %.2f dB, "
                 "LO feedthrough %.2f dBm (post-filter %.2f dBm)\n",
                 report.pass ? "PASS" : "FAIL", report.worst_in_band_level_dbm,
                 report.margin_db, report.lo_feedthrough_level_dbm,
                 report.lo_feedthrough_post_filter_dbm);

    if (!pc.bandwidth_candidates_hz.empty()) {
        const auto sweep = sweep_analog_bandwidth(pc.plan, *cfg.mixer, mask, pc.rf_input_dbm,
                                                  pc.spur_threshold_dbm,
                                                  pc.bandwidth_candidates_hz);
        for (const auto& [bw, r] : sweep.entries) {
            std::fprintf(stderr, "  bandwidth %.4g Hz: %s (margin %.2f dB)\n", bw,
                         r.pass ? "pass" : "fail", r.margin_db);
        }
        if (sweep.widest_passing_bandwidth_hz) {
            std::fprintf(stderr, "  widest passing bandwidth: %.4g Hz\n",
                         *sweep.widest_passing_bandwidth_hz);
        } else {
            std::fprintf(stderr, "  no candidate bandwidth passes\n");
        }
    }
    return 0;
}

int run_cascade(CommonArgs& args)
{
    Config cfg = load_and_maybe_dump(args);
    if (!cfg.cascade) throw CrossRefError("cascade requires a cascade section");
    const CascadeConfig& cc = *cfg.cascade;
    const CascadeReport r = analyze_cascade(cc.stages, cc.input_dbm, cc.noise_bandwidth_hz);

    CsvWriter csv("stage,gain_db,nf_db,oip3_dbm,level_out_dbm,compressed_flag");
    for (std::size_t i = 0; i < cc.stages.size(); ++i) {
        csv.add_row({cc.stages[i].name, format_double(cc.stages[i].gain_db),
                     format_double(cc.stages[i].nf_db), format_double(cc.stages[i].oip3_dbm),
                     format_double(r.stage_levels_dbm[i]),
                     r.compression_flags[i] ? "1" : "0"});
    }
    csv.add_raw_line("");
    csv.add_raw_line("total_gain_db,total_nf_db,total_iip3_dbm,mds_dbm,sfdr_db");
    csv.add_raw_line(format_double(r.total_gain_db) + "," + format_double(r.total_nf_db) +
                     "," + format_double(r.total_iip3_dbm) + "," + format_double(r.mds_dbm) +
                     "," + format_double(r.sfdr_db));
    emit_csv(csv, args);

    for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::fprintf(stderr,
                 "gain %.2f dB, NF %.2f dB, IIP3 %.2f dBm, MDS %.2f dBm, SFDR %.2f dB\n",
                 r.total_gain_db, r.total_nf_db, r.total_iip3_dbm, r.mds_dbm, r.sfdr_db);
    if (cfg.adc) {
        const AdcFloor f = adc_floor(*cfg.adc);
        const double delta = lsb_gain_tuning(cc.stages, *cfg.adc, cc.noise_bandwidth_hz);
        std::fprintf(stderr,
                     "ADC: SNR %.2f dB, LSB %.3f uV; gain delta to toggle one LSB: %.2f dB\n",
                     f.snr_db, f.lsb_volts * 1e6, delta);
    }
    return 0;
}

int run_timing(CommonArgs& args)
{
    Config cfg = load_and_maybe_dump(args);
    const TimingSchedule sched = cfg.build_validated_schedule();
    std::fprintf(stderr, "schedule: PRT %.6g s, receive window [%.6g, %.6g] s\n", sched.prt_s,
                 sched.receive_window_start_s, sched.receive_window_end_s);
    for (const auto& e : sched.events) {
        std::fprintf(stderr, "  %-16s start %.6g s, duration %.6g s\n", to_string(e.kind),
                     e.start_s, e.duration_s);
    }

    const auto short_ev = sched.first_event(EventKind::transmit_short);
    const auto medium_ev = sched.first_event(EventKind::transmit_medium);
    if (medium_ev) {
        const double short_dur = short_ev ? short_ev->duration_s : 0.0;
        const CoverageReport cov = coverage_check(sched, short_dur, medium_ev->duration_s);
        if (cov.pass && cov.has_covered_gap) {
            std::fprintf(stderr,
                         "coverage PASS: short pulse covers %.2f m to %.2f m "
                         "(medium blind range %.2f m)\n",
                         cov.covered_lo_m, cov.covered_hi_m, cov.boundary_m);
        } else if (cov.pass) {
            std::fprintf(stderr, "coverage PASS (nothing to cover)\n");
        } else {
            std::fprintf(stderr, "coverage FAIL: uncovered interval [%.1f m, %.1f m]\n",
                         cov.uncovered_lo_m, cov.uncovered_hi_m);
        }
    }

    if (cfg.masking) {
        const MaskingConfig& mc = *cfg.masking;
        const MaskingReport rep = simulate_cal_window(sched, cfg.waveforms(),
                                                      cfg.all_filters(), mc.cal_injection_dbm,
                                                      mc.noise_power, mc.offsets_m,
                                                      cfg.sample_rate_hz);
        CsvWriter csv("offset_m,limit,min_detectable_dbm");
        for (const auto& row : rep.rows) {
            csv.add_row({format_double(row.offset_m),
                         row.limit == DetectionLimit::noise ? "noise" : "sidelobe",
                         format_double(row.min_detectable_dbm)});
        }
        emit_csv(csv, args);
        std::fprintf(stderr,
                     "masking: compressed support %zu gates, noise-limited floor %.2f dBm\n",
                     rep.support_gates, rep.noise_limited_dbm);
    }
    return 0;
}

int run_simulate(CommonArgs& args)
{
    Config cfg = load_and_maybe_dump(args);
    if (!cfg.scenario) throw CrossRefError("simulate requires a scenario section");
    Scenario scenario = *cfg.scenario;
    if (args.seed) scenario.seed = *args.seed;

    const TimingSchedule sched = cfg.build_validated_schedule();
    const SimulationResult r =
        run_scenario(scenario, sched, cfg.waveforms(), cfg.all_filters());

    if (args.format == "raw") {
        if (args.out_path.empty()) throw InvariantError("--format raw requires --out");
        write_scalar_f32(args.out_path, r.stitched.power_db,
                         {{"range_step_m", format_double(r.stitched.range_step_m)},
                          {"content", "stitched_power_db"}});
    } else {
        CsvWriter csv("range_m,power_db,pulse_kind");
        for (std::size_t g = 0; g < r.stitched.power_db.size(); ++g) {
            csv.add_row({format_double(r.stitched.range_of(g)),
                         format_double(r.stitched.power_db[g]),
                         to_string(r.stitched_source[g])});
        }
        emit_csv(csv, args);
    }

    std::fprintf(stderr, "stitch boundary %.2f m, %zu detections\n", r.stitch_boundary_m,
                 r.detections.size());
    for (const auto& d : r.detections) {
        std::fprintf(stderr, "  detection: %.2f m, %.2f dBm\n", d.range_m, d.power_dbm);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"pulse-compression radar IF/receiver design toolkit"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string waveform_id;
    std::string filter_id;

    auto* chirp = app.add_subcommand("chirp", "generate a configured waveform");
    add_common(chirp, common);
    chirp->add_option("--waveform", waveform_id, "waveform id from the config")->required();

    auto* design = app.add_subcommand("pc-design", "design a configured compression filter");
    add_common(design, common);
    design->add_option("--filter", filter_id, "filter id from the config")->required();

    auto* eval = app.add_subcommand("pc-eval", "compression metrics for waveform + filter");
    add_common(eval, common);
    eval->add_option("--waveform", waveform_id)->required();
    eval->add_option("--filter", filter_id)->required();

    auto* spurs = app.add_subcommand("spurs", "mixer spur report and plan evaluation");
    add_common(spurs, common);

    auto* cascade = app.add_subcommand("cascade", "receive-chain dynamic range report");
    add_common(cascade, common);

    auto* timing = app.add_subcommand("timing", "schedule validation, coverage and masking");
    add_common(timing, common);

    auto* simulate = app.add_subcommand("simulate", "run the point-target scenario");
    add_common(simulate, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (chirp->parsed()) return run_chirp(common, waveform_id);
        if (design->parsed()) return run_pc_design(common, filter_id);
        if (eval->parsed()) return run_pc_eval(common, waveform_id, filter_id);
        if (spurs->parsed()) return run_spurs(common);
        if (cascade->parsed()) return run_cascade(common);
        if (timing->parsed()) return run_timing(common);
        if (simulate->parsed()) return run_simulate(common);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return 2;
    }
    return 0;
}
