// SPDX-License-Identifier: Apache-2.0

#include "radsim/pulse_compression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "radsim/errors.hpp"
#include "radsim/kernels.hpp"

namespace radsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t argmax_magnitude(const cvec& y)
{
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double m = std::abs(y[i]);
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    return best;
}

} // namespace

const char* to_string(FilterKind kind)
{
    switch (kind) {
    case FilterKind::matched: return "matched";
    case FilterKind::mismatched: return "mismatched";
    case FilterKind::delay: return "delay";
    }
    return "matched";
}

FilterKind filter_kind_from_string(const std::string& s)
{
    if (s == "matched") return FilterKind::matched;
    if (s == "mismatched") return FilterKind::mismatched;
    if (s == "delay") return FilterKind::delay;
    throw ParseError("unknown filter kind '" + s + "'");
}

FilterTaps matched_filter(const IQSignal& waveform, std::size_t tap_budget)
{
    if (waveform.empty()) throw EmptySignal("matched_filter requires a nonempty waveform");
    if (waveform.size() > tap_budget) {
        throw BudgetExceeded("waveform length " + std::to_string(waveform.size()) +
                             " exceeds the tap budget " + std::to_string(tap_budget));
    }
    FilterTaps out;
    out.design_kind = FilterKind::matched;
    out.taps.resize(waveform.size());
    const double inv_norm = 1.0 / std::sqrt(waveform.energy());
    for (std::size_t i = 0; i < waveform.size(); ++i) {
        out.taps[i] = std::conj(waveform.samples[waveform.size() - 1 - i]) * inv_norm;
    }
    return out;
}

FilterTaps delay_filter(std::size_t delay_samples)
{
    FilterTaps out;
    out.design_kind = FilterKind::delay;
    out.taps.assign(delay_samples + 1, cdouble{});
    out.taps.back() = cdouble{1.0, 0.0};
    return out;
}

FilterTaps design_mismatched_filter(const IQSignal& waveform, std::size_t filter_length,
                                    std::size_t mainlobe_halfwidth_samples,
                                    std::span<const double> sidelobe_weighting,
                                    std::size_t tap_budget)
{
    if (waveform.empty()) throw EmptySignal("design requires a nonempty waveform");
    if (filter_length > tap_budget) {
        throw BudgetExceeded("filter length " + std::to_string(filter_length) +
                             " exceeds the tap budget " + std::to_string(tap_budget));
    }
    if (filter_length < waveform.size()) {
        throw LengthTooShort("filter length " + std::to_string(filter_length) +
                             " is shorter than the waveform (" +
                             std::to_string(waveform.size()) + ")");
    }

    const std::size_t n = waveform.size();
    const std::size_t l = filter_length;
    const std::size_t m = n + l - 1;
    if (!sidelobe_weighting.empty() && sidelobe_weighting.size() != m) {
        throw InvariantError("sidelobe weighting must have length N + L - 1 = " +
                             std::to_string(m));
    }
    const std::size_t k0 = (m - 1) / 2;

    std::vector<double> weights(m, 1.0);
    if (!sidelobe_weighting.empty()) {
        std::copy(sidelobe_weighting.begin(), sidelobe_weighting.end(), weights.begin());
    }
    const std::size_t lo = k0 > mainlobe_halfwidth_samples ? k0 - mainlobe_halfwidth_samples : 0;
    const std::size_t hi = std::min(m - 1, k0 + mainlobe_halfwidth_samples);
    for (std::size_t k = lo; k <= hi; ++k) weights[k] = 0.0;

    cvec r_store(l * l, cdouble{});
    kernels::normal_matrix_parallel(waveform.samples, weights, l, r_store);

    Eigen::MatrixXcd r = Eigen::Map<Eigen::MatrixXcd>(r_store.data(),
                                                      static_cast<Eigen::Index>(l),
                                                      static_cast<Eigen::Index>(l));
    double trace_avg = 0.0;
    for (std::size_t i = 0; i < l; ++i) trace_avg += r_store[i * l + i].real();
    trace_avg /= static_cast<double>(l);
    const double ridge = 1.0e-10 * trace_avg;
    for (std::size_t i = 0; i < l; ++i) {
        r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += ridge;
    }

    // constraint vector c[i] = conj(x[k0 - i]) where the waveform overlaps
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(l));
    for (std::size_t i = 0; i < l; ++i) {
        if (k0 >= i && k0 - i < n) {
            c(static_cast<Eigen::Index>(i)) = std::conj(waveform.samples[k0 - i]);
        }
    }

    auto ldlt = r.selfadjointView<Eigen::Lower>().ldlt();
    if (ldlt.info() != Eigen::Success || !(ldlt.rcond() > 1.0e-12)) {
        throw SingularSystem("mismatched-filter normal equations are ill conditioned");
    }
    Eigen::VectorXcd g = ldlt.solve(c);
    const cdouble denom = c.dot(g); // c^H g, real positive for a PD system
    if (!(std::abs(denom) > 0.0) || !std::isfinite(std::abs(denom))) {
        throw SingularSystem("unit-response constraint is degenerate");
    }
    g /= denom;

    FilterTaps out;
    out.design_kind = FilterKind::mismatched;
    out.taps.assign(g.data(), g.data() + l);
    return out;
}

CompressionMetrics compression_metrics(const IQSignal& waveform, const FilterTaps& taps,
                                       double range_m_per_sample)
{
    if (waveform.empty()) throw EmptySignal("compression_metrics requires a waveform");
    if (taps.taps.empty()) throw EmptyTaps("compression_metrics requires taps");

    // direct convolution: exact zeros stay zero, so the delta case reports
    // its -inf sentinels instead of transform round-off
    const cvec y = kernels::convolve_direct(waveform.samples, taps.taps);
    std::vector<double> mag(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) mag[i] = std::abs(y[i]);

    const std::size_t p = argmax_magnitude(y);
    const double peak = mag[p];

    // Mainlobe bounded by the first local magnitude minima on each side.
    std::size_t lb = p;
    while (lb > 0 && mag[lb - 1] < mag[lb]) --lb;
    std::size_t rb = p;
    while (rb + 1 < mag.size() && mag[rb + 1] < mag[rb]) ++rb;

    double side_peak = 0.0;
    double side_energy = 0.0;
    double main_energy = 0.0;
    for (std::size_t i = 0; i < mag.size(); ++i) {
        if (i >= lb && i <= rb) {
            main_energy += mag[i] * mag[i];
        } else {
            side_peak = std::max(side_peak, mag[i]);
            side_energy += mag[i] * mag[i];
        }
    }

    CompressionMetrics out;
    out.psl_db = side_peak > 0.0 ? 20.0 * std::log10(side_peak / peak) : -kInf;
    out.isl_db = side_energy > 0.0 ? 10.0 * std::log10(side_energy / main_energy) : -kInf;

    // -3 dB crossings with linear interpolation between samples. A side with
    // no crossing extends half a sample beyond the end, so a single-sample
    // response has width 1.
    const double thr = peak * std::pow(10.0, -3.0 / 20.0);
    double xl = -0.5;
    {
        std::size_t i = p;
        while (i > 0 && mag[i] >= thr) --i;
        if (mag[i] < thr) {
            xl = static_cast<double>(i) + (thr - mag[i]) / (mag[i + 1] - mag[i]);
        }
    }
    double xr = static_cast<double>(mag.size()) - 0.5;
    {
        std::size_t i = p;
        while (i + 1 < mag.size() && mag[i] >= thr) ++i;
        if (mag[i] < thr) {
            xr = static_cast<double>(i) - (thr - mag[i]) / (mag[i - 1] - mag[i]);
        }
    }
    out.mainlobe_width_samples = xr - xl;
    out.mainlobe_width_m = out.mainlobe_width_samples * range_m_per_sample;

    double taps_energy = 0.0;
    for (const auto& t : taps.taps) taps_energy += std::norm(t);
    const double loss = 10.0 * std::log10(waveform.energy() * taps_energy / (peak * peak));
    out.mismatch_loss_db = std::max(0.0, loss);
    out.processing_gain_db =
        10.0 * std::log10(static_cast<double>(waveform.size())) - out.mismatch_loss_db;
    return out;
}

IQSignal compress(const IQSignal& signal, const FilterTaps& taps)
{
    if (taps.taps.empty()) throw EmptyTaps("compress requires nonempty taps");
    return fir_filter(signal, taps.taps, ConvMode::fast);
}

std::size_t response_peak_lag(const IQSignal& waveform, const FilterTaps& taps)
{
    const cvec y = kernels::convolve_fast(waveform.samples, taps.taps);
    return argmax_magnitude(y);
}

} // namespace radsim
