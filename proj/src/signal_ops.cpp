// SPDX-License-Identifier: Apache-2.0

#include "radsim/iq_signal.hpp"

#include <cmath>
#include <numbers>

#include "radsim/errors.hpp"
#include "radsim/kernels.hpp"

namespace radsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t sample_count(double duration_s, double fs)
{
    const double n = std::round(duration_s * fs);
    if (n < 1.0) {
        throw EmptySignal("duration " + std::to_string(duration_s) +
                          " s yields no samples at " + std::to_string(fs) + " Hz");
    }
    return static_cast<std::size_t>(n);
}

cdouble phasor_cycles(double cycles)
{
    const double arg = kTwoPi * std::fmod(cycles, 1.0);
    return {std::cos(arg), std::sin(arg)};
}

// Taylor window with nbar nearly-constant sidelobes at sll_db, normalized
// to a unit peak. Same construction as the usual radar references.
std::vector<double> taylor_window(std::size_t n, int nbar, double sll_db)
{
    std::vector<double> w(n, 1.0);
    if (n == 1 || nbar < 2) return w;
    const double b = std::pow(10.0, std::abs(sll_db) / 20.0);
    const double a = std::acosh(b) / std::numbers::pi;
    const double s2 = static_cast<double>(nbar) * nbar /
                      (a * a + (nbar - 0.5) * (nbar - 0.5));

    std::vector<double> fm(static_cast<std::size_t>(nbar), 0.0);
    for (int m = 1; m < nbar; ++m) {
        double num = 1.0;
        double den = 1.0;
        for (int k = 1; k < nbar; ++k) {
            num *= 1.0 - (m * m) / (s2 * (a * a + (k - 0.5) * (k - 0.5)));
            if (k != m) den *= 1.0 - static_cast<double>(m * m) / (k * k);
        }
        fm[static_cast<std::size_t>(m)] = ((m % 2 == 0) ? -0.5 : 0.5) * num / den;
    }
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = (static_cast<double>(i) - 0.5 * (static_cast<double>(n) - 1.0)) /
                          static_cast<double>(n);
        double v = 1.0;
        for (int m = 1; m < nbar; ++m) {
            v += 2.0 * fm[static_cast<std::size_t>(m)] * std::cos(kTwoPi * m * xi);
        }
        w[i] = v;
        peak = std::max(peak, v);
    }
    for (auto& v : w) v /= peak;
    return w;
}

std::vector<double> window_values(const ChirpSpec& spec, std::size_t n)
{
    switch (spec.window) {
    case ChirpWindow::rectangular:
        return std::vector<double>(n, 1.0);
    case ChirpWindow::hann: {
        std::vector<double> w(n, 1.0);
        if (n > 1) {
            for (std::size_t i = 0; i < n; ++i) {
                const double s = std::sin(std::numbers::pi * static_cast<double>(i) /
                                          (static_cast<double>(n) - 1.0));
                w[i] = s * s;
            }
        }
        return w;
    }
    case ChirpWindow::taylor:
        return taylor_window(n, spec.taylor_nbar, spec.taylor_sll_db);
    }
    return std::vector<double>(n, 1.0);
}

} // namespace

double IQSignal::energy() const
{
    double e = 0.0;
    for (const auto& s : samples) e += std::norm(s);
    return e;
}

void IQSignal::validate() const
{
    if (!(sample_rate_hz > 0.0)) {
        throw InvariantError("IQSignal sample_rate_hz must be positive");
    }
    for (const auto& s : samples) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw InvariantError("IQSignal contains a non-finite sample");
        }
    }
}

IQSignal generate_lfm_chirp(const ChirpSpec& spec, double sample_rate_hz)
{
    if (!(spec.duration_s > 0.0) || spec.bandwidth_hz < 0.0 || !(spec.amplitude > 0.0)) {
        throw InvariantError("chirp requires duration > 0, bandwidth >= 0, amplitude > 0");
    }
    if (spec.bandwidth_hz + 2.0 * std::abs(spec.center_offset_hz) > sample_rate_hz) {
        throw NyquistViolation("chirp violates the Nyquist bound: bandwidth + 2|offset| = " +
                               std::to_string(spec.bandwidth_hz +
                                              2.0 * std::abs(spec.center_offset_hz)) +
                               " Hz exceeds sample rate " + std::to_string(sample_rate_hz));
    }
    const std::size_t n = sample_count(spec.duration_s, sample_rate_hz);

    IQSignal out;
    out.sample_rate_hz = sample_rate_hz;
    out.samples.resize(n);
    const auto w = window_values(spec, n);

    const double chirp_sign = spec.sweep == SweepDirection::up ? 1.0 : -1.0;
    const double b = spec.bandwidth_hz;
    const double t_total = spec.duration_s;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate_hz;
        // phase in cycles: fc t + sign (B t^2 / 2T - B t / 2)
        const double cycles = spec.center_offset_hz * t +
                              chirp_sign * (b * t * t / (2.0 * t_total) - 0.5 * b * t);
        out.samples[i] = spec.amplitude * w[i] * phasor_cycles(cycles);
    }
    return out;
}

IQSignal generate_cw_pulse(double duration_s, double offset_hz, double amplitude,
                           double sample_rate_hz)
{
    if (!(duration_s > 0.0) || !(amplitude > 0.0)) {
        throw InvariantError("cw pulse requires duration > 0 and amplitude > 0");
    }
    if (!(std::abs(offset_hz) < sample_rate_hz / 2.0)) {
        throw NyquistViolation("cw offset " + std::to_string(offset_hz) +
                               " Hz is not below half the sample rate (Nyquist)");
    }
    const std::size_t n = sample_count(duration_s, sample_rate_hz);
    IQSignal out;
    out.sample_rate_hz = sample_rate_hz;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.samples[i] = amplitude * phasor_cycles(offset_hz * static_cast<double>(i) /
                                                   sample_rate_hz);
    }
    return out;
}

IQSignal nco_mix(const IQSignal& signal, double offset_hz)
{
    if (signal.empty()) throw EmptySignal("nco_mix requires a nonempty signal");
    IQSignal out = signal;
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        out.samples[i] *= phasor_cycles(offset_hz * static_cast<double>(i) /
                                        signal.sample_rate_hz);
    }
    return out;
}

IQSignal fir_filter(const IQSignal& signal, std::span<const cdouble> taps, ConvMode mode)
{
    if (signal.empty()) throw EmptySignal("fir_filter requires a nonempty signal");
    if (taps.empty()) throw EmptyTaps("fir_filter requires nonempty taps");
    IQSignal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.samples.resize(signal.size() + taps.size() - 1);
    if (mode == ConvMode::direct) {
        kernels::conv_direct_parallel(signal.samples, taps, out.samples);
    } else {
        kernels::conv_fft(signal.samples, taps, out.samples);
    }
    return out;
}

IQSignal decimate(const IQSignal& signal, std::size_t factor,
                  std::span<const cdouble> anti_alias_taps)
{
    if (factor < 1) throw InvariantError("decimation factor must be >= 1");
    IQSignal filtered = fir_filter(signal, anti_alias_taps, ConvMode::fast);
    IQSignal out;
    out.sample_rate_hz = signal.sample_rate_hz / static_cast<double>(factor);
    out.samples.reserve((filtered.size() + factor - 1) / factor);
    for (std::size_t i = 0; i < filtered.size(); i += factor) {
        out.samples.push_back(filtered.samples[i]);
    }
    return out;
}

IQSignal apply_delay(const IQSignal& signal, std::size_t delay_samples)
{
    IQSignal out;
    out.sample_rate_hz = signal.sample_rate_hz;
    out.samples.assign(delay_samples, cdouble{});
    out.samples.insert(out.samples.end(), signal.samples.begin(), signal.samples.end());
    return out;
}

GaussianSource::GaussianSource(std::uint64_t seed) : engine_(seed) {}

std::pair<double, double> GaussianSource::next_pair()
{
    // 53-bit uniforms; u1 shifted into (0, 1] so the log is finite.
    const double u1 = 1.0 - static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double arg = kTwoPi * u2;
    return {r * std::cos(arg), r * std::sin(arg)};
}

IQSignal add_awgn(const IQSignal& signal, const NoiseSpec& spec)
{
    if (spec.power < 0.0) throw InvariantError("noise power must be nonnegative");
    IQSignal out = signal;
    if (spec.power == 0.0) return out;
    GaussianSource src(spec.seed);
    const double scale = std::sqrt(spec.power / 2.0);
    for (auto& s : out.samples) {
        const auto [z1, z2] = src.next_pair();
        s += cdouble{scale * z1, scale * z2};
    }
    return out;
}

} // namespace radsim
