// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace radsim {

using cdouble = std::complex<double>;
using cvec = std::vector<cdouble>;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Uniformly sampled complex baseband sequence. Samples are dimensionless
/// with 1.0 meaning analog full scale; power bookkeeping throughout the
/// toolkit treats a unit mean-square sample as 0 dBm.
struct IQSignal {
    cvec samples;
    double sample_rate_hz = 0.0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    /// Sum of |s[n]|^2 over all samples.
    double energy() const;

    /// Throws if sample_rate_hz <= 0 or any sample is non-finite.
    void validate() const;
};

enum class SweepDirection { up, down };
enum class ChirpWindow { rectangular, hann, taylor };

struct ChirpSpec {
    double bandwidth_hz = 0.0;
    double duration_s = 0.0;
    double center_offset_hz = 0.0;
    double amplitude = 1.0;
    SweepDirection sweep = SweepDirection::up;
    ChirpWindow window = ChirpWindow::rectangular;
    int taylor_nbar = 4;
    double taylor_sll_db = -35.0;
};

struct NoiseSpec {
    double power = 0.0; // mean-square complex sample value
    std::uint64_t seed = 0;
};

enum class ConvMode { direct, fast };

// Chirp phase reference: t = 0 at the first sample; the instantaneous
// frequency is center_offset_hz at mid-pulse, so a zero-bandwidth chirp
// coincides sample-for-sample with generate_cw_pulse.
IQSignal generate_lfm_chirp(const ChirpSpec& spec, double sample_rate_hz);

IQSignal generate_cw_pulse(double duration_s, double offset_hz, double amplitude,
                           double sample_rate_hz);

IQSignal nco_mix(const IQSignal& signal, double offset_hz);

/// Full linear convolution, output length N + L - 1. `fast` is the
/// transform-based path; `direct` is the time-domain reference.
IQSignal fir_filter(const IQSignal& signal, std::span<const cdouble> taps, ConvMode mode);

/// Filter with the anti-alias taps, then keep every factor-th sample
/// starting at index 0. Output sample rate is fs / factor.
IQSignal decimate(const IQSignal& signal, std::size_t factor,
                  std::span<const cdouble> anti_alias_taps);

IQSignal apply_delay(const IQSignal& signal, std::size_t delay_samples);

/// Adds circularly symmetric Gaussian noise of total complex power
/// `spec.power` (power/2 per quadrature). The generator is mt19937_64
/// with a Box-Muller transform, so a fixed seed reproduces the same
/// sample stream on every run.
IQSignal add_awgn(const IQSignal& signal, const NoiseSpec& spec);

/// Standard normal sampler used by add_awgn; exposed so simulation code
/// shares the exact same reproducible stream definition. The mt19937_64
/// sequence is mandated by the standard, and the uniform-to-Gaussian map
/// is spelled out in the cpp, so streams are stable across platforms for
/// a given floating-point width.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed);

    /// One Box-Muller pair per call.
    std::pair<double, double> next_pair();

private:
    std::mt19937_64 engine_;
};

} // namespace radsim
