// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "radsim/iq_signal.hpp"

namespace radsim {

inline constexpr std::size_t kDefaultTapBudget = 480;

enum class FilterKind { matched, mismatched, delay };

struct FilterTaps {
    cvec taps;
    FilterKind design_kind = FilterKind::matched;
    std::string source_waveform_id;
};

struct CompressionMetrics {
    double psl_db = 0.0;  // peak sidelobe relative to mainlobe peak; -inf if no sidelobes
    double isl_db = 0.0;  // sidelobe energy over mainlobe energy; -inf if no sidelobes
    double mainlobe_width_samples = 0.0; // -3 dB width, linear interpolation
    double mainlobe_width_m = 0.0;
    double mismatch_loss_db = 0.0;       // output-SNR loss vs the matched filter
    double processing_gain_db = 0.0;
};

/// Time-reversed conjugate of the waveform, normalized to unit energy.
/// Compressing the waveform with its matched filter peaks at index N-1
/// of the full convolution with magnitude sqrt(waveform energy).
FilterTaps matched_filter(const IQSignal& waveform,
                          std::size_t tap_budget = kDefaultTapBudget);

/// A unit-gain delay: taps are delay_samples zeros followed by a one.
FilterTaps delay_filter(std::size_t delay_samples);

// Constrained weighted least-squares mismatched filter. The taps minimize
// the weighted response energy at every lag outside the mainlobe window
// [k0 - halfwidth, k0 + halfwidth], subject to a unit response at the
// window center k0 = floor((N + L - 2) / 2). Solved through the normal
// equations of the convolution matrix with a ridge of 1e-10 times the
// trace average; SingularSystem is raised if the factorization's condition
// estimate still exceeds 1e12. Deterministic: the normal matrix is built
// with a fixed per-entry summation order and factored sequentially.
//
// `sidelobe_weighting`, when nonempty, must have length N + L - 1 and
// scales the penalty per lag (entries inside the mainlobe window are
// ignored).
FilterTaps design_mismatched_filter(const IQSignal& waveform, std::size_t filter_length,
                                    std::size_t mainlobe_halfwidth_samples,
                                    std::span<const double> sidelobe_weighting = {},
                                    std::size_t tap_budget = kDefaultTapBudget);

// Metrics of the compressed response waveform (x) convolved with taps (a).
// The mainlobe region for the PSL/ISL split runs from the first local
// magnitude minimum left of the global peak to the first one right of it;
// mainlobe_width_samples is the -3 dB width with linear interpolation
// between samples. Mismatch loss compares the peak output SNR on white
// noise against the matched filter: 10 log10(E_x ||a||^2 / |peak|^2).
// Processing gain is 10 log10(N) minus the mismatch loss.
CompressionMetrics compression_metrics(const IQSignal& waveform, const FilterTaps& taps,
                                       double range_m_per_sample);

/// Full fast convolution of the signal with the compression taps.
IQSignal compress(const IQSignal& signal, const FilterTaps& taps);

/// Lag of the compressed-response peak for a zero-delay echo of `waveform`
/// through `taps`; converts convolution gate index to range gate zero.
std::size_t response_peak_lag(const IQSignal& waveform, const FilterTaps& taps);

const char* to_string(FilterKind kind);
FilterKind filter_kind_from_string(const std::string& s);

} // namespace radsim
