// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "radsim/errors.hpp"
#include "radsim/iq_signal.hpp"
#include "test_helpers.hpp"

using namespace radsim;
using test::make_signal;

TEST_CASE("zero-bandwidth chirp degenerates to a DC phasor")
{
    ChirpSpec spec;
    spec.bandwidth_hz = 0.0;
    spec.duration_s = 1.0e-6;
    spec.amplitude = 1.0;
    const IQSignal s = generate_lfm_chirp(spec, 1.0e7);
    REQUIRE(s.size() == 10);
    for (const auto& v : s.samples) {
        CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("rectangular chirp length and energy")
{
    ChirpSpec spec;
    spec.bandwidth_hz = 5.0e6;
    spec.duration_s = 20.0e-6;
    const IQSignal s = generate_lfm_chirp(spec, 1.0e7);
    REQUIRE(s.size() == 200);
    CHECK(s.energy() == doctest::Approx(200.0).epsilon(1e-12));
}

TEST_CASE("chirp autocorrelation peaks at zero lag with value N")
{
    ChirpSpec spec;
    spec.bandwidth_hz = 5.0e6;
    spec.duration_s = 20.0e-6;
    const IQSignal s = generate_lfm_chirp(spec, 1.0e7);

    // brute-force autocorrelation over all lags
    double peak = 0.0;
    std::ptrdiff_t peak_lag = -1;
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    for (std::ptrdiff_t lag = -n + 1; lag < n; ++lag) {
        cdouble acc{};
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const std::ptrdiff_t j = i + lag;
            if (j >= 0 && j < n) acc += s.samples[static_cast<std::size_t>(i)] *
                                        std::conj(s.samples[static_cast<std::size_t>(j)]);
        }
        if (std::abs(acc) > peak) {
            peak = std::abs(acc);
            peak_lag = lag;
        }
    }
    CHECK(peak_lag == 0);
    CHECK(peak == doctest::Approx(200.0).epsilon(1e-12));
}

TEST_CASE("chirp sweep direction and windows")
{
    ChirpSpec spec;
    spec.bandwidth_hz = 2.0e6;
    spec.duration_s = 50.0e-6;
    spec.sweep = SweepDirection::down;
    const IQSignal down = generate_lfm_chirp(spec, 1.0e7);
    spec.sweep = SweepDirection::up;
    const IQSignal up = generate_lfm_chirp(spec, 1.0e7);
    // a down sweep of a centered chirp is the conjugate of the up sweep
    for (std::size_t i = 0; i < up.size(); ++i) {
        CHECK(std::abs(down.samples[i] - std::conj(up.samples[i])) < 1e-12);
    }

    spec.window = ChirpWindow::hann;
    const IQSignal hann = generate_lfm_chirp(spec, 1.0e7);
    CHECK(std::abs(hann.samples.front()) < 1e-12);
    CHECK(std::abs(hann.samples.back()) < 1e-12);

    spec.window = ChirpWindow::taylor;
    spec.taylor_nbar = 4;
    spec.taylor_sll_db = -35.0;
    const IQSignal tay = generate_lfm_chirp(spec, 1.0e7);
    double peak = 0.0;
    for (const auto& v : tay.samples) peak = std::max(peak, std::abs(v));
    CHECK(peak == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(tay.samples.front()) < 0.5);
    CHECK(std::abs(std::abs(tay.samples.front()) - std::abs(tay.samples.back())) < 1e-9);
}

TEST_CASE("chirp precondition errors")
{
    ChirpSpec spec;
    spec.bandwidth_hz = 11.0e6;
    spec.duration_s = 1.0e-6;
    CHECK_THROWS_AS(generate_lfm_chirp(spec, 1.0e7), NyquistViolation);
    spec.bandwidth_hz = 1.0e6;
    spec.center_offset_hz = 4.6e6;
    CHECK_THROWS_AS(generate_lfm_chirp(spec, 1.0e7), NyquistViolation);
    spec.center_offset_hz = 0.0;
    spec.duration_s = 1.0e-9;
    CHECK_THROWS_AS(generate_lfm_chirp(spec, 1.0e7), EmptySignal);
}

TEST_CASE("cw pulse basics")
{
    const IQSignal dc = generate_cw_pulse(1.0e-6, 0.0, 1.0, 4.0e6);
    REQUIRE(dc.size() == 4);
    for (const auto& v : dc.samples) CHECK(std::abs(v - cdouble{1.0, 0.0}) < 1e-15);

    const IQSignal quarter = generate_cw_pulse(1.0e-6, 1.0e6, 1.0, 4.0e6);
    REQUIRE(quarter.size() == 4);
    const cdouble expect[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(quarter.samples[i] - expect[i]) < 1e-12);
    }

    CHECK_THROWS_AS(generate_cw_pulse(1e-6, 2.0e6, 1.0, 4.0e6), NyquistViolation);
}

TEST_CASE("cw pulse equals a zero-bandwidth chirp sample for sample")
{
    const double fs = 10.0e6;
    ChirpSpec spec;
    spec.bandwidth_hz = 0.0;
    spec.duration_s = 3.7e-6;
    spec.center_offset_hz = 1.25e6;
    spec.amplitude = 0.8;
    const IQSignal chirp = generate_lfm_chirp(spec, fs);
    const IQSignal cw = generate_cw_pulse(3.7e-6, 1.25e6, 0.8, fs);
    REQUIRE(chirp.size() == cw.size());
    for (std::size_t i = 0; i < cw.size(); ++i) {
        CHECK(std::abs(chirp.samples[i] - cw.samples[i]) < 1e-12);
    }
}

TEST_CASE("nco mix identities")
{
    const IQSignal tone = generate_cw_pulse(20.0e-6, 1.3e6, 1.0, 1.0e7);

    const IQSignal same = nco_mix(tone, 0.0);
    for (std::size_t i = 0; i < tone.size(); ++i) {
        CHECK(same.samples[i] == tone.samples[i]);
    }

    const IQSignal round_trip = nco_mix(nco_mix(tone, 0.77e6), -0.77e6);
    for (std::size_t i = 0; i < tone.size(); ++i) {
        CHECK(std::abs(round_trip.samples[i] - tone.samples[i]) < 1e-12);
    }

    const IQSignal dc = nco_mix(tone, -1.3e6);
    for (std::size_t i = 1; i < dc.size(); ++i) {
        CHECK(std::abs(dc.samples[i] - dc.samples[0]) < 1e-12);
    }

    CHECK_THROWS_AS(nco_mix(IQSignal{{}, 1.0e6}, 1.0), EmptySignal);
}

TEST_CASE("nco mix preserves per-sample magnitude")
{
    std::mt19937_64 rng(7);
    const IQSignal sig = make_signal(test::random_complex(rng, 500), 1.0e7);
    const IQSignal mixed = nco_mix(sig, 1.234e6);
    for (std::size_t i = 0; i < sig.size(); ++i) {
        CHECK(std::abs(mixed.samples[i]) ==
              doctest::Approx(std::abs(sig.samples[i])).epsilon(1e-12));
    }
}

TEST_CASE("fir_filter identities and errors")
{
    std::mt19937_64 rng(11);
    const IQSignal sig = make_signal(test::random_complex(rng, 64), 1.0e6);

    const cvec one{cdouble{1.0, 0.0}};
    const IQSignal ident = fir_filter(sig, one, ConvMode::direct);
    REQUIRE(ident.size() == sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i) {
        CHECK(ident.samples[i] == sig.samples[i]);
    }

    IQSignal impulse = make_signal({cdouble{1.0, 0.0}}, 1.0e6);
    const cvec taps = test::random_complex(rng, 33);
    const IQSignal from_impulse = fir_filter(impulse, taps, ConvMode::direct);
    REQUIRE(from_impulse.size() == taps.size());
    for (std::size_t i = 0; i < taps.size(); ++i) {
        CHECK(from_impulse.samples[i] == taps[i]);
    }

    CHECK_THROWS_AS(fir_filter(sig, cvec{}, ConvMode::direct), EmptyTaps);
    CHECK_THROWS_AS(fir_filter(IQSignal{{}, 1.0}, one, ConvMode::direct), EmptySignal);
}

TEST_CASE("fir_filter fast mode matches direct on a 480-tap case")
{
    std::mt19937_64 rng(13);
    const IQSignal sig = make_signal(test::random_complex(rng, 1024), 1.0e6);
    const cvec taps = test::random_complex(rng, 480);
    const IQSignal direct = fir_filter(sig, taps, ConvMode::direct);
    const IQSignal fast = fir_filter(sig, taps, ConvMode::fast);
    CHECK(test::max_relative_error(fast.samples, direct.samples) <= 1e-9);
}

TEST_CASE("convolution is linear")
{
    std::mt19937_64 rng(17);
    const cvec xs = test::random_complex(rng, 200);
    const cvec ys = test::random_complex(rng, 200);
    const cvec taps = test::random_complex(rng, 31);
    const cdouble a{0.7, -0.2};
    const cdouble b{-1.3, 0.45};

    cvec combo(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) combo[i] = a * xs[i] + b * ys[i];

    const IQSignal fx = fir_filter(make_signal(xs, 1e6), taps, ConvMode::direct);
    const IQSignal fy = fir_filter(make_signal(ys, 1e6), taps, ConvMode::direct);
    const IQSignal fc = fir_filter(make_signal(combo, 1e6), taps, ConvMode::direct);

    cvec expect(fc.size());
    for (std::size_t i = 0; i < fc.size(); ++i) {
        expect[i] = a * fx.samples[i] + b * fy.samples[i];
    }
    CHECK(test::max_relative_error(fc.samples, expect) <= 1e-10);
}

TEST_CASE("decimate length arithmetic and identity")
{
    std::mt19937_64 rng(19);
    const IQSignal sig = make_signal(test::random_complex(rng, 1000), 4.0e6);

    const cvec one{cdouble{1.0, 0.0}};
    const IQSignal same = decimate(sig, 1, one);
    REQUIRE(same.size() == sig.size());
    CHECK(same.sample_rate_hz == sig.sample_rate_hz);

    const cvec taps = test::random_complex(rng, 33);
    const IQSignal dec = decimate(sig, 4, taps);
    CHECK(dec.size() == 258); // ceil((1000 + 33 - 1) / 4)
    CHECK(dec.sample_rate_hz == doctest::Approx(1.0e6));
}

TEST_CASE("decimate respects the anti-alias taps' measured response")
{
    // windowed-sinc lowpass, cutoff fs/8, designed here in the test
    const double fs = 8.0e6;
    const std::size_t ntaps = 63;
    cvec taps(ntaps);
    const double fc = 0.125; // cycles per sample
    double sum = 0.0;
    for (std::size_t i = 0; i < ntaps; ++i) {
        const double m = static_cast<double>(i) - (ntaps - 1) / 2.0;
        const double sinc = m == 0.0 ? 2.0 * fc
                                     : std::sin(2.0 * std::numbers::pi * fc * m) /
                                           (std::numbers::pi * m);
        const double w = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi *
                                                static_cast<double>(i) /
                                                static_cast<double>(ntaps - 1));
        taps[i] = sinc * w;
        sum += sinc * w;
    }
    for (auto& t : taps) t /= sum;

    // measure the taps' response numerically first (the oracle)
    auto response_at = [&](double f_hz) {
        cdouble acc{};
        for (std::size_t i = 0; i < ntaps; ++i) {
            const double arg = -2.0 * std::numbers::pi * f_hz / fs * static_cast<double>(i);
            acc += taps[i] * cdouble{std::cos(arg), std::sin(arg)};
        }
        return std::abs(acc);
    };
    const double in_band_gain = response_at(0.2e6);
    const double stop_gain = response_at(3.2e6);
    REQUIRE(in_band_gain > 0.9);
    REQUIRE(stop_gain < 0.01);

    auto steady_amplitude = [&](const IQSignal& s) {
        double peak = 0.0;
        for (std::size_t i = s.size() / 4; i < 3 * s.size() / 4; ++i) {
            peak = std::max(peak, std::abs(s.samples[i]));
        }
        return peak;
    };

    const IQSignal tone_in = generate_cw_pulse(200e-6, 0.2e6, 1.0, fs);
    const IQSignal tone_out = decimate(tone_in, 2, taps);
    CHECK(steady_amplitude(tone_out) == doctest::Approx(in_band_gain).epsilon(0.01));

    const IQSignal blocker_in = generate_cw_pulse(200e-6, 3.2e6, 1.0, fs);
    const IQSignal blocker_out = decimate(blocker_in, 2, taps);
    CHECK(steady_amplitude(blocker_out) <= stop_gain * 1.1);
}

TEST_CASE("apply_delay prepends zeros")
{
    std::mt19937_64 rng(23);
    const IQSignal sig = make_signal(test::random_complex(rng, 3), 1.0e6);

    const IQSignal same = apply_delay(sig, 0);
    REQUIRE(same.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(same.samples[i] == sig.samples[i]);

    const IQSignal delayed = apply_delay(sig, 5);
    REQUIRE(delayed.size() == 8);
    for (std::size_t i = 0; i < 5; ++i) CHECK(delayed.samples[i] == cdouble{});
    for (std::size_t i = 0; i < 3; ++i) CHECK(delayed.samples[5 + i] == sig.samples[i]);
}

TEST_CASE("awgn determinism and statistics")
{
    std::mt19937_64 rng(29);
    const IQSignal sig = make_signal(test::random_complex(rng, 256), 1.0e6);

    const IQSignal same = add_awgn(sig, {0.0, 42});
    for (std::size_t i = 0; i < sig.size(); ++i) CHECK(same.samples[i] == sig.samples[i]);

    const IQSignal a = add_awgn(sig, {0.5, 1234});
    const IQSignal b = add_awgn(sig, {0.5, 1234});
    for (std::size_t i = 0; i < sig.size(); ++i) CHECK(a.samples[i] == b.samples[i]);

    const IQSignal zeros = make_signal(cvec(1000000, cdouble{}), 1.0e6);
    const IQSignal noisy = add_awgn(zeros, {1.0, 20260809});
    const double mean_square = noisy.energy() / static_cast<double>(noisy.size());
    CHECK(mean_square == doctest::Approx(1.0).epsilon(0.005));
}
