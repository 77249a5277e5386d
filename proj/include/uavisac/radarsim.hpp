#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "uavisac/rng.hpp"

namespace uavisac::radar {

/// Baseband probe: a BPSK bit block of sub_length L transmitted twice, so
/// the echo self-correlates at lag L.
struct RadarFrame {
    std::size_t sub_length = 0;  // L, samples per sub-sequence
    double sample_period = 0.0;  // T_s, s
    std::vector<std::complex<double>> symbols;  // 2L samples, second half == first half

    double window_duration() const { return static_cast<double>(sub_length) * sample_period; }
};

/// One synthesis -> correlation -> estimation round.
struct RadarTrial {
    std::size_t sub_length = 0;      // L, samples
    double true_velocity = 0.0;      // m/s
    double snr = 0.0;                // per-sample gamma_rad
    std::size_t true_delay = 0;      // l0, samples
    std::size_t estimated_lag = 0;   // peak lag; true_delay + 2L - 1 on a correct lock
    double estimated_velocity = 0.0; // m/s
    double peak_value = 0.0;         // |R| at the peak, in [0, 1]
};

/// Windowed normalized autocorrelation R[l] for l in
/// [first_lag, first_lag + value.size()).
struct Autocorrelation {
    std::vector<std::complex<double>> value;
    std::size_t first_lag = 0;
    std::size_t window = 0;  // L
};

struct McResult {
    double mse = 0.0;            // sample MSE of the velocity estimate, (m/s)^2
    double crb_reference = 0.0;  // closed-form bound at matching (L, T_s, snr)
    int trials = 0;
};

/// Closed-form velocity CRB for a correlation window of L samples; equal to
/// the scenario-level bound with offloaded bits s(1-beta) = L.
double crb_for_window(std::size_t window, double sample_period, double wavelength, double snr);

/// Largest velocity magnitude before the correlation phase wraps.
double unambiguous_velocity(double wavelength, double window_duration);

/// Fresh fair bits, BPSK-mapped and duplicated.
RadarFrame make_frame(std::size_t sub_length, double sample_period, Rng& rng);

/// Echo with round-trip Doppler f_D = 2*v/lambda and unit-variance circular
/// complex noise: y[l] = sqrt(snr) * exp(j*2*pi*f_D*l*T_s) * x[l - delay] + n[l].
/// noise_scale = 0 gives the noiseless oracle signal.
std::vector<std::complex<double>> synthesize_echo(const RadarFrame& frame, double velocity,
                                                  double snr, std::size_t delay,
                                                  double wavelength, std::size_t total_length,
                                                  Rng& rng, double noise_scale = 1.0);

/// R[l] = sum_n conj(y[l-n]) * y[l-n-L] over n in [0, L), normalized by the
/// two window energies, evaluated for l in [lag_begin, lag_end). The first
/// lag is summed directly and subsequent lags slide incrementally.
/// conjugate_both additionally conjugates the lagged factor (diagnostic
/// variant; it decoheres under Doppler). Throws std::invalid_argument when
/// the sequence is too short for the requested lags.
Autocorrelation autocorrelate(std::span<const std::complex<double>> samples, std::size_t window,
                              std::size_t lag_begin, std::size_t lag_end,
                              bool conjugate_both = false);

/// Full valid lag range [2L-1, samples.size()).
Autocorrelation autocorrelate(std::span<const std::complex<double>> samples, std::size_t window,
                              bool conjugate_both = false);

/// Magnitude-argmax peak (ties to the smallest lag) and the Doppler phase
/// read at it. With the single-conjugate correlation above, the peak phase
/// is -2*pi*f_D*T_D, so the velocity is -wavelength * angle / (4*pi*T_D).
std::pair<std::size_t, double> estimate_velocity(const Autocorrelation& ac, double wavelength,
                                                 double window_duration);

struct TrialOptions {
    std::size_t max_delay = 64;  // l0 drawn uniformly from [0, max_delay]
    bool conjugate_both = false;
    double noise_scale = 1.0;
};

/// One end-to-end round with a fresh bit sequence and a random delay.
RadarTrial run_trial(std::size_t sub_length, double sample_period, double wavelength,
                     double velocity, double snr, Rng& rng, const TrialOptions& opt = {});

/// `trials` independent rounds; each trial owns the (seed, index) sub-stream
/// so trial counts and thread schedules never change results.
McResult monte_carlo_mse(std::size_t sub_length, double sample_period, double wavelength,
                         double velocity, double snr, int trials, std::uint64_t seed,
                         const TrialOptions& opt = {});

}  // namespace uavisac::radar
