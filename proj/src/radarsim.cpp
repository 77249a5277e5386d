#include "uavisac/radarsim.hpp"

#include <cmath>
#include <stdexcept>

namespace uavisac::radar {

namespace {

using cplx = std::complex<double>;

double magnitude_sq(const cplx& v) { return v.real() * v.real() + v.imag() * v.imag(); }

}  // namespace

double crb_for_window(std::size_t window, double sample_period, double wavelength, double snr) {
    const double l3 = static_cast<double>(window) * static_cast<double>(window) *
                      static_cast<double>(window);
    const double lambda2 = wavelength * wavelength;
    return 6.0 * lambda2 /
           (16.0 * M_PI * M_PI * l3 * sample_period * sample_period * snr);
}

double unambiguous_velocity(double wavelength, double window_duration) {
    return wavelength / (4.0 * window_duration);
}

RadarFrame make_frame(std::size_t sub_length, double sample_period, Rng& rng) {
    RadarFrame frame;
    frame.sub_length = sub_length;
    frame.sample_period = sample_period;
    frame.symbols.resize(2 * sub_length);
    for (std::size_t i = 0; i < sub_length; ++i) {
        const double symbol = (rng() & 1ULL) ? 1.0 : -1.0;
        frame.symbols[i] = cplx(symbol, 0.0);
        frame.symbols[i + sub_length] = frame.symbols[i];
    }
    return frame;
}

std::vector<cplx> synthesize_echo(const RadarFrame& frame, double velocity, double snr,
                                  std::size_t delay, double wavelength,
                                  std::size_t total_length, Rng& rng, double noise_scale) {
    if (total_length < delay + frame.symbols.size())
        throw std::invalid_argument("synthesize_echo: total_length too short for delay + 2L");
    const double doppler = 2.0 * velocity / wavelength;  // round trip
    const double omega = 2.0 * M_PI * doppler * frame.sample_period;
    const double amplitude = std::sqrt(snr);

    std::vector<cplx> samples(total_length);
    for (std::size_t l = 0; l < total_length; ++l) {
        cplx value = noise_scale != 0.0 ? noise_scale * complex_normal(rng) : cplx(0.0, 0.0);
        if (l >= delay && l - delay < frame.symbols.size()) {
            const cplx rotation = std::polar(1.0, omega * static_cast<double>(l));
            value += amplitude * rotation * frame.symbols[l - delay];
        }
        samples[l] = value;
    }
    return samples;
}

Autocorrelation autocorrelate(std::span<const cplx> samples, std::size_t window,
                              std::size_t lag_begin, std::size_t lag_end, bool conjugate_both) {
    if (window == 0) throw std::invalid_argument("autocorrelate: window must be positive");
    if (lag_begin < 2 * window - 1)
        throw std::invalid_argument("autocorrelate: lag_begin below first valid lag 2L-1");
    if (lag_end > samples.size())
        throw std::invalid_argument("autocorrelate: lag_end past end of sequence");
    if (lag_begin >= lag_end)
        throw std::invalid_argument("autocorrelate: empty lag range");

    Autocorrelation ac;
    ac.first_lag = lag_begin;
    ac.window = window;
    ac.value.reserve(lag_end - lag_begin);

    auto term = [&](std::size_t l) {
        const cplx late = samples[l];
        const cplx early = samples[l - window];
        return std::conj(late) * (conjugate_both ? std::conj(early) : early);
    };

    // Direct sums at the first lag, then O(1) sliding updates.
    cplx numerator(0.0, 0.0);
    double energy_late = 0.0;
    double energy_early = 0.0;
    for (std::size_t n = 0; n < window; ++n) {
        numerator += term(lag_begin - n);
        energy_late += magnitude_sq(samples[lag_begin - n]);
        energy_early += magnitude_sq(samples[lag_begin - n - window]);
    }

    for (std::size_t l = lag_begin;; ++l) {
        const double denom = std::sqrt(energy_late) * std::sqrt(energy_early);
        ac.value.push_back(denom > 0.0 ? numerator / denom : cplx(0.0, 0.0));
        if (l + 1 >= lag_end) break;
        numerator += term(l + 1) - term(l + 1 - window);
        energy_late += magnitude_sq(samples[l + 1]) - magnitude_sq(samples[l + 1 - window]);
        energy_early +=
            magnitude_sq(samples[l + 1 - window]) - magnitude_sq(samples[l + 1 - 2 * window]);
    }
    return ac;
}

Autocorrelation autocorrelate(std::span<const cplx> samples, std::size_t window,
                              bool conjugate_both) {
    return autocorrelate(samples, window, 2 * window - 1, samples.size(), conjugate_both);
}

std::pair<std::size_t, double> estimate_velocity(const Autocorrelation& ac, double wavelength,
                                                 double window_duration) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < ac.value.size(); ++i) {
        const double mag = std::abs(ac.value[i]);
        if (mag > best_mag) {  // strict: ties keep the smallest lag
            best_mag = mag;
            best = i;
        }
    }
    const double angle = std::arg(ac.value[best]);
    // Single-conjugate peak phase is -2*pi*f_D*T_D.
    const double doppler = -angle / (2.0 * M_PI * window_duration);
    const double velocity = doppler * wavelength / 2.0;
    return {ac.first_lag + best, velocity};
}

RadarTrial run_trial(std::size_t sub_length, double sample_period, double wavelength,
                     double velocity, double snr, Rng& rng, const TrialOptions& opt) {
    const RadarFrame frame = make_frame(sub_length, sample_period, rng);
    const std::size_t delay = static_cast<std::size_t>(uniform_index(rng, opt.max_delay + 1));
    const std::size_t total = opt.max_delay + 2 * sub_length;
    const auto samples =
        synthesize_echo(frame, velocity, snr, delay, wavelength, total, rng, opt.noise_scale);
    const auto ac = autocorrelate(samples, sub_length, opt.conjugate_both);
    const auto [lag, v_hat] = estimate_velocity(ac, wavelength, frame.window_duration());

    RadarTrial trial;
    trial.sub_length = sub_length;
    trial.true_velocity = velocity;
    trial.snr = snr;
    trial.true_delay = delay;
    trial.estimated_lag = lag;
    trial.estimated_velocity = v_hat;
    trial.peak_value = std::abs(ac.value[lag - ac.first_lag]);
    return trial;
}

McResult monte_carlo_mse(std::size_t sub_length, double sample_period, double wavelength,
                         double velocity, double snr, int trials, std::uint64_t seed,
                         const TrialOptions& opt) {
    if (trials < 1) throw std::invalid_argument("monte_carlo_mse: trials must be >= 1");
    double sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_stream_rng(seed, static_cast<std::uint64_t>(t));
        const RadarTrial trial =
            run_trial(sub_length, sample_period, wavelength, velocity, snr, rng, opt);
        const double err = trial.estimated_velocity - trial.true_velocity;
        sum_sq += err * err;
    }
    McResult result;
    result.mse = sum_sq / static_cast<double>(trials);
    result.crb_reference = crb_for_window(sub_length, sample_period, wavelength, snr);
    result.trials = trials;
    return result;
}

}  // namespace uavisac::radar
