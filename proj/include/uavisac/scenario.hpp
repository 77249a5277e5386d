#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uavisac {

/// Raised by solvers when no decision can satisfy the cost budget.
struct InfeasibleScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AreaBounds {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool contains(double x, double y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
};

/// All fixed system parameters: task, radio, compute, prices, geometry,
/// objective weights and budget. SI units throughout.
struct Scenario {
    double task_bits = 0.0;           // s, bits
    double cycles_per_bit = 0.0;      // w, CPU cycles/bit
    double uav_capacity = 0.0;        // cycles/s
    double ue_capacity = 0.0;         // cycles/s
    double tx_power = 0.0;            // P, watts
    double bandwidth = 0.0;           // B, Hz
    double noise_psd = 0.0;           // N0, W/Hz
    double ref_channel_gain = 0.0;    // channel power at 1 m
    double path_loss_exponent = 2.0;  // communication link only; radar stays d^4
    double rcs = 0.0;                 // m^2
    double wavelength = 0.0;          // m
    double uav_altitude = 0.0;        // H, m (fixed)
    double ue_x = 0.0, ue_y = 0.0;            // m
    double target_x = 0.0, target_y = 0.0;    // m
    AreaBounds area;
    double price_bandwidth = 0.0;     // money/bit
    double price_tx_energy = 0.0;     // money/joule
    double price_cycle = 0.0;         // money/cycle
    double price_ue_energy = 0.0;     // money/joule
    double energy_per_cycle = 0.0;    // joule/cycle
    double beta_max = 0.0;            // in (0, 1); the CRB diverges at beta = 1
    double budget = 0.0;              // money; +inf allowed
    double weight_latency = 0.0;      // w1
    double weight_crb = 0.0;          // w2

    double sample_period() const { return 1.0 / bandwidth; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// The three optimization variables.
struct Decision {
    double beta = 0.0;  // fraction of the task processed on the UAV
    double x = 0.0;     // m
    double y = 0.0;     // m

    bool within_bounds(const Scenario& sc) const {
        return beta >= 0.0 && beta <= sc.beta_max && sc.area.contains(x, y);
    }

    Decision clamped(const Scenario& sc) const {
        Decision d = *this;
        d.beta = std::clamp(d.beta, 0.0, sc.beta_max);
        d.x = std::clamp(d.x, sc.area.x_min, sc.area.x_max);
        d.y = std::clamp(d.y, sc.area.y_min, sc.area.y_max);
        return d;
    }
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace uavisac
