#pragma once

#include "uavisac/scenario.hpp"

namespace uavisac::model {

/// Latency chain for one decision, seconds.
struct LatencyChain {
    double t_local = 0.0;    // computation on the UAV
    double t_com = 0.0;      // transmission of the duplicated offload sequence
    double t_comp_ue = 0.0;  // computation at the UE
    double t_off = 0.0;      // t_com + t_comp_ue
    double t_total = 0.0;    // max(t_local, t_off)
};

/// Offloading cost for one decision, money.
struct CostChain {
    double c_com = 0.0;
    double c_comp = 0.0;
    double c_total = 0.0;
};

/// Every derived metric for one decision.
struct Evaluation {
    double d_ue = 0.0;       // m
    double d_tar = 0.0;      // m
    double h_ue = 0.0;
    double h_rad = 0.0;
    double rate = 0.0;       // bit/s
    LatencyChain latency;
    CostChain cost;
    double gamma_rad = 0.0;  // radar SNR
    double crb = 0.0;        // (m/s)^2
    double objective = 0.0;  // z = w1*t_total + w2*crb
    bool feasible = false;   // c_total <= budget
};

double distance_to_ue(const Scenario& sc, const Decision& d);
double distance_to_target(const Scenario& sc, const Decision& d);

/// LoS communication gain h0 / d_ue^n; exponent n = 2 is the free-space law.
double channel_gain_ue(const Scenario& sc, const Decision& d);

/// Two-way radar gain h0 * rcs / (4*pi*d_tar^4).
double channel_gain_radar(const Scenario& sc, const Decision& d);

/// Shannon rate of the UAV->UE link, bit/s.
double transmission_rate(const Scenario& sc, const Decision& d);

LatencyChain latency_chain(const Scenario& sc, const Decision& d);
CostChain cost_chain(const Scenario& sc, const Decision& d);

/// SNR of the target echo at the UAV receiver.
double radar_snr(const Scenario& sc, const Decision& d);

/// Lower bound on the velocity-estimation MSE, (m/s)^2.
/// Throws std::domain_error when beta >= 1 or the radar SNR vanishes.
double crb_velocity(const Scenario& sc, const Decision& d);

/// Full evaluation; pure, identical inputs give bit-identical outputs.
Evaluation evaluate(const Scenario& sc, const Decision& d);

/// Objective plus a scale-free budget-violation penalty:
///   z + mu * max(0, c_total - budget)/budget.
/// Equals z exactly for feasible decisions.
double penalized_objective(const Scenario& sc, const Decision& d, double penalty_mu);
double penalized_objective(const Evaluation& ev, const Scenario& sc, double penalty_mu);

/// Cheapest attainable cost: full offload fraction at beta_max, UAV over
/// the UE. Used as the feasibility witness before any sampling.
double minimum_cost(const Scenario& sc);

}  // namespace uavisac::model
