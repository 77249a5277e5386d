#include "uavisac/model.hpp"

#include <cmath>
#include <limits>

namespace uavisac {

namespace {

const char* require(bool ok, const char* field) { return ok ? nullptr : field; }

}  // namespace

void Scenario::validate() const {
    const char* bad = nullptr;
    auto check = [&](bool ok, const char* field) {
        if (!bad) bad = require(ok, field);
    };
    auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };

    check(pos(task_bits), "task_bits");
    check(pos(cycles_per_bit), "cycles_per_bit");
    check(pos(uav_capacity), "uav_capacity");
    check(pos(ue_capacity), "ue_capacity");
    check(pos(tx_power), "tx_power");
    check(pos(bandwidth), "bandwidth");
    check(pos(noise_psd), "noise_psd");
    check(pos(ref_channel_gain), "ref_channel_gain");
    check(pos(path_loss_exponent), "path_loss_exponent");
    check(pos(rcs), "rcs");
    check(pos(wavelength), "wavelength");
    check(pos(uav_altitude), "uav_altitude");
    check(std::isfinite(ue_x), "ue_position");
    check(std::isfinite(ue_y), "ue_position");
    check(std::isfinite(target_x), "target_position");
    check(std::isfinite(target_y), "target_position");
    check(std::isfinite(area.x_min) && std::isfinite(area.x_max) && area.x_min < area.x_max,
          "area_bounds");
    check(std::isfinite(area.y_min) && std::isfinite(area.y_max) && area.y_min < area.y_max,
          "area_bounds");
    check(area.contains(ue_x, ue_y), "ue_position");
    check(area.contains(target_x, target_y), "target_position");
    check(nonneg(price_bandwidth), "price_bandwidth");
    check(nonneg(price_tx_energy), "price_tx_energy");
    check(nonneg(price_cycle), "price_cycle");
    check(nonneg(price_ue_energy), "price_ue_energy");
    check(nonneg(energy_per_cycle), "energy_per_cycle");
    check(beta_max > 0.0 && beta_max < 1.0, "beta_max");
    check(budget > 0.0 && !std::isnan(budget), "budget");  // +inf allowed
    check(nonneg(weight_latency), "weight_latency");
    check(nonneg(weight_crb), "weight_crb");
    check(weight_latency > 0.0 || weight_crb > 0.0, "weight_latency/weight_crb");

    if (bad) throw std::invalid_argument(std::string("invalid scenario: ") + bad);
}

namespace model {

namespace {

// Exact square for the n = 2 free-space case; pow() otherwise.
double pow_loss(double d, double n) {
    if (n == 2.0) return d * d;
    return std::pow(d, n);
}

}  // namespace

double distance_to_ue(const Scenario& sc, const Decision& d) {
    const double dx = d.x - sc.ue_x;
    const double dy = d.y - sc.ue_y;
    return std::sqrt(dx * dx + dy * dy + sc.uav_altitude * sc.uav_altitude);
}

double distance_to_target(const Scenario& sc, const Decision& d) {
    const double dx = d.x - sc.target_x;
    const double dy = d.y - sc.target_y;
    return std::sqrt(dx * dx + dy * dy + sc.uav_altitude * sc.uav_altitude);
}

double channel_gain_ue(const Scenario& sc, const Decision& d) {
    return sc.ref_channel_gain / pow_loss(distance_to_ue(sc, d), sc.path_loss_exponent);
}

double channel_gain_radar(const Scenario& sc, const Decision& d) {
    const double dist = distance_to_target(sc, d);
    const double d2 = dist * dist;
    const double d4 = d2 * d2;
    return sc.ref_channel_gain * sc.rcs / (4.0 * M_PI * d4);
}

double transmission_rate(const Scenario& sc, const Decision& d) {
    const double snr = sc.tx_power * channel_gain_ue(sc, d) / (sc.bandwidth * sc.noise_psd);
    return sc.bandwidth * std::log2(1.0 + snr);
}

LatencyChain latency_chain(const Scenario& sc, const Decision& d) {
    LatencyChain lc;
    const double ws = sc.cycles_per_bit * sc.task_bits;
    const double off_bits = sc.task_bits * (1.0 - d.beta);
    lc.t_local = ws * d.beta / sc.uav_capacity;
    // The offload sequence carries a duplicate sub-sequence, hence the 2x.
    lc.t_com = 2.0 * off_bits / transmission_rate(sc, d);
    lc.t_comp_ue = sc.cycles_per_bit * off_bits / sc.ue_capacity;
    lc.t_off = lc.t_com + lc.t_comp_ue;
    lc.t_total = std::max(lc.t_local, lc.t_off);
    return lc;
}

CostChain cost_chain(const Scenario& sc, const Decision& d) {
    CostChain cc;
    const double off_bits = sc.task_bits * (1.0 - d.beta);
    const double off_cycles = sc.cycles_per_bit * off_bits;
    const double t_com = 2.0 * off_bits / transmission_rate(sc, d);
    cc.c_com = sc.price_bandwidth * 2.0 * off_bits + sc.price_tx_energy * sc.tx_power * t_com;
    cc.c_comp = off_cycles * sc.price_cycle +
                sc.price_ue_energy * off_cycles * sc.energy_per_cycle;
    cc.c_total = cc.c_com + cc.c_comp;
    return cc;
}

double radar_snr(const Scenario& sc, const Decision& d) {
    return sc.tx_power * channel_gain_radar(sc, d) / (sc.bandwidth * sc.noise_psd);
}

double crb_velocity(const Scenario& sc, const Decision& d) {
    if (d.beta >= 1.0) throw std::domain_error("crb_velocity: beta >= 1");
    const double gamma = radar_snr(sc, d);
    if (gamma <= 0.0) throw std::domain_error("crb_velocity: radar SNR is zero");
    const double one_minus_beta = 1.0 - d.beta;
    const double omb3 = one_minus_beta * one_minus_beta * one_minus_beta;
    const double s3 = sc.task_bits * sc.task_bits * sc.task_bits;
    const double ts = sc.sample_period();
    const double lambda2 = sc.wavelength * sc.wavelength;
    return 6.0 * lambda2 / (16.0 * M_PI * M_PI * omb3 * s3 * ts * ts * gamma);
}

Evaluation evaluate(const Scenario& sc, const Decision& d) {
    Evaluation ev;
    ev.d_ue = distance_to_ue(sc, d);
    ev.d_tar = distance_to_target(sc, d);
    ev.h_ue = channel_gain_ue(sc, d);
    ev.h_rad = channel_gain_radar(sc, d);
    ev.rate = transmission_rate(sc, d);
    ev.latency = latency_chain(sc, d);
    ev.cost = cost_chain(sc, d);
    ev.gamma_rad = radar_snr(sc, d);
    ev.crb = crb_velocity(sc, d);
    ev.objective = sc.weight_latency * ev.latency.t_total + sc.weight_crb * ev.crb;
    ev.feasible = ev.cost.c_total <= sc.budget;
    return ev;
}

double penalized_objective(const Evaluation& ev, const Scenario& sc, double penalty_mu) {
    const double violation = std::max(0.0, ev.cost.c_total - sc.budget);
    if (violation == 0.0) return ev.objective;  // exact on the feasible set
    return ev.objective + penalty_mu * violation / sc.budget;
}

double penalized_objective(const Scenario& sc, const Decision& d, double penalty_mu) {
    return penalized_objective(evaluate(sc, d), sc, penalty_mu);
}

double minimum_cost(const Scenario& sc) {
    Decision cheapest{sc.beta_max, sc.ue_x, sc.ue_y};
    return cost_chain(sc, cheapest).c_total;
}

}  // namespace model
}  // namespace uavisac
