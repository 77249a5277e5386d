#include <doctest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"
#include "uavisac/model.hpp"
#include "uavisac/rng.hpp"

using namespace uavisac;
using namespace uavisac::model;
using testing::reference_scenario;

namespace {

// Expected values frozen from tests/derive_expected.py (50-digit direct
// evaluation of the closed forms).
constexpr double kHUeOverUe = 2.77777777777777778e-7;
constexpr double kRateOverUe = 104442096.742081995;
constexpr double kHRadOverTarget = 6.14023700200213487e-13;
constexpr double kGammaOverTarget = 0.00307748678540347;
constexpr double kCrbBeta0OverTarget = 8.88930529716137524e-9;
constexpr double kTLocalHalf = 4.16666666666666667;
constexpr double kTComHalfOverUe = 0.0478734165242528218;
constexpr double kTOffHalfOverUe = 5.04787341652425282;
constexpr double kCComBeta0OverUe = 500000000.047988313;
constexpr double kCCompBeta0 = 500000000.05;
constexpr double kCTotalBeta0OverUe = 1000000000.09798831;
constexpr double kGammaOverUe = 1.51787206619279312e-6;
constexpr double kCrbHalfOverUe = 0.000144184586792212427;
constexpr double kZHalfOverUe = 5.05364079999594132;
constexpr double kZBeta0OverTarget = 10.2001463844630729;

bool close(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TEST_CASE("scenario validation names the offending field") {
    Scenario sc = reference_scenario();
    CHECK_NOTHROW(sc.validate());

    sc.bandwidth = -1.0;
    CHECK_THROWS_WITH_AS(sc.validate(), "invalid scenario: bandwidth", std::invalid_argument);

    sc = reference_scenario();
    sc.beta_max = 1.0;  // the CRB diverges at beta = 1
    CHECK_THROWS_WITH_AS(sc.validate(), "invalid scenario: beta_max", std::invalid_argument);

    sc = reference_scenario();
    sc.ue_x = 5000.0;  // outside the area rectangle
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = reference_scenario();
    sc.budget = std::numeric_limits<double>::infinity();  // allowed
    CHECK_NOTHROW(sc.validate());
}

TEST_CASE("channel gain to the UE") {
    const Scenario sc = reference_scenario();
    const Decision over_ue{0.0, 100.0, 120.0};
    CHECK(distance_to_ue(sc, over_ue) == 60.0);
    CHECK(close(channel_gain_ue(sc, over_ue), kHUeOverUe, 1e-9));

    // Reference-distance identity: h0 = 1 directly overhead at 1 m.
    Scenario unit = sc;
    unit.ref_channel_gain = 1.0;
    unit.uav_altitude = 1.0;
    CHECK(channel_gain_ue(unit, over_ue) == 1.0);

    // Square law: doubling the distance divides the gain by exactly 4.
    Scenario near = sc;
    near.uav_altitude = 60.0;
    Scenario far = sc;
    far.uav_altitude = 120.0;
    CHECK(channel_gain_ue(near, over_ue) / 4.0 == channel_gain_ue(far, over_ue));
}

TEST_CASE("radar channel gain") {
    const Scenario sc = reference_scenario();
    const Decision over_target{0.0, 460.0, 290.0};
    CHECK(distance_to_target(sc, over_target) == 60.0);
    CHECK(close(channel_gain_radar(sc, over_target), kHRadOverTarget, 1e-9));

    // Gain is proportional to the radar cross section; it vanishes with it.
    Scenario small = sc;
    small.rcs = 1e-12;
    CHECK(close(channel_gain_radar(small, over_target), kHRadOverTarget * 1e-11, 1e-9));

    // d^4 law: doubling the distance divides the gain by exactly 16.
    Scenario far = sc;
    far.uav_altitude = 120.0;
    CHECK(channel_gain_radar(sc, over_target) / 16.0 == channel_gain_radar(far, over_target));
}

TEST_CASE("transmission rate") {
    const Scenario sc = reference_scenario();
    const Decision over_ue{0.0, 100.0, 120.0};
    CHECK(close(transmission_rate(sc, over_ue), kRateOverUe, 1e-9));

    // Zero received power collapses the rate to zero.
    Scenario dark = sc;
    dark.tx_power = 0.0;
    CHECK(transmission_rate(dark, over_ue) == 0.0);

    // Unit SNR gives exactly one bit per channel use: r = B.
    Scenario unit = sc;
    unit.tx_power = 1.0;
    unit.uav_altitude = 1.0;
    unit.ref_channel_gain = unit.bandwidth * unit.noise_psd;  // h_ue == B*N0
    CHECK(transmission_rate(unit, over_ue) == unit.bandwidth);
}

TEST_CASE("latency chain at the reference point") {
    const Scenario sc = reference_scenario();
    const LatencyChain lc = latency_chain(sc, {0.5, 100.0, 120.0});
    CHECK(close(lc.t_local, kTLocalHalf, 1e-9));
    CHECK(close(lc.t_com, kTComHalfOverUe, 1e-9));
    CHECK(lc.t_comp_ue == 5.0);
    CHECK(close(lc.t_off, kTOffHalfOverUe, 1e-9));
    CHECK(lc.t_total == lc.t_off);  // offload dominates at beta = 0.5

    // Full offload: no local computation at all.
    const LatencyChain full = latency_chain(sc, {0.0, 100.0, 120.0});
    CHECK(full.t_local == 0.0);
    CHECK(full.t_total == full.t_off);

    // An arbitrarily fast UAV leaves only the offload path.
    Scenario fast = sc;
    fast.uav_capacity = 1e30;
    const LatencyChain lim = latency_chain(fast, {0.5, 100.0, 120.0});
    CHECK(lim.t_total == lim.t_off);
}

TEST_CASE("cost chain") {
    const Scenario sc = reference_scenario();
    const CostChain cc = cost_chain(sc, {0.0, 100.0, 120.0});
    CHECK(close(cc.c_com, kCComBeta0OverUe, 1e-9));
    CHECK(close(cc.c_comp, kCCompBeta0, 1e-9));
    CHECK(close(cc.c_total, kCTotalBeta0OverUe, 1e-9));

    // Every term scales by (1 - beta); at beta = 0.9 costs are 10% of beta = 0.
    const CostChain ten = cost_chain(sc, {0.9, 100.0, 120.0});
    CHECK(close(ten.c_com, cc.c_com / 10.0, 1e-12));
    CHECK(close(ten.c_comp, cc.c_comp / 10.0, 1e-12));

    // Free resources cost nothing.
    Scenario free = sc;
    free.price_bandwidth = free.price_tx_energy = 0.0;
    free.price_cycle = free.price_ue_energy = 0.0;
    CHECK(cost_chain(free, {0.3, 400.0, 200.0}).c_total == 0.0);
}

TEST_CASE("radar SNR") {
    const Scenario sc = reference_scenario();
    const Decision over_target{0.0, 460.0, 290.0};
    CHECK(close(radar_snr(sc, over_target), kGammaOverTarget, 1e-9));

    Scenario dark = sc;
    dark.tx_power = 0.0;
    CHECK(radar_snr(dark, over_target) == 0.0);

    // Linear in transmit power.
    Scenario twice = sc;
    twice.tx_power = 2.0 * sc.tx_power;
    CHECK(radar_snr(twice, over_target) == 2.0 * radar_snr(sc, over_target));
}

TEST_CASE("velocity CRB") {
    const Scenario sc = reference_scenario();
    const Decision over_target{0.0, 460.0, 290.0};
    CHECK(close(crb_velocity(sc, over_target), kCrbBeta0OverTarget, 1e-9));

    // Cubic laws in (1 - beta) and s.
    const double base = crb_velocity(sc, {0.0, 460.0, 290.0});
    const double half = crb_velocity(sc, {0.5, 460.0, 290.0});
    CHECK(close(half, base * 8.0, 1e-12));
    Scenario bigger = sc;
    bigger.task_bits = 2.0 * sc.task_bits;
    CHECK(close(crb_velocity(bigger, over_target), base / 8.0, 1e-12));

    // Domain errors: beta at or past 1, or vanishing SNR.
    CHECK_THROWS_AS(crb_velocity(sc, {1.0, 460.0, 290.0}), std::domain_error);
    Scenario dark = sc;
    dark.tx_power = 0.0;
    CHECK_THROWS_AS(crb_velocity(dark, over_target), std::domain_error);
}

TEST_CASE("evaluate populates the full record") {
    const Scenario sc = reference_scenario();
    const Evaluation ev = evaluate(sc, {0.5, 100.0, 120.0});
    CHECK(ev.d_ue == 60.0);
    CHECK(close(ev.d_tar, 402.616442783947909, 1e-12));
    CHECK(close(ev.gamma_rad, kGammaOverUe, 1e-9));
    CHECK(close(ev.crb, kCrbHalfOverUe, 1e-9));
    CHECK(close(ev.objective, kZHalfOverUe, 1e-9));
    CHECK(ev.latency.t_total == std::max(ev.latency.t_local, ev.latency.t_off));
    CHECK(ev.cost.c_total == ev.cost.c_com + ev.cost.c_comp);
    CHECK(ev.feasible);  // 5.0e8 < 8e8

    // Full offload over the target breaks the budget.
    const Evaluation tar = evaluate(sc, {0.0, 460.0, 290.0});
    CHECK(close(tar.objective, kZBeta0OverTarget, 1e-9));
    CHECK_FALSE(tar.feasible);

    // Degenerate weights reduce z to the latency alone.
    Scenario latency_only = sc;
    latency_only.weight_crb = 0.0;
    CHECK(evaluate(latency_only, {0.5, 100.0, 120.0}).objective == ev.latency.t_total);

    // Unlimited budget makes everything feasible.
    Scenario rich = sc;
    rich.budget = std::numeric_limits<double>::infinity();
    CHECK(evaluate(rich, {0.0, 460.0, 290.0}).feasible);
}

TEST_CASE("evaluate is pure") {
    const Scenario sc = reference_scenario();
    const Decision d{0.37, 612.5, 88.25};
    const Evaluation a = evaluate(sc, d);
    const Evaluation b = evaluate(sc, d);
    CHECK(a.d_ue == b.d_ue);
    CHECK(a.d_tar == b.d_tar);
    CHECK(a.h_ue == b.h_ue);
    CHECK(a.h_rad == b.h_rad);
    CHECK(a.rate == b.rate);
    CHECK(a.latency.t_total == b.latency.t_total);
    CHECK(a.cost.c_total == b.cost.c_total);
    CHECK(a.gamma_rad == b.gamma_rad);
    CHECK(a.crb == b.crb);
    CHECK(a.objective == b.objective);
    CHECK(a.feasible == b.feasible);
}

TEST_CASE("penalized objective") {
    const Scenario sc = reference_scenario();
    const Decision feasible{0.5, 100.0, 120.0};
    const Evaluation ev = evaluate(sc, feasible);
    CHECK(penalized_objective(sc, feasible, 1e6) == ev.objective);

    // c_total = 2 * budget adds exactly mu to z.
    Scenario tight = sc;
    tight.budget = evaluate(sc, {0.0, 100.0, 120.0}).cost.c_total / 2.0;
    const double z = evaluate(tight, {0.0, 100.0, 120.0}).objective;
    CHECK(close(penalized_objective(tight, {0.0, 100.0, 120.0}, 1e3), z + 1e3, 1e-12));

    // mu = 0 preserves the plain objective ordering.
    CHECK(penalized_objective(tight, {0.0, 100.0, 120.0}, 0.0) == z);
}

TEST_CASE("monotonicity in beta at a fixed position") {
    const Scenario sc = reference_scenario();
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = uniform_range(rng, 0.0, 1000.0);
        const double y = uniform_range(rng, 0.0, 1000.0);
        double b1 = uniform_range(rng, 0.0, sc.beta_max);
        double b2 = uniform_range(rng, 0.0, sc.beta_max);
        if (b1 == b2) continue;
        if (b1 > b2) std::swap(b1, b2);
        const Evaluation lo = evaluate(sc, {b1, x, y});
        const Evaluation hi = evaluate(sc, {b2, x, y});
        CHECK(lo.latency.t_local < hi.latency.t_local);
        CHECK(lo.latency.t_off > hi.latency.t_off);
        CHECK(lo.crb < hi.crb);
        CHECK(lo.cost.c_total > hi.cost.c_total);
        CHECK(lo.latency.t_total >= lo.latency.t_local);
        CHECK(lo.latency.t_total >= lo.latency.t_off);
    }
}

TEST_CASE("uav capacity plateau") {
    const Scenario sc = reference_scenario();
    const Decision d{0.5, 100.0, 120.0};
    // Past the balance point t_local <= t_off, capacity no longer matters.
    const double t_off = latency_chain(sc, d).t_off;
    const double balance = sc.cycles_per_bit * sc.task_bits * d.beta / t_off;
    Scenario a = sc;
    a.uav_capacity = balance * 1.01;
    Scenario b = sc;
    b.uav_capacity = balance * 7.3;
    CHECK(latency_chain(a, d).t_total == t_off);
    CHECK(latency_chain(b, d).t_total == t_off);
    Scenario slow = sc;
    slow.uav_capacity = balance * 0.9;
    CHECK(latency_chain(slow, d).t_total > t_off);
}

TEST_CASE("scale laws") {
    const Scenario sc = reference_scenario();

    // crb * (1-beta)^3 * s^3 is a position-only constant.
    const double reference = crb_velocity(sc, {0.0, 300.0, 300.0}) *
                             std::pow(sc.task_bits, 3.0);
    for (double beta : {0.1, 0.35, 0.62, 0.9}) {
        for (double scale : {0.3, 1.7, 4.0}) {
            Scenario varied = sc;
            varied.task_bits = sc.task_bits * scale;
            const double crb = crb_velocity(varied, {beta, 300.0, 300.0});
            const double product = crb * std::pow(1.0 - beta, 3.0) *
                                   std::pow(varied.task_bits, 3.0);
            CHECK(close(product, reference, 1e-12));
        }
    }

    // h_rad * d_tar^4 is constant in position.
    Rng rng(7);
    const Decision origin{0.0, sc.target_x, sc.target_y};
    const double href = channel_gain_radar(sc, origin) *
                        std::pow(distance_to_target(sc, origin), 4.0);
    for (int i = 0; i < 100; ++i) {
        const Decision d{0.0, uniform_range(rng, 0.0, 1000.0), uniform_range(rng, 0.0, 1000.0)};
        const double product = channel_gain_radar(sc, d) *
                               std::pow(distance_to_target(sc, d), 4.0);
        CHECK(close(product, href, 1e-12));
    }
}

TEST_CASE("free-space exponent reproduces the quadratic law exactly") {
    Scenario sc = reference_scenario();
    sc.path_loss_exponent = 2.0;
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const Decision d{0.0, uniform_range(rng, 0.0, 1000.0), uniform_range(rng, 0.0, 1000.0)};
        const double dist = distance_to_ue(sc, d);
        CHECK(channel_gain_ue(sc, d) == sc.ref_channel_gain / (dist * dist));
    }
}

TEST_CASE("every evaluation field is finite across the decision box") {
    const Scenario sc = reference_scenario();
    Rng rng(55);
    for (int i = 0; i < 500; ++i) {
        const Decision d{uniform_range(rng, 0.0, sc.beta_max),
                         uniform_range(rng, 0.0, 1000.0), uniform_range(rng, 0.0, 1000.0)};
        const Evaluation ev = evaluate(sc, d);
        for (double v : {ev.d_ue, ev.d_tar, ev.h_ue, ev.h_rad, ev.rate, ev.latency.t_local,
                         ev.latency.t_com, ev.latency.t_comp_ue, ev.latency.t_off,
                         ev.latency.t_total, ev.cost.c_com, ev.cost.c_comp, ev.cost.c_total,
                         ev.gamma_rad, ev.crb, ev.objective})
            CHECK(std::isfinite(v));
    }
}

TEST_CASE("dbm conversion") {
    CHECK(close(dbm_to_watts(27.0), 0.501187233627272285, 1e-12));
    CHECK(dbm_to_watts(30.0) == 1.0);
}
