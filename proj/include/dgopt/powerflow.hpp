#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "dgopt/netmodel.hpp"

namespace dgopt {

// Per-bus power injections in kW/kvar, positive = generation. The slack entry
// is ignored by the solver (the slack absorbs the mismatch).
struct InjectionSet {
    std::vector<double> p_kw;
    std::vector<double> q_kvar;

    InjectionSet() = default;
    explicit InjectionSet(int n_bus)
        : p_kw(static_cast<std::size_t>(n_bus), 0.0),
          q_kvar(static_cast<std::size_t>(n_bus), 0.0) {}

    void add(int bus_id, double p, double q) {
        if (bus_id < 1 || bus_id > static_cast<int>(p_kw.size()))
            throw value_error("injection bus id out of range");
        p_kw[static_cast<std::size_t>(bus_id - 1)] += p;
        q_kvar[static_cast<std::size_t>(bus_id - 1)] += q;
    }
};

// Precomputed sweep order: branches breadth-first from the slack, oriented
// root-outward, with 0-based bus indices and per-unit impedances.
struct SweepPlan {
    struct Hop {
        int branch_index; // position in NetworkModel::branches
        int from;         // 0-based, nearer the slack
        int to;
        std::complex<double> z_pu;
        double r_pu;
    };
    std::vector<Hop> hops;
};

inline SweepPlan make_sweep_plan(const NetworkModel& net) {
    const auto ordered = validate_radial(net);
    // map branch id -> original index (ids are unique but not necessarily 1..m)
    SweepPlan plan;
    plan.hops.reserve(ordered.size());
    const double z_base = net.z_base_ohm();
    for (const auto& br : ordered) {
        int orig = -1;
        for (int i = 0; i < net.n_branch(); ++i)
            if (net.branches[static_cast<std::size_t>(i)].id == br.id) {
                orig = i;
                break;
            }
        SweepPlan::Hop h;
        h.branch_index = orig;
        h.from = br.from_bus - 1;
        h.to = br.to_bus - 1;
        h.z_pu = {br.r_ohm / z_base, br.x_ohm / z_base};
        h.r_pu = br.r_ohm / z_base;
        plan.hops.push_back(h);
    }
    return plan;
}

struct PowerFlowSolution {
    std::vector<double> v_pu;        // per bus
    std::vector<double> v_angle_rad; // per bus
    std::vector<double> i_amp;       // per branch, NetworkModel::branches order
    std::vector<double> loss_kw;     // per branch
    double slack_p_kw = 0.0;
    double slack_q_kvar = 0.0;
    bool converged = false;
    int iterations = 0;

    double total_loss_kw() const {
        double s = 0.0;
        for (double l : loss_kw) s += l;
        return s;
    }
    double min_voltage_pu(int* bus_id = nullptr) const {
        double best = v_pu.empty() ? 0.0 : v_pu[0];
        int at = 1;
        for (std::size_t i = 1; i < v_pu.size(); ++i)
            if (v_pu[i] < best) {
                best = v_pu[i];
                at = static_cast<int>(i) + 1;
            }
        if (bus_id) *bus_id = at;
        return best;
    }
};

struct PowerFlowSettings {
    double tol_pu = 1e-8;       // max |dV| between sweeps
    int max_iterations = 100;
    double collapse_pu = 0.5;   // below this the solve is abandoned as diverged
};

// Backward/forward sweep with constant-power loads. Non-convergence and
// voltage collapse are reported through the converged flag, never thrown.
inline PowerFlowSolution solve_hour(const NetworkModel& net, const SweepPlan& plan,
                                    const InjectionSet& inj,
                                    const PowerFlowSettings& settings = {}) {
    const int n = net.n_bus();
    const std::size_t nn = static_cast<std::size_t>(n);
    if (inj.p_kw.size() != nn || inj.q_kvar.size() != nn)
        throw value_error("injection set size does not match network");

    const double s_base_kw = net.s_base_kw();
    std::vector<std::complex<double>> s_net(nn); // net consumption, pu
    for (std::size_t i = 0; i < nn; ++i) {
        const double p = net.buses[i].p_load_kw - inj.p_kw[i];
        const double q = net.buses[i].q_load_kvar - inj.q_kvar[i];
        if (!std::isfinite(p) || !std::isfinite(q)) throw value_error("non-finite injection");
        s_net[i] = {p / s_base_kw, q / s_base_kw};
    }
    s_net[0] = 0.0; // slack absorbs the mismatch

    std::vector<std::complex<double>> v(nn, std::complex<double>(net.v_nom, 0.0));
    std::vector<std::complex<double>> i_acc(nn);
    std::vector<std::complex<double>> i_br(plan.hops.size());

    PowerFlowSolution sol;
    sol.v_pu.assign(nn, net.v_nom);
    sol.v_angle_rad.assign(nn, 0.0);
    sol.i_amp.assign(static_cast<std::size_t>(net.n_branch()), 0.0);
    sol.loss_kw.assign(static_cast<std::size_t>(net.n_branch()), 0.0);

    bool collapsed = false;
    int iter = 0;
    for (; iter < settings.max_iterations; ++iter) {
        // backward: accumulate load currents from the leaves toward the root
        for (std::size_t i = 0; i < nn; ++i) i_acc[i] = std::conj(s_net[i] / v[i]);
        for (std::size_t h = plan.hops.size(); h-- > 0;) {
            const auto& hop = plan.hops[h];
            i_br[h] = i_acc[static_cast<std::size_t>(hop.to)];
            i_acc[static_cast<std::size_t>(hop.from)] += i_br[h];
        }
        // forward: propagate voltage drops from the root
        double max_dv = 0.0;
        for (std::size_t h = 0; h < plan.hops.size(); ++h) {
            const auto& hop = plan.hops[h];
            const std::complex<double> vn =
                v[static_cast<std::size_t>(hop.from)] - hop.z_pu * i_br[h];
            max_dv = std::max(max_dv, std::abs(vn - v[static_cast<std::size_t>(hop.to)]));
            v[static_cast<std::size_t>(hop.to)] = vn;
            if (std::abs(vn) < settings.collapse_pu) collapsed = true;
        }
        if (collapsed) break;
        if (max_dv < settings.tol_pu) {
            sol.converged = true;
            ++iter;
            break;
        }
    }
    sol.iterations = iter;
    if (collapsed) sol.converged = false;

    const double i_base = net.i_base_a();
    std::complex<double> s_slack = 0.0;
    for (std::size_t h = 0; h < plan.hops.size(); ++h) {
        const auto& hop = plan.hops[h];
        const double i_mag = std::abs(i_br[h]);
        sol.i_amp[static_cast<std::size_t>(hop.branch_index)] = i_mag * i_base;
        sol.loss_kw[static_cast<std::size_t>(hop.branch_index)] =
            i_mag * i_mag * hop.r_pu * s_base_kw;
        if (hop.from == 0) s_slack += v[0] * std::conj(i_br[h]);
    }
    for (std::size_t i = 0; i < nn; ++i) {
        sol.v_pu[i] = std::abs(v[i]);
        sol.v_angle_rad[i] = std::arg(v[i]);
    }
    sol.slack_p_kw = s_slack.real() * s_base_kw;
    sol.slack_q_kvar = s_slack.imag() * s_base_kw;
    return sol;
}

inline PowerFlowSolution solve_hour(const NetworkModel& net, const InjectionSet& inj,
                                    const PowerFlowSettings& settings = {}) {
    return solve_hour(net, make_sweep_plan(net), inj, settings);
}

struct HorizonSolution {
    std::vector<PowerFlowSolution> hours; // 24 entries, hour 1 first
    double total_loss_kwh = 0.0;
    double vdev_puh = 0.0;

    bool all_converged() const {
        for (const auto& h : hours)
            if (!h.converged) return false;
        return true;
    }
    int unconverged_hours() const {
        int c = 0;
        for (const auto& h : hours)
            if (!h.converged) ++c;
        return c;
    }
};

// Eq-style totals: energy loss sums R*I^2 over branches and hours (1 h slots,
// so kW readings accumulate as kWh); the deviation index sums |V - v_nom|.
inline double loss_index(const HorizonSolution& horizon) {
    double kwh = 0.0;
    for (const auto& h : horizon.hours) kwh += h.total_loss_kw();
    return kwh;
}

inline double voltage_deviation_index(const HorizonSolution& horizon, double v_nom) {
    double dev = 0.0;
    for (const auto& h : horizon.hours)
        for (double v : h.v_pu) dev += std::abs(v - v_nom);
    return dev;
}

inline HorizonSolution solve_horizon(const NetworkModel& net, const SweepPlan& plan,
                                     const HourlySeries& load_profile,
                                     const std::vector<InjectionSet>& hourly_injections,
                                     const PowerFlowSettings& settings = {}) {
    if (hourly_injections.size() != 24)
        throw value_error("solve_horizon needs one injection set per hour (24)");
    HorizonSolution horizon;
    horizon.hours.reserve(24);
    for (int hour = 1; hour <= 24; ++hour) {
        const NetworkModel scaled = scale_loads(net, load_profile.at_hour(hour));
        horizon.hours.push_back(
            solve_hour(scaled, plan, hourly_injections[static_cast<std::size_t>(hour - 1)], settings));
    }
    horizon.total_loss_kwh = loss_index(horizon);
    horizon.vdev_puh = voltage_deviation_index(horizon, net.v_nom);
    return horizon;
}

inline HorizonSolution solve_horizon(const NetworkModel& net, const HourlySeries& load_profile,
                                     const std::vector<InjectionSet>& hourly_injections,
                                     const PowerFlowSettings& settings = {}) {
    return solve_horizon(net, make_sweep_plan(net), load_profile, hourly_injections, settings);
}

} // namespace dgopt
