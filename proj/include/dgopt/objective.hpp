#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "dgopt/dgmodel.hpp"
#include "dgopt/netmodel.hpp"
#include "dgopt/powerflow.hpp"

namespace dgopt {

// Decision vector layout: [loc_PV, size_PV, loc_WT, size_WT, loc_FC, size_FC].
constexpr int kPlacementDims = 6;

struct DgBounds {
    double min_kw = 0.0;
    double max_kw = 2500.0;
};

struct Placement {
    std::array<DgUnit, 3> units; // PV, WT, FC in that order

    std::vector<DgUnit> unit_list() const { return {units[0], units[1], units[2]}; }

    std::array<double, kPlacementDims> encode() const {
        return {static_cast<double>(units[0].location), units[0].rated_kw,
                static_cast<double>(units[1].location), units[1].rated_kw,
                static_cast<double>(units[2].location), units[2].rated_kw};
    }
};

// Locations round to the nearest bus and clamp to {2..n_bus}; sizes clamp to
// the configured capacity window. Clamping is total, so decode never fails.
inline Placement decode(const std::vector<double>& vec, int n_bus, const DgBounds& bounds) {
    if (vec.size() != kPlacementDims) throw value_error("placement vector needs 6 components");
    for (double v : vec)
        if (!std::isfinite(v)) throw value_error("placement vector must be finite");
    Placement p;
    const DgKind kinds[3] = {DgKind::PV, DgKind::WT, DgKind::FC};
    for (int k = 0; k < 3; ++k) {
        const double loc_raw = vec[static_cast<std::size_t>(2 * k)];
        const double size_raw = vec[static_cast<std::size_t>(2 * k + 1)];
        long loc = std::lround(loc_raw);
        if (loc < 2) loc = 2;
        if (loc > n_bus) loc = n_bus;
        double size = size_raw;
        if (size < bounds.min_kw) size = bounds.min_kw;
        if (size > bounds.max_kw) size = bounds.max_kw;
        p.units[static_cast<std::size_t>(k)] = {kinds[k], static_cast<int>(loc), size};
    }
    return p;
}

struct ObjectiveWeights {
    double w1 = 0.5;       // loss weight
    double w2 = 0.5;       // voltage-deviation weight
    double loss_ref = 1.0; // kWh
    double vdev_ref = 1.0; // pu*h

    void check() const {
        if (!(w1 > 0.0 && w2 > 0.0)) throw value_error("objective weights must be > 0");
        if (!(loss_ref > 0.0 && vdev_ref > 0.0))
            throw value_error("objective reference values must be > 0");
    }
};

struct PenaltySettings {
    double c_v = 100.0;  // squared per-bus-hour voltage band violations, pu
    double c_i = 100.0;  // squared per-branch-hour ampacity violations, normalized
    double c_f = 1000.0; // per non-converged hour
};

// Everything evaluate() needs, immutable once built; safe to share across
// concurrent evaluations.
struct ScenarioContext {
    NetworkModel net;
    SweepPlan plan;
    HourlySeries load = HourlySeries::flat(1.0, ProfileKind::LoadMultiplier);
    HourlySeries irradiance = HourlySeries::flat(0.0, ProfileKind::Irradiance);
    HourlySeries wind = HourlySeries::flat(0.0, ProfileKind::WindSpeed);
    DgSettings dg{};
    ObjectiveWeights weights{};
    PenaltySettings penalties{};
    DgBounds dg_bounds{};
    PowerFlowSettings pf{};

    static ScenarioContext make(NetworkModel network) {
        ScenarioContext ctx;
        ctx.plan = make_sweep_plan(network);
        ctx.net = std::move(network);
        return ctx;
    }
};

struct Evaluation {
    double objective = 0.0; // w1*loss/loss_ref + w2*vdev/vdev_ref + penalty
    double loss_kwh = 0.0;
    double vdev_puh = 0.0;
    double penalty = 0.0;
    bool feasible = false;
    Placement placement{};
    HorizonSolution horizon;
};

inline double constraint_penalty(const HorizonSolution& horizon, const NetworkModel& net,
                                 const PenaltySettings& p) {
    double v_sq = 0.0;
    double i_sq = 0.0;
    for (const auto& hour : horizon.hours) {
        for (double v : hour.v_pu) {
            const double viol = std::max({0.0, net.v_min - v, v - net.v_max});
            v_sq += viol * viol;
        }
        for (std::size_t b = 0; b < hour.i_amp.size(); ++b) {
            const double cap = net.branches[b].ampacity_a;
            if (!std::isfinite(cap)) continue;
            const double viol = std::max(0.0, (hour.i_amp[b] - cap) / cap);
            i_sq += viol * viol;
        }
    }
    return p.c_v * v_sq + p.c_i * i_sq + p.c_f * horizon.unconverged_hours();
}

inline Evaluation evaluate(const std::vector<double>& vec, const ScenarioContext& ctx) {
    Evaluation ev;
    ev.placement = decode(vec, ctx.net.n_bus(), ctx.dg_bounds);
    const auto injections =
        hourly_injections(ev.placement.unit_list(), ctx.irradiance, ctx.wind, ctx.dg, ctx.net.n_bus());
    ev.horizon = solve_horizon(ctx.net, ctx.plan, ctx.load, injections, ctx.pf);
    ev.loss_kwh = loss_index(ev.horizon);
    ev.vdev_puh = voltage_deviation_index(ev.horizon, ctx.net.v_nom);
    ev.penalty = constraint_penalty(ev.horizon, ctx.net, ctx.penalties);
    ctx.weights.check();
    ev.objective = ctx.weights.w1 * (ev.loss_kwh / ctx.weights.loss_ref) +
                   ctx.weights.w2 * (ev.vdev_puh / ctx.weights.vdev_ref) + ev.penalty;
    ev.feasible = ev.penalty == 0.0 && ev.horizon.all_converged();
    return ev;
}

// No-DG base case for the scenario's load model. Sets the references so each
// normalized term contributes equally (base objective = w1 + w2 = 1).
inline ObjectiveWeights calibrate_weights(const NetworkModel& net, const SweepPlan& plan,
                                          const HourlySeries& load,
                                          const PowerFlowSettings& pf = {}) {
    const std::vector<InjectionSet> none(24, InjectionSet(net.n_bus()));
    const HorizonSolution base = solve_horizon(net, plan, load, none, pf);
    if (!base.all_converged()) throw value_error("base case power flow did not converge");
    ObjectiveWeights w;
    w.loss_ref = loss_index(base);
    w.vdev_ref = voltage_deviation_index(base, net.v_nom);
    if (!(w.loss_ref > 0.0) || !(w.vdev_ref > 0.0))
        throw value_error("degenerate base case: zero loss or zero voltage deviation");
    return w;
}

inline ObjectiveWeights calibrate_weights(const NetworkModel& net, const HourlySeries& load,
                                          const PowerFlowSettings& pf = {}) {
    return calibrate_weights(net, make_sweep_plan(net), load, pf);
}

} // namespace dgopt
