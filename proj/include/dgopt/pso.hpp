#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "dgopt/optim.hpp"
#include "dgopt/rng.hpp"

namespace dgopt {

enum class InertiaMode { LinearDecreasing, Constant };

struct PsoParams {
    int population = 100;
    int iterations = 35;
    double c1 = 2.0;
    double c2 = 2.0;
    double w_min = 0.4;
    double w_max = 0.9;
    double v_clamp_fraction = 0.2; // max |velocity| as fraction of each range
    InertiaMode inertia_mode = InertiaMode::LinearDecreasing;
    double omega_const = 0.78; // used when inertia_mode == Constant
    std::uint64_t seed = 1;

    void check() const {
        if (population < 1) throw value_error("PSO population must be >= 1");
        if (iterations < 1) throw value_error("PSO iterations must be >= 1");
        if (!(c1 >= 0.0 && c2 >= 0.0)) throw value_error("c1 and c2 must be >= 0");
        if (!(0.0 < w_min && w_min <= w_max)) throw value_error("need 0 < w_min <= w_max");
        if (!(v_clamp_fraction > 0.0 && v_clamp_fraction <= 1.0))
            throw value_error("v_clamp_fraction must be in (0,1]");
    }
};

inline double inertia(int t, const PsoParams& params) {
    if (t < 1 || t > params.iterations) throw value_error("iteration out of range");
    if (params.inertia_mode == InertiaMode::Constant) return params.omega_const;
    if (params.iterations == 1) return params.w_max;
    return params.w_max -
           (params.w_max - params.w_min) * static_cast<double>(t - 1) /
               static_cast<double>(params.iterations - 1);
}

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_objective = 0.0;
};

// Global-best PSO with linearly decreasing inertia, velocity clamping, and
// position clamping to the search box. Particles start with zero velocity.
// Synchronous update: every velocity in an iteration uses the previous
// iteration's gbest, so evaluations could run concurrently without changing
// the result; pbest/gbest are refreshed in a single-writer pass afterward.
inline ConvergenceTrace run_pso(const PsoParams& params, const Evaluator& evaluate,
                                const Bounds& bounds) {
    params.check();
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(params.seed);
    const std::size_t dims = bounds.dims();
    ConvergenceTrace trace;

    std::vector<Particle> swarm(static_cast<std::size_t>(params.population));
    std::vector<double> gbest_position;
    double gbest = 0.0;
    for (std::size_t i = 0; i < swarm.size(); ++i) {
        auto& p = swarm[i];
        p.position.resize(dims);
        p.velocity.assign(dims, 0.0);
        for (std::size_t d = 0; d < dims; ++d)
            p.position[d] = rng.uniform(bounds.lower[d], bounds.upper[d]);
        p.best_position = p.position;
        p.best_objective = evaluate(p.position);
        ++trace.evaluations;
        if (i == 0 || p.best_objective < gbest) {
            gbest = p.best_objective;
            gbest_position = p.position;
        }
    }

    std::vector<double> v_max(dims);
    for (std::size_t d = 0; d < dims; ++d) v_max[d] = params.v_clamp_fraction * bounds.range(d);

    std::vector<double> objective(swarm.size());
    for (int t = 1; t <= params.iterations; ++t) {
        const double w = inertia(t, params);
        for (auto& p : swarm) {
            for (std::size_t d = 0; d < dims; ++d) {
                const double r1 = rng.uniform01();
                const double r2 = rng.uniform01();
                double v = w * p.velocity[d] +
                           params.c1 * r1 * (p.best_position[d] - p.position[d]) +
                           params.c2 * r2 * (gbest_position[d] - p.position[d]);
                if (v > v_max[d]) v = v_max[d];
                if (v < -v_max[d]) v = -v_max[d];
                p.velocity[d] = v;
                p.position[d] += v;
            }
            bounds.clamp(p.position);
        }
        for (std::size_t i = 0; i < swarm.size(); ++i) {
            objective[i] = evaluate(swarm[i].position);
            ++trace.evaluations;
        }
        for (std::size_t i = 0; i < swarm.size(); ++i) {
            auto& p = swarm[i];
            if (objective[i] < p.best_objective) {
                p.best_objective = objective[i];
                p.best_position = p.position;
            }
            if (objective[i] < gbest) {
                gbest = objective[i];
                gbest_position = p.position;
            }
        }
        trace.best_objective.push_back(gbest);
        trace.evaluations_at.push_back(trace.evaluations);
    }

    trace.best_position = std::move(gbest_position);
    trace.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return trace;
}

} // namespace dgopt
