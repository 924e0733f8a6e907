#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dgopt/optim.hpp"
#include "dgopt/rng.hpp"

namespace dgopt {

struct LsaParams {
    int population = 100;
    int iterations = 35;
    double forking_rate = 0.2;         // gamma: probability of testing the opposite point
    double elimination_fraction = 0.2; // 1 - rho: share of worst channels re-sampled
    int channel_time = 5;              // stagnant iterations before elimination fires
    double mu_floor_fraction = 0.01;   // exponential scale for channels sitting on the best
    double sigma0_fraction = 0.1;      // initial lead-projectile sd as fraction of range
    double tau_fraction = 0.5;         // sd decay constant as fraction of iterations
    std::uint64_t seed = 1;

    void check() const {
        if (population < 2) throw value_error("LSA population must be >= 2");
        if (iterations < 1) throw value_error("LSA iterations must be >= 1");
        if (!(forking_rate >= 0.0 && forking_rate <= 1.0))
            throw value_error("forking_rate must be in [0,1]");
        if (!(elimination_fraction >= 0.0 && elimination_fraction <= 1.0))
            throw value_error("elimination_fraction must be in [0,1]");
        if (channel_time < 1) throw value_error("channel_time must be >= 1");
    }
};

// A step leader: candidate position plus its objective value. Lower energy is
// better; age counts iterations since the channel last improved.
struct Channel {
    std::vector<double> position;
    double energy = 0.0;
    int age = 0;
};

inline std::vector<Channel> init_step_leaders(const LsaParams& params, const Bounds& bounds,
                                              Rng& rng, const Evaluator& evaluate) {
    params.check();
    std::vector<Channel> channels(static_cast<std::size_t>(params.population));
    for (auto& ch : channels) {
        ch.position.resize(bounds.dims());
        for (std::size_t d = 0; d < bounds.dims(); ++d)
            ch.position[d] = rng.uniform(bounds.lower[d], bounds.upper[d]);
        ch.energy = evaluate(ch.position);
        ch.age = 0;
    }
    return channels;
}

// Exponential exploration move: each component steps +-ExpRand(mu_i) with a
// fair-coin sign, clamped to the search box.
inline std::vector<double> space_projectile_step(const Channel& channel,
                                                 const std::vector<double>& mu,
                                                 const Bounds& bounds, Rng& rng) {
    std::vector<double> candidate = channel.position;
    for (std::size_t d = 0; d < candidate.size(); ++d) {
        const double draw = rng.exponential(mu[d]);
        candidate[d] += rng.coin(0.5) ? draw : -draw;
    }
    bounds.clamp(candidate);
    return candidate;
}

// Gaussian exploitation move around the best channel. The sd decays as
// sigma0 * exp(-t/tau) so late iterations refine rather than explore.
inline std::vector<double> lead_projectile_step(const Channel& best,
                                                const std::vector<double>& sigma0, double t,
                                                double tau, const Bounds& bounds, Rng& rng) {
    const double decay = std::exp(-t / tau);
    std::vector<double> candidate = best.position;
    for (std::size_t d = 0; d < candidate.size(); ++d)
        candidate[d] = rng.normal(best.position[d], sigma0[d] * decay);
    bounds.clamp(candidate);
    return candidate;
}

// One LSA iteration. All proposals (and the forking coins) are drawn before
// any evaluation, so the RNG stream does not depend on evaluation order and
// candidate evaluations could run concurrently; acceptance is a single-writer
// pass afterward. Greedy: a channel moves only when the candidate improves it.
inline void step(std::vector<Channel>& channels, std::size_t& best_index, const LsaParams& params,
                 const Bounds& bounds, Rng& rng, const Evaluator& evaluate, int iteration,
                 std::uint64_t& eval_count) {
    const std::size_t n = channels.size();
    const std::size_t dims = bounds.dims();
    const double tau = std::max(1e-12, params.tau_fraction * params.iterations);

    std::vector<double> sigma0(dims);
    for (std::size_t d = 0; d < dims; ++d) sigma0[d] = params.sigma0_fraction * bounds.range(d);

    const Channel& best = channels[best_index];
    std::vector<std::vector<double>> proposals(n);
    std::vector<char> forked(n, 0);
    std::vector<std::vector<double>> opposites(n);
    std::vector<double> mu(dims);

    for (std::size_t i = 0; i < n; ++i) {
        if (i == best_index) {
            proposals[i] = lead_projectile_step(best, sigma0, iteration, tau, bounds, rng);
        } else {
            bool at_best = true;
            for (std::size_t d = 0; d < dims; ++d) {
                mu[d] = std::abs(channels[i].position[d] - best.position[d]);
                if (channels[i].position[d] != best.position[d]) at_best = false;
            }
            if (at_best)
                for (std::size_t d = 0; d < dims; ++d)
                    mu[d] = params.mu_floor_fraction * bounds.range(d);
            proposals[i] = space_projectile_step(channels[i], mu, bounds, rng);
        }
        if (rng.coin(params.forking_rate)) {
            forked[i] = 1;
            auto& opp = opposites[i];
            opp.resize(dims);
            for (std::size_t d = 0; d < dims; ++d)
                opp[d] = bounds.lower[d] + bounds.upper[d] - channels[i].position[d];
        }
    }

    std::vector<double> proposal_energy(n);
    std::vector<double> opposite_energy(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        proposal_energy[i] = evaluate(proposals[i]);
        ++eval_count;
        if (forked[i]) {
            opposite_energy[i] = evaluate(opposites[i]);
            ++eval_count;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        bool improved = false;
        if (proposal_energy[i] < channels[i].energy) {
            channels[i].position = std::move(proposals[i]);
            channels[i].energy = proposal_energy[i];
            improved = true;
        }
        if (forked[i] && opposite_energy[i] < channels[i].energy) {
            channels[i].position = std::move(opposites[i]);
            channels[i].energy = opposite_energy[i];
            improved = true;
        }
        channels[i].age = improved ? 0 : channels[i].age + 1;
    }

    best_index = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (channels[i].energy < channels[best_index].energy) best_index = i;
}

// Re-seeds the worst channels from the uniform initializer once the best
// energy has stalled for channel_time iterations. Returns whether it fired.
inline bool eliminate_channels(std::vector<Channel>& channels, const LsaParams& params,
                               const Bounds& bounds, Rng& rng, const Evaluator& evaluate,
                               int stagnant_iterations, std::uint64_t& eval_count) {
    if (stagnant_iterations < params.channel_time) return false;
    const std::size_t n = channels.size();
    std::size_t k = static_cast<std::size_t>(
        std::ceil(static_cast<double>(n) * params.elimination_fraction));
    if (k >= n) k = n - 1; // never discard the leading channel
    if (k == 0) return false;

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return channels[a].energy > channels[b].energy;
    });
    for (std::size_t j = 0; j < k; ++j) {
        Channel& ch = channels[order[j]];
        for (std::size_t d = 0; d < bounds.dims(); ++d)
            ch.position[d] = rng.uniform(bounds.lower[d], bounds.upper[d]);
        ch.energy = evaluate(ch.position);
        ch.age = 0;
        ++eval_count;
    }
    return true;
}

inline ConvergenceTrace run_lsa(const LsaParams& params, const Evaluator& evaluate,
                                const Bounds& bounds) {
    params.check();
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(params.seed);
    ConvergenceTrace trace;

    auto channels = init_step_leaders(params, bounds, rng, evaluate);
    trace.evaluations += channels.size();

    std::size_t best_index = 0;
    for (std::size_t i = 1; i < channels.size(); ++i)
        if (channels[i].energy < channels[best_index].energy) best_index = i;
    double best_so_far = channels[best_index].energy;
    std::vector<double> best_position = channels[best_index].position;

    int stagnation = 0;
    for (int t = 1; t <= params.iterations; ++t) {
        step(channels, best_index, params, bounds, rng, evaluate, t, trace.evaluations);
        if (channels[best_index].energy < best_so_far) {
            best_so_far = channels[best_index].energy;
            best_position = channels[best_index].position;
            stagnation = 0;
        } else {
            ++stagnation;
        }
        if (eliminate_channels(channels, params, bounds, rng, evaluate, stagnation,
                               trace.evaluations))
            stagnation = 0;
        trace.best_objective.push_back(best_so_far);
        trace.evaluations_at.push_back(trace.evaluations);
    }

    trace.best_position = std::move(best_position);
    trace.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return trace;
}

} // namespace dgopt
