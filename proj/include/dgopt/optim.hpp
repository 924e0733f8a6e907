#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dgopt/errors.hpp"

namespace dgopt {

using Evaluator = std::function<double(const std::vector<double>&)>;

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    Bounds() = default;
    Bounds(std::vector<double> lo, std::vector<double> hi)
        : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower.size() != upper.size() || lower.empty())
            throw value_error("bounds need matching non-empty lower/upper");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] <= upper[i])) throw value_error("bounds need lower <= upper");
    }

    std::size_t dims() const { return lower.size(); }
    double range(std::size_t i) const { return upper[i] - lower[i]; }

    void clamp(std::vector<double>& x) const {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < lower[i]) x[i] = lower[i];
            if (x[i] > upper[i]) x[i] = upper[i];
        }
    }
};

struct ConvergenceTrace {
    std::vector<double> best_objective;        // best-so-far after each iteration
    std::vector<std::uint64_t> evaluations_at; // cumulative evaluations per iteration
    std::vector<double> best_position;
    std::uint64_t evaluations = 0;
    double wall_time_s = 0.0;

    double final_objective() const { return best_objective.back(); }
};

} // namespace dgopt
