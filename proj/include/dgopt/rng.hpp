#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dgopt {

// Seeded draws built directly on the mt19937_64 output stream. The standard
// pins that stream bit-for-bit, so traces reproduce across platforms; the
// std:: distribution adaptors do not make that guarantee, hence these.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // mean mu >= 0; mu == 0 degenerates to 0
    double exponential(double mu) {
        const double u = uniform01();
        return mu == 0.0 ? 0.0 : -mu * std::log1p(-u);
    }

    // Box-Muller, two uniforms per draw (spare discarded to keep the stream
    // position independent of call history)
    double normal(double mean, double sd) {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(2.0 * M_PI * u2);
    }

    bool coin(double p_true) { return uniform01() < p_true; }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

} // namespace dgopt
