#pragma once

#include <string>
#include <vector>

#include "dgopt/netmodel.hpp"
#include "dgopt/powerflow.hpp"
#include "dgopt/rng.hpp"

#ifndef DGOPT_DATA_DIR
#error "tests must be compiled with -DDGOPT_DATA_DIR=..."
#endif

namespace dgopt::testing {

inline std::string data_path(const std::string& name) {
    return std::string(DGOPT_DATA_DIR) + "/" + name;
}

inline NetworkModel bundled_network() {
    return load_network(data_path("ieee33.csv"), FileFormat::Csv);
}
inline HourlySeries bundled_load_profile() {
    return load_profile(data_path("load_profile_24h.csv"), ProfileKind::LoadMultiplier);
}
inline HourlySeries bundled_irradiance() {
    return load_profile(data_path("irradiance_24h.csv"), ProfileKind::Irradiance);
}
inline HourlySeries bundled_wind() {
    return load_profile(data_path("wind_speed_24h.csv"), ProfileKind::WindSpeed);
}

// Slack + one load bus over a single resistive line: r = 0.1 pu, load 0.1 pu.
// With 1 kV / 1 MVA bases the per-unit and physical numbers line up simply.
inline NetworkModel two_bus_network() {
    NetworkModel net;
    net.base_kv = 1.0;
    net.base_mva = 1.0;
    net.buses = {{1, 0.0, 0.0}, {2, 100.0, 0.0}};
    net.branches = {{1, 1, 2, 0.1, 0.0, std::numeric_limits<double>::infinity()}};
    validate(net);
    return net;
}

// Random rooted tree with distribution-feeder-like impedances and loads.
inline NetworkModel random_radial_network(Rng& rng, int n_bus) {
    NetworkModel net;
    net.base_kv = 12.66;
    net.base_mva = 100.0;
    net.buses.push_back({1, 0.0, 0.0});
    for (int id = 2; id <= n_bus; ++id)
        net.buses.push_back(
            {id, rng.uniform(20.0, 250.0), rng.uniform(10.0, 120.0)});
    for (int id = 2; id <= n_bus; ++id) {
        Branch br;
        br.id = id - 1;
        br.from_bus = 1 + static_cast<int>(rng.uniform01() * (id - 1));
        br.to_bus = id;
        br.r_ohm = rng.uniform(0.05, 1.2);
        br.x_ohm = rng.uniform(0.03, 1.0);
        net.branches.push_back(br);
    }
    validate(net);
    return net;
}

// DG-like injection pattern: a few buses receive up to 2.5 MW each.
inline InjectionSet random_injections(Rng& rng, int n_bus, int n_units = 3,
                                      double max_kw = 2500.0) {
    InjectionSet inj(n_bus);
    for (int u = 0; u < n_units; ++u) {
        const int bus = 2 + static_cast<int>(rng.uniform01() * (n_bus - 1));
        inj.add(std::min(bus, n_bus), rng.uniform(0.0, max_kw), 0.0);
    }
    return inj;
}

} // namespace dgopt::testing
