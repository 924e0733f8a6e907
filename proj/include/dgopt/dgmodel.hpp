#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dgopt/netmodel.hpp"
#include "dgopt/powerflow.hpp"

namespace dgopt {

enum class DgKind { PV, WT, FC };

inline const char* to_string(DgKind k) {
    switch (k) {
        case DgKind::PV: return "PV";
        case DgKind::WT: return "WT";
        case DgKind::FC: return "FC";
    }
    return "?";
}

struct DgUnit {
    DgKind kind = DgKind::PV;
    int location = 2; // bus id, never the slack
    double rated_kw = 0.0;
};

struct WindCurve {
    double cut_in_ms = 2.5;
    double rated_ms = 12.0;
    double cut_out_ms = 25.0;

    void check() const {
        if (!(0.0 < cut_in_ms && cut_in_ms < rated_ms && rated_ms < cut_out_ms))
            throw value_error("wind curve needs 0 < cut_in < rated < cut_out");
    }
};

struct DgSettings {
    WindCurve wind_curve{};
    double reference_irradiance_wm2 = 1000.0; // standard test condition
};

inline double pv_output(double rated_kw, double irradiance_wm2, double reference_irradiance_wm2) {
    if (!(rated_kw >= 0.0)) throw value_error("pv rated_kw must be >= 0");
    if (!(irradiance_wm2 >= 0.0)) throw value_error("irradiance must be >= 0");
    if (!(reference_irradiance_wm2 > 0.0)) throw value_error("reference irradiance must be > 0");
    return std::min(rated_kw, rated_kw * irradiance_wm2 / reference_irradiance_wm2);
}

// Cubic power curve: zero outside [cut_in, cut_out), rated above rated speed.
inline double wt_output(double rated_kw, double wind_speed_ms, const WindCurve& curve) {
    if (!(rated_kw >= 0.0)) throw value_error("wt rated_kw must be >= 0");
    if (!(wind_speed_ms >= 0.0)) throw value_error("wind speed must be >= 0");
    curve.check();
    const double v = wind_speed_ms;
    if (v < curve.cut_in_ms || v >= curve.cut_out_ms) return 0.0;
    if (v >= curve.rated_ms) return rated_kw;
    const double v3 = v * v * v;
    const double ci3 = curve.cut_in_ms * curve.cut_in_ms * curve.cut_in_ms;
    const double r3 = curve.rated_ms * curve.rated_ms * curve.rated_ms;
    return rated_kw * (v3 - ci3) / (r3 - ci3);
}

// Fuel cells run at rated output every hour; no environmental dependence.
inline double fc_output(double rated_kw) {
    if (!(rated_kw >= 0.0)) throw value_error("fc rated_kw must be >= 0");
    return rated_kw;
}

inline double unit_output(const DgUnit& unit, int hour, const HourlySeries& irradiance,
                          const HourlySeries& wind, const DgSettings& settings) {
    switch (unit.kind) {
        case DgKind::PV:
            return pv_output(unit.rated_kw, irradiance.at_hour(hour),
                             settings.reference_irradiance_wm2);
        case DgKind::WT:
            return wt_output(unit.rated_kw, wind.at_hour(hour), settings.wind_curve);
        case DgKind::FC:
            return fc_output(unit.rated_kw);
    }
    throw value_error("unknown DG kind");
}

// Per-hour active injections at each unit's bus; reactive stays zero (unity
// power factor). At most one unit per kind.
inline std::vector<InjectionSet> hourly_injections(const std::vector<DgUnit>& units,
                                                   const HourlySeries& irradiance,
                                                   const HourlySeries& wind,
                                                   const DgSettings& settings, int n_bus) {
    bool have[3] = {false, false, false};
    for (const auto& u : units) {
        const int k = static_cast<int>(u.kind);
        if (have[k]) throw value_error(std::string("duplicate DG kind ") + to_string(u.kind));
        have[k] = true;
        if (u.location < 2 || u.location > n_bus)
            throw value_error("DG location " + std::to_string(u.location) +
                              " outside {2.." + std::to_string(n_bus) + "}");
        if (!(u.rated_kw >= 0.0)) throw value_error("DG rated_kw must be >= 0");
    }
    if (irradiance.kind != ProfileKind::Irradiance)
        throw value_error("irradiance series has wrong unit tag");
    if (wind.kind != ProfileKind::WindSpeed)
        throw value_error("wind series has wrong unit tag");

    std::vector<InjectionSet> out;
    out.reserve(24);
    for (int hour = 1; hour <= 24; ++hour) {
        InjectionSet inj(n_bus);
        for (const auto& u : units)
            inj.add(u.location, unit_output(u, hour, irradiance, wind, settings), 0.0);
        out.push_back(std::move(inj));
    }
    return out;
}

} // namespace dgopt
