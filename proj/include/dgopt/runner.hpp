#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgopt/lsa.hpp"
#include "dgopt/objective.hpp"
#include "dgopt/pso.hpp"

namespace dgopt {

enum class ScenarioKind { ConstantLoad, LoadProfile };
enum class OptimizerChoice { Lsa, Pso, Both };

inline const char* to_string(ScenarioKind s) {
    return s == ScenarioKind::ConstantLoad ? "constant_load" : "load_profile";
}

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::LoadProfile;
    std::string network_path;
    std::string load_profile_path; // unused (flat 1.0) for constant_load
    std::string irradiance_path;
    std::string wind_path;
    OptimizerChoice optimizer = OptimizerChoice::Both;
    std::vector<std::uint64_t> seeds = {1};
    std::string out_dir = "out";
    LsaParams lsa{};
    PsoParams pso{};
    double w1 = 0.5;
    double w2 = 0.5;
    bool auto_calibrate = true;
    double loss_ref = 1.0; // used when auto_calibrate is off
    double vdev_ref = 1.0;
    PenaltySettings penalties{};
    DgBounds dg_bounds{};
    DgSettings dg{};
    PowerFlowSettings pf{};
};

namespace detail {

inline std::string resolve_path(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return p;
    std::filesystem::path fp(p);
    if (fp.is_absolute()) return fp.string();
    return (base / fp).lexically_normal().string();
}

inline void require_file(const std::string& path, const std::string& what) {
    if (path.empty()) throw config_error(what + " path missing from config");
    if (!std::filesystem::exists(path)) throw config_error(what + " file not found: " + path);
}

} // namespace detail

// Relative paths inside the config resolve against the config file's
// directory; referenced files are checked before any computation.
inline ScenarioConfig load_config(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw config_error("cannot open config file: " + config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error(std::string("bad config JSON: ") + e.what());
    }
    const auto base = std::filesystem::path(config_path).parent_path();

    ScenarioConfig cfg;
    try {
        const std::string scen = j.at("scenario").get<std::string>();
        if (scen == "constant_load")
            cfg.scenario = ScenarioKind::ConstantLoad;
        else if (scen == "load_profile")
            cfg.scenario = ScenarioKind::LoadProfile;
        else
            throw config_error("scenario must be constant_load or load_profile, got " + scen);

        cfg.network_path = detail::resolve_path(base, j.at("network").get<std::string>());
        if (j.contains("profiles")) {
            const auto& p = j.at("profiles");
            if (p.contains("load"))
                cfg.load_profile_path = detail::resolve_path(base, p.at("load").get<std::string>());
            if (p.contains("irradiance"))
                cfg.irradiance_path =
                    detail::resolve_path(base, p.at("irradiance").get<std::string>());
            if (p.contains("wind"))
                cfg.wind_path = detail::resolve_path(base, p.at("wind").get<std::string>());
        }
        if (j.contains("optimizer")) {
            const std::string opt = j.at("optimizer").get<std::string>();
            if (opt == "lsa")
                cfg.optimizer = OptimizerChoice::Lsa;
            else if (opt == "pso")
                cfg.optimizer = OptimizerChoice::Pso;
            else if (opt == "both")
                cfg.optimizer = OptimizerChoice::Both;
            else
                throw config_error("optimizer must be lsa, pso or both, got " + opt);
        }
        if (j.contains("seeds")) {
            cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
            if (cfg.seeds.empty()) throw config_error("seeds list must not be empty");
        }
        if (j.contains("out_dir"))
            cfg.out_dir = detail::resolve_path(base, j.at("out_dir").get<std::string>());

        if (j.contains("lsa")) {
            const auto& l = j.at("lsa");
            cfg.lsa.population = l.value("population", cfg.lsa.population);
            cfg.lsa.iterations = l.value("iterations", cfg.lsa.iterations);
            cfg.lsa.forking_rate = l.value("forking_rate", cfg.lsa.forking_rate);
            cfg.lsa.elimination_fraction =
                l.value("elimination_fraction", cfg.lsa.elimination_fraction);
            cfg.lsa.channel_time = l.value("channel_time", cfg.lsa.channel_time);
            cfg.lsa.sigma0_fraction = l.value("sigma0_fraction", cfg.lsa.sigma0_fraction);
            cfg.lsa.tau_fraction = l.value("tau_fraction", cfg.lsa.tau_fraction);
        }
        if (j.contains("pso")) {
            const auto& p = j.at("pso");
            cfg.pso.population = p.value("population", cfg.pso.population);
            cfg.pso.iterations = p.value("iterations", cfg.pso.iterations);
            cfg.pso.c1 = p.value("c1", cfg.pso.c1);
            cfg.pso.c2 = p.value("c2", cfg.pso.c2);
            cfg.pso.w_min = p.value("w_min", cfg.pso.w_min);
            cfg.pso.w_max = p.value("w_max", cfg.pso.w_max);
            cfg.pso.v_clamp_fraction = p.value("v_clamp_fraction", cfg.pso.v_clamp_fraction);
            cfg.pso.omega_const = p.value("omega_const", cfg.pso.omega_const);
            if (p.contains("inertia_mode")) {
                const std::string m = p.at("inertia_mode").get<std::string>();
                if (m == "linear")
                    cfg.pso.inertia_mode = InertiaMode::LinearDecreasing;
                else if (m == "constant")
                    cfg.pso.inertia_mode = InertiaMode::Constant;
                else
                    throw config_error("inertia_mode must be linear or constant");
            }
        }
        if (j.contains("objective")) {
            const auto& o = j.at("objective");
            if (o.contains("weights")) {
                const auto& w = o.at("weights");
                cfg.w1 = w.value("w1", cfg.w1);
                cfg.w2 = w.value("w2", cfg.w2);
                cfg.auto_calibrate = w.value("auto_calibrate", cfg.auto_calibrate);
                cfg.loss_ref = w.value("loss_ref", cfg.loss_ref);
                cfg.vdev_ref = w.value("vdev_ref", cfg.vdev_ref);
            }
            if (o.contains("penalties")) {
                const auto& p = o.at("penalties");
                cfg.penalties.c_v = p.value("c_v", cfg.penalties.c_v);
                cfg.penalties.c_i = p.value("c_i", cfg.penalties.c_i);
                cfg.penalties.c_f = p.value("c_f", cfg.penalties.c_f);
            }
            if (o.contains("dg_bounds")) {
                const auto& b = o.at("dg_bounds");
                cfg.dg_bounds.min_kw = b.value("min_kw", cfg.dg_bounds.min_kw);
                cfg.dg_bounds.max_kw = b.value("max_kw", cfg.dg_bounds.max_kw);
            }
        }
        if (j.contains("dg")) {
            const auto& d = j.at("dg");
            if (d.contains("wind_curve")) {
                const auto& w = d.at("wind_curve");
                cfg.dg.wind_curve.cut_in_ms = w.value("cut_in", cfg.dg.wind_curve.cut_in_ms);
                cfg.dg.wind_curve.rated_ms = w.value("rated", cfg.dg.wind_curve.rated_ms);
                cfg.dg.wind_curve.cut_out_ms = w.value("cut_out", cfg.dg.wind_curve.cut_out_ms);
            }
            cfg.dg.reference_irradiance_wm2 =
                d.value("reference_irradiance", cfg.dg.reference_irradiance_wm2);
        }
    } catch (const config_error&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("bad config: ") + e.what());
    }

    detail::require_file(cfg.network_path, "network");
    detail::require_file(cfg.irradiance_path, "irradiance profile");
    detail::require_file(cfg.wind_path, "wind profile");
    if (cfg.scenario == ScenarioKind::LoadProfile)
        detail::require_file(cfg.load_profile_path, "load profile");
    return cfg;
}

namespace detail {

inline FileFormat format_from_extension(const std::string& path) {
    const auto ext = std::filesystem::path(path).extension().string();
    return ext == ".json" ? FileFormat::Json : FileFormat::Csv;
}

inline double quantile(std::vector<double> sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

inline void write_horizon_csvs(const HorizonSolution& horizon, const NetworkModel& net,
                               const std::string& lines_path, const std::string& voltages_path) {
    std::ofstream lf(lines_path);
    if (!lf) throw config_error("cannot write " + lines_path);
    lf << "hour,branch,i_amp,loss_kw\n";
    char buf[128];
    for (int h = 1; h <= 24; ++h) {
        const auto& sol = horizon.hours[static_cast<std::size_t>(h - 1)];
        for (int b = 0; b < net.n_branch(); ++b) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%.10g,%.10g\n", h,
                          net.branches[static_cast<std::size_t>(b)].id,
                          sol.i_amp[static_cast<std::size_t>(b)],
                          sol.loss_kw[static_cast<std::size_t>(b)]);
            lf << buf;
        }
    }
    std::ofstream vf(voltages_path);
    if (!vf) throw config_error("cannot write " + voltages_path);
    vf << "hour,bus,v_pu\n";
    for (int h = 1; h <= 24; ++h) {
        const auto& sol = horizon.hours[static_cast<std::size_t>(h - 1)];
        for (int b = 0; b < net.n_bus(); ++b) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%.10g\n", h,
                          net.buses[static_cast<std::size_t>(b)].id,
                          sol.v_pu[static_cast<std::size_t>(b)]);
            vf << buf;
        }
    }
}

inline void write_trace_csv(const ConvergenceTrace& trace, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw config_error("cannot write " + path);
    f << "iteration,best_objective,evaluations\n";
    char buf[96];
    for (std::size_t i = 0; i < trace.best_objective.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%llu\n", i + 1, trace.best_objective[i],
                      static_cast<unsigned long long>(trace.evaluations_at[i]));
        f << buf;
    }
}

} // namespace detail

// Scenario inputs assembled and calibrated, ready to evaluate candidates.
struct ScenarioSetup {
    ScenarioContext ctx;
    HorizonSolution base; // no-DG horizon under the scenario's load model
    Bounds bounds;        // 6-D decision space
};

inline ScenarioSetup prepare_scenario(const ScenarioConfig& cfg) {
    NetworkModel net =
        load_network(cfg.network_path, detail::format_from_extension(cfg.network_path));
    ScenarioContext ctx = ScenarioContext::make(std::move(net));
    ctx.load = cfg.scenario == ScenarioKind::ConstantLoad
                   ? HourlySeries::flat(1.0, ProfileKind::LoadMultiplier)
                   : load_profile(cfg.load_profile_path, ProfileKind::LoadMultiplier);
    ctx.irradiance = load_profile(cfg.irradiance_path, ProfileKind::Irradiance);
    ctx.wind = load_profile(cfg.wind_path, ProfileKind::WindSpeed);
    ctx.dg = cfg.dg;
    ctx.penalties = cfg.penalties;
    ctx.dg_bounds = cfg.dg_bounds;
    ctx.pf = cfg.pf;

    ScenarioSetup setup{std::move(ctx), {}, {}};
    const std::vector<InjectionSet> none(24, InjectionSet(setup.ctx.net.n_bus()));
    setup.base = solve_horizon(setup.ctx.net, setup.ctx.plan, setup.ctx.load, none, setup.ctx.pf);
    if (!setup.base.all_converged())
        throw value_error("base case power flow did not converge");

    setup.ctx.weights.w1 = cfg.w1;
    setup.ctx.weights.w2 = cfg.w2;
    if (cfg.auto_calibrate) {
        setup.ctx.weights.loss_ref = setup.base.total_loss_kwh;
        setup.ctx.weights.vdev_ref = setup.base.vdev_puh;
    } else {
        setup.ctx.weights.loss_ref = cfg.loss_ref;
        setup.ctx.weights.vdev_ref = cfg.vdev_ref;
    }
    setup.ctx.weights.check();

    const int n = setup.ctx.net.n_bus();
    setup.bounds = Bounds(
        {2.0, cfg.dg_bounds.min_kw, 2.0, cfg.dg_bounds.min_kw, 2.0, cfg.dg_bounds.min_kw},
        {static_cast<double>(n), cfg.dg_bounds.max_kw, static_cast<double>(n), cfg.dg_bounds.max_kw,
         static_cast<double>(n), cfg.dg_bounds.max_kw});
    return setup;
}

struct OptimizerOutcome {
    std::string name;
    std::uint64_t best_seed = 0;
    std::vector<double> best_vector;
    Evaluation best;
    double loss_reduction_pct = 0.0;
    double vdev_improvement_pct = 0.0;
    double objective_median = 0.0;
    double objective_iqr = 0.0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> final_objectives; // aligned with seeds
    std::vector<std::string> trace_files;
    std::vector<ConvergenceTrace> traces;
};

struct RunReport {
    std::string scenario_id;
    double base_loss_kwh = 0.0;
    double base_vdev_puh = 0.0;
    double base_min_voltage_pu = 0.0;
    ObjectiveWeights weights;
    std::vector<OptimizerOutcome> optimizers;
};

namespace detail {

inline nlohmann::json placement_json(const Placement& p) {
    nlohmann::json j;
    for (const auto& u : p.units)
        j[to_string(u.kind)] = {{"bus", u.location}, {"kw", u.rated_kw}};
    return j;
}

inline nlohmann::json report_json(const RunReport& r) {
    nlohmann::json j;
    j["scenario"] = r.scenario_id;
    j["base"] = {{"loss_kwh", r.base_loss_kwh},
                 {"vdev_puh", r.base_vdev_puh},
                 {"min_voltage_pu", r.base_min_voltage_pu}};
    j["weights"] = {{"w1", r.weights.w1},
                    {"w2", r.weights.w2},
                    {"loss_ref", r.weights.loss_ref},
                    {"vdev_ref", r.weights.vdev_ref}};
    for (const auto& opt : r.optimizers) {
        nlohmann::json o;
        o["best"] = {{"seed", opt.best_seed},
                     {"vector", opt.best_vector},
                     {"placement", placement_json(opt.best.placement)},
                     {"objective", opt.best.objective},
                     {"loss_kwh", opt.best.loss_kwh},
                     {"vdev_puh", opt.best.vdev_puh},
                     {"penalty", opt.best.penalty},
                     {"feasible", opt.best.feasible},
                     {"loss_reduction_pct", opt.loss_reduction_pct},
                     {"vdev_improvement_pct", opt.vdev_improvement_pct}};
        o["objective_median"] = opt.objective_median;
        o["objective_iqr"] = opt.objective_iqr;
        nlohmann::json seeds = nlohmann::json::array();
        for (std::size_t i = 0; i < opt.seeds.size(); ++i)
            seeds.push_back({{"seed", opt.seeds[i]},
                             {"objective", opt.final_objectives[i]},
                             {"trace", opt.trace_files[i]}});
        o["seeds"] = seeds;
        j["optimizers"][opt.name] = o;
    }
    return j;
}

inline std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

inline std::string human_table(const RunReport& r) {
    std::ostringstream os;
    os << "scenario: " << r.scenario_id << "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "base case: loss %.2f kWh, vdev %.4f pu.h, min V %.4f pu\n",
                  r.base_loss_kwh, r.base_vdev_puh, r.base_min_voltage_pu);
    os << buf << "\n";
    os << "            ";
    for (const auto& o : r.optimizers) std::snprintf(buf, sizeof(buf), " %14s", o.name.c_str()), os << buf;
    os << "\n";
    const char* kinds[3] = {"PV", "WT", "FC"};
    for (int k = 0; k < 3; ++k) {
        std::snprintf(buf, sizeof(buf), "%-12s", (std::string(kinds[k]) + " bus").c_str());
        os << buf;
        for (const auto& o : r.optimizers) {
            std::snprintf(buf, sizeof(buf), " %14d", o.best.placement.units[k].location);
            os << buf;
        }
        os << "\n";
        std::snprintf(buf, sizeof(buf), "%-12s", (std::string(kinds[k]) + " kW").c_str());
        os << buf;
        for (const auto& o : r.optimizers) {
            std::snprintf(buf, sizeof(buf), " %14.1f", o.best.placement.units[k].rated_kw);
            os << buf;
        }
        os << "\n";
    }
    auto row = [&](const char* label, auto get, const char* fmt) {
        std::snprintf(buf, sizeof(buf), "%-12s", label);
        os << buf;
        for (const auto& o : r.optimizers) {
            std::snprintf(buf, sizeof(buf), fmt, get(o));
            os << buf;
        }
        os << "\n";
    };
    row("loss kWh", [](const OptimizerOutcome& o) { return o.best.loss_kwh; }, " %14.2f");
    row("vdev pu.h", [](const OptimizerOutcome& o) { return o.best.vdev_puh; }, " %14.4f");
    row("objective", [](const OptimizerOutcome& o) { return o.best.objective; }, " %14.6f");
    row("loss red %", [](const OptimizerOutcome& o) { return o.loss_reduction_pct; }, " %14.2f");
    row("vdev imp %", [](const OptimizerOutcome& o) { return o.vdev_improvement_pct; }, " %14.2f");
    row("median obj", [](const OptimizerOutcome& o) { return o.objective_median; }, " %14.6f");
    row("IQR obj", [](const OptimizerOutcome& o) { return o.objective_iqr; }, " %14.6f");
    return os.str();
}

} // namespace detail

// Base case only: solves the no-DG horizon and writes the plot-ready CSVs.
struct BaseCaseReport {
    double loss_kwh = 0.0;
    double vdev_puh = 0.0;
    double min_voltage_pu = 0.0;
    int min_voltage_bus = 0;
    int min_voltage_hour = 0;
    double max_line_loss_kw = 0.0;
    int max_loss_branch = 0;
    int max_loss_hour = 0;
    std::string lines_csv;
    std::string voltages_csv;
};

inline BaseCaseReport summarize_base(const HorizonSolution& base, const NetworkModel& net) {
    BaseCaseReport rep;
    rep.loss_kwh = base.total_loss_kwh;
    rep.vdev_puh = base.vdev_puh;
    rep.min_voltage_pu = 1e9;
    for (int h = 1; h <= 24; ++h) {
        const auto& sol = base.hours[static_cast<std::size_t>(h - 1)];
        int bus = 0;
        const double v = sol.min_voltage_pu(&bus);
        if (v < rep.min_voltage_pu) {
            rep.min_voltage_pu = v;
            rep.min_voltage_bus = bus;
            rep.min_voltage_hour = h;
        }
        for (int b = 0; b < net.n_branch(); ++b) {
            const double l = sol.loss_kw[static_cast<std::size_t>(b)];
            if (l > rep.max_line_loss_kw) {
                rep.max_line_loss_kw = l;
                rep.max_loss_branch = net.branches[static_cast<std::size_t>(b)].id;
                rep.max_loss_hour = h;
            }
        }
    }
    return rep;
}

inline BaseCaseReport report_base_case(const ScenarioConfig& cfg) {
    ScenarioSetup setup = prepare_scenario(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    BaseCaseReport rep = summarize_base(setup.base, setup.ctx.net);
    rep.lines_csv = (std::filesystem::path(cfg.out_dir) / "lines_base.csv").string();
    rep.voltages_csv = (std::filesystem::path(cfg.out_dir) / "voltages_base.csv").string();
    detail::write_horizon_csvs(setup.base, setup.ctx.net, rep.lines_csv, rep.voltages_csv);
    return rep;
}

// Full study: base case, per-seed optimizer runs, best-across-seeds selection,
// and every report artifact. Output is reproducible byte-for-byte for a fixed
// config and seed list; the only timestamp lives on report.txt's first line.
inline RunReport run_scenario(const ScenarioConfig& cfg) {
    ScenarioSetup setup = prepare_scenario(cfg);
    const auto out = std::filesystem::path(cfg.out_dir);
    std::filesystem::create_directories(out);

    RunReport report;
    report.scenario_id = to_string(cfg.scenario);
    report.base_loss_kwh = setup.base.total_loss_kwh;
    report.base_vdev_puh = setup.base.vdev_puh;
    report.weights = setup.ctx.weights;
    report.base_min_voltage_pu = summarize_base(setup.base, setup.ctx.net).min_voltage_pu;

    detail::write_horizon_csvs(setup.base, setup.ctx.net, (out / "lines_base.csv").string(),
                               (out / "voltages_base.csv").string());

    const ScenarioContext& ctx = setup.ctx;
    const Evaluator evaluator = [&ctx](const std::vector<double>& v) {
        return evaluate(v, ctx).objective;
    };

    std::vector<std::string> names;
    if (cfg.optimizer != OptimizerChoice::Pso) names.push_back("lsa");
    if (cfg.optimizer != OptimizerChoice::Lsa) names.push_back("pso");

    for (const auto& name : names) {
        OptimizerOutcome outcome;
        outcome.name = name;
        for (const std::uint64_t seed : cfg.seeds) {
            ConvergenceTrace trace;
            if (name == "lsa") {
                LsaParams p = cfg.lsa;
                p.seed = seed;
                trace = run_lsa(p, evaluator, setup.bounds);
            } else {
                PsoParams p = cfg.pso;
                p.seed = seed;
                trace = run_pso(p, evaluator, setup.bounds);
            }
            const std::string trace_name = "trace_" + name + "_" + std::to_string(seed) + ".csv";
            detail::write_trace_csv(trace, (out / trace_name).string());
            outcome.seeds.push_back(seed);
            outcome.final_objectives.push_back(trace.final_objective());
            outcome.trace_files.push_back(trace_name);
            outcome.traces.push_back(std::move(trace));
        }

        std::size_t best_i = 0;
        for (std::size_t i = 1; i < outcome.final_objectives.size(); ++i)
            if (outcome.final_objectives[i] < outcome.final_objectives[best_i]) best_i = i;
        outcome.best_seed = outcome.seeds[best_i];
        outcome.best_vector = outcome.traces[best_i].best_position;
        outcome.best = evaluate(outcome.best_vector, ctx);
        outcome.loss_reduction_pct =
            100.0 * (report.base_loss_kwh - outcome.best.loss_kwh) / report.base_loss_kwh;
        outcome.vdev_improvement_pct =
            100.0 * (report.base_vdev_puh - outcome.best.vdev_puh) / report.base_vdev_puh;

        std::vector<double> sorted = outcome.final_objectives;
        std::sort(sorted.begin(), sorted.end());
        outcome.objective_median = detail::quantile(sorted, 0.5);
        outcome.objective_iqr =
            detail::quantile(sorted, 0.75) - detail::quantile(sorted, 0.25);

        detail::write_horizon_csvs(outcome.best.horizon, ctx.net,
                                   (out / ("lines_" + name + "_best.csv")).string(),
                                   (out / ("voltages_" + name + "_best.csv")).string());
        report.optimizers.push_back(std::move(outcome));
    }

    {
        std::ofstream f(out / "report.json");
        if (!f) throw config_error("cannot write report.json");
        f << detail::report_json(report).dump(2) << '\n';
    }
    {
        std::ofstream f(out / "report.txt");
        if (!f) throw config_error("cannot write report.txt");
        f << "# generated: " << detail::timestamp_utc() << "\n";
        f << detail::human_table(report);
    }
    return report;
}

// Side-by-side view of >= 2 run reports covering the same scenario.
struct Comparison {
    std::string human;
    std::string csv;
};

inline Comparison compare_reports(const std::vector<std::string>& report_paths) {
    if (report_paths.size() < 2)
        throw config_error("compare needs at least two report files");
    struct Column {
        std::string label;
        nlohmann::json best;
    };
    std::vector<Column> cols;
    std::string scenario;
    for (const auto& path : report_paths) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open report: " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw config_error("bad report JSON " + path + ": " + e.what());
        }
        const std::string scen = j.at("scenario").get<std::string>();
        if (scenario.empty())
            scenario = scen;
        else if (scenario != scen)
            throw config_error("scenario mismatch: " + scenario + " vs " + scen + " in " + path);
        const std::string stem = std::filesystem::path(path).parent_path().filename().string();
        for (const auto& [name, opt] : j.at("optimizers").items())
            cols.push_back({name + (stem.empty() ? "" : "@" + stem), opt.at("best")});
    }

    std::ostringstream csv;
    std::ostringstream human;
    csv << "metric";
    for (const auto& c : cols) csv << ',' << c.label;
    csv << '\n';
    human << "scenario: " << scenario << "\n";
    char buf[160];
    human << "            ";
    for (const auto& c : cols) std::snprintf(buf, sizeof(buf), " %18s", c.label.c_str()), human << buf;
    human << "\n";

    auto emit = [&](const std::string& label, auto fetch, const char* fmt) {
        csv << label;
        std::snprintf(buf, sizeof(buf), "%-12s", label.c_str());
        human << buf;
        for (const auto& c : cols) {
            const double v = fetch(c.best);
            csv << ',' << v;
            std::snprintf(buf, sizeof(buf), fmt, v);
            human << buf;
        }
        csv << '\n';
        human << '\n';
    };
    const char* kinds[3] = {"PV", "WT", "FC"};
    for (const auto* kind : kinds) {
        emit(std::string(kind) + "_bus",
             [kind](const nlohmann::json& b) {
                 return b.at("placement").at(kind).at("bus").get<double>();
             },
             " %18.0f");
        emit(std::string(kind) + "_kw",
             [kind](const nlohmann::json& b) {
                 return b.at("placement").at(kind).at("kw").get<double>();
             },
             " %18.1f");
    }
    emit("loss_kwh", [](const nlohmann::json& b) { return b.at("loss_kwh").get<double>(); },
         " %18.2f");
    emit("vdev_puh", [](const nlohmann::json& b) { return b.at("vdev_puh").get<double>(); },
         " %18.4f");
    emit("objective", [](const nlohmann::json& b) { return b.at("objective").get<double>(); },
         " %18.6f");
    emit("loss_reduction_pct",
         [](const nlohmann::json& b) { return b.at("loss_reduction_pct").get<double>(); },
         " %18.2f");
    emit("vdev_improvement_pct",
         [](const nlohmann::json& b) { return b.at("vdev_improvement_pct").get<double>(); },
         " %18.2f");
    return {human.str(), csv.str()};
}

} // namespace dgopt
