// dgopt: distributed-generation placement studies on radial feeders.
//   run        optimize a scenario (LSA / PSO / both) and write all reports
//   basecase   solve the no-DG base case and write plot-ready CSVs
//   compare    side-by-side table from two or more report.json files
//   powerflow  one-off load flow on a network file

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "dgopt/runner.hpp"

namespace {

int cmd_run(const std::string& config_path, int seed_count, const std::string& out_override) {
    dgopt::ScenarioConfig cfg = dgopt::load_config(config_path);
    if (seed_count > 0) {
        cfg.seeds.clear();
        for (int s = 1; s <= seed_count; ++s) cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    if (!out_override.empty()) cfg.out_dir = out_override;
    const dgopt::RunReport report = dgopt::run_scenario(cfg);
    std::cout << dgopt::detail::human_table(report);
    std::cout << "\nreports written to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_basecase(const std::string& config_path) {
    const dgopt::ScenarioConfig cfg = dgopt::load_config(config_path);
    const dgopt::BaseCaseReport rep = dgopt::report_base_case(cfg);
    std::printf("base case (%s):\n", dgopt::to_string(cfg.scenario));
    std::printf("  energy loss        %.3f kWh\n", rep.loss_kwh);
    std::printf("  voltage deviation  %.5f pu.h\n", rep.vdev_puh);
    std::printf("  min voltage        %.5f pu at bus %d, hour %d\n", rep.min_voltage_pu,
                rep.min_voltage_bus, rep.min_voltage_hour);
    std::printf("  max line-hour loss %.3f kW on branch %d, hour %d\n", rep.max_line_loss_kw,
                rep.max_loss_branch, rep.max_loss_hour);
    std::printf("  wrote %s and %s\n", rep.lines_csv.c_str(), rep.voltages_csv.c_str());
    return 0;
}

int cmd_compare(const std::vector<std::string>& reports, const std::string& csv_out) {
    const dgopt::Comparison cmp = dgopt::compare_reports(reports);
    std::cout << cmp.human;
    if (!csv_out.empty()) {
        std::ofstream f(csv_out);
        if (!f) throw dgopt::config_error("cannot write " + csv_out);
        f << cmp.csv;
        std::cout << "csv written to " << csv_out << "\n";
    }
    return 0;
}

int cmd_powerflow(const std::string& network_path, const std::string& profile_path,
                  const std::string& hour_arg) {
    // input loading and validation count as configuration, not computation
    dgopt::NetworkModel net;
    dgopt::SweepPlan plan;
    try {
        net = dgopt::load_network(network_path,
                                  dgopt::detail::format_from_extension(network_path));
        plan = dgopt::make_sweep_plan(net);
    } catch (const std::exception& e) {
        throw dgopt::config_error(std::string("bad network input: ") + e.what());
    }
    const dgopt::InjectionSet none(net.n_bus());

    auto print_solution = [&](const dgopt::NetworkModel& n, const char* title) {
        const auto sol = dgopt::solve_hour(n, plan, none);
        if (!sol.converged) throw dgopt::value_error("power flow did not converge");
        std::printf("# %s\n", title);
        std::printf("bus,v_pu,angle_deg\n");
        for (int b = 0; b < n.n_bus(); ++b)
            std::printf("%d,%.6f,%.4f\n", n.buses[b].id, sol.v_pu[b],
                        sol.v_angle_rad[b] * 180.0 / M_PI);
        std::printf("branch,i_amp,loss_kw\n");
        for (int b = 0; b < n.n_branch(); ++b)
            std::printf("%d,%.3f,%.4f\n", n.branches[b].id, sol.i_amp[b], sol.loss_kw[b]);
        int bus = 0;
        const double vmin = sol.min_voltage_pu(&bus);
        std::printf("total_loss_kw,%.4f\n", sol.total_loss_kw());
        std::printf("min_v_pu,%.6f,bus,%d\n", vmin, bus);
    };

    if (hour_arg.empty()) {
        print_solution(net, "nominal load, no DG");
        return 0;
    }
    if (profile_path.empty())
        throw dgopt::config_error("--hour requires --profile to supply the load multipliers");
    dgopt::HourlySeries profile;
    try {
        profile = dgopt::load_profile(profile_path, dgopt::ProfileKind::LoadMultiplier);
    } catch (const std::exception& e) {
        throw dgopt::config_error(std::string("bad profile input: ") + e.what());
    }
    if (hour_arg == "all") {
        std::printf("hour,multiplier,total_loss_kw,min_v_pu,min_v_bus\n");
        for (int h = 1; h <= 24; ++h) {
            const auto scaled = dgopt::scale_loads(net, profile.at_hour(h));
            const auto sol = dgopt::solve_hour(scaled, plan, none);
            if (!sol.converged) throw dgopt::value_error("power flow did not converge");
            int bus = 0;
            const double vmin = sol.min_voltage_pu(&bus);
            std::printf("%d,%.4f,%.4f,%.6f,%d\n", h, profile.at_hour(h), sol.total_loss_kw(),
                        vmin, bus);
        }
        return 0;
    }
    const int hour = dgopt::detail::parse_int(hour_arg, "hour");
    const auto scaled = dgopt::scale_loads(net, profile.at_hour(hour));
    char title[64];
    std::snprintf(title, sizeof(title), "hour %d, multiplier %.4f", hour, profile.at_hour(hour));
    print_solution(scaled, title);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DG placement and sizing on radial distribution feeders"};
    app.require_subcommand(1);

    std::string config_path, out_override, csv_out;
    int seed_count = 0;
    std::vector<std::string> report_paths;
    std::string network_path, profile_path, hour_arg;

    auto* run = app.add_subcommand("run", "optimize a scenario and write reports");
    run->add_option("--config", config_path, "scenario config JSON")->required();
    run->add_option("--seed-count", seed_count, "override seeds with 1..N");
    run->add_option("--out", out_override, "override output directory");

    auto* basecase = app.add_subcommand("basecase", "solve and report the no-DG base case");
    basecase->add_option("--config", config_path, "scenario config JSON")->required();

    auto* compare = app.add_subcommand("compare", "compare two or more report.json files");
    compare->add_option("reports", report_paths, "report.json paths")->expected(-2);
    compare->add_option("--csv", csv_out, "also write the comparison as CSV");

    auto* powerflow = app.add_subcommand("powerflow", "one-off load flow on a network file");
    powerflow->add_option("--network", network_path, "network CSV or JSON")->required();
    powerflow->add_option("--profile", profile_path, "load-multiplier profile CSV");
    powerflow->add_option("--hour", hour_arg, "hour 1..24, or 'all' (needs --profile)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path, seed_count, out_override);
        if (*basecase) return cmd_basecase(config_path);
        if (*compare) return cmd_compare(report_paths, csv_out);
        if (*powerflow) return cmd_powerflow(network_path, profile_path, hour_arg);
    } catch (const dgopt::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const dgopt::parse_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
