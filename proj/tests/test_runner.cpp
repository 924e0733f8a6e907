#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dgopt/runner.hpp"
#include "test_support.hpp"

using namespace dgopt;
namespace fs = std::filesystem;

namespace {

// Small-but-real study configuration pointing at the bundled data.
ScenarioConfig small_config(const std::string& out_dir,
                            ScenarioKind kind = ScenarioKind::LoadProfile) {
    ScenarioConfig cfg;
    cfg.scenario = kind;
    cfg.network_path = dgopt::testing::data_path("ieee33.csv");
    cfg.load_profile_path = dgopt::testing::data_path("load_profile_24h.csv");
    cfg.irradiance_path = dgopt::testing::data_path("irradiance_24h.csv");
    cfg.wind_path = dgopt::testing::data_path("wind_speed_24h.csv");
    cfg.optimizer = OptimizerChoice::Both;
    cfg.seeds = {1, 2};
    cfg.out_dir = out_dir;
    cfg.lsa.population = 20;
    cfg.lsa.iterations = 8;
    cfg.pso.population = 20;
    cfg.pso.iterations = 8;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string without_first_line(const std::string& s) {
    const auto nl = s.find('\n');
    return nl == std::string::npos ? std::string() : s.substr(nl + 1);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("config files load, resolve paths, and validate eagerly") {
    const fs::path dir = fresh_dir("dgopt_cfg");
    const fs::path cfg_path = dir / "cfg.json";
    {
        std::ofstream f(cfg_path);
        f << R"({
            "scenario": "load_profile",
            "network": ")" << dgopt::testing::data_path("ieee33.csv") << R"(",
            "profiles": {
                "load": "load.csv",
                "irradiance": ")" << dgopt::testing::data_path("irradiance_24h.csv") << R"(",
                "wind": ")" << dgopt::testing::data_path("wind_speed_24h.csv") << R"("
            },
            "optimizer": "lsa",
            "seeds": [3, 4],
            "lsa": {"population": 12, "iterations": 4},
            "objective": {"dg_bounds": {"max_kw": 1800.0}}
        })";
    }
    // relative profile path resolves against the config's directory
    fs::copy_file(dgopt::testing::data_path("load_profile_24h.csv"), dir / "load.csv");

    const ScenarioConfig cfg = load_config(cfg_path.string());
    CHECK(cfg.scenario == ScenarioKind::LoadProfile);
    CHECK(cfg.optimizer == OptimizerChoice::Lsa);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 4});
    CHECK(cfg.lsa.population == 12);
    CHECK(cfg.dg_bounds.max_kw == 1800.0);
    CHECK(fs::path(cfg.load_profile_path).parent_path() == dir);
}

TEST_CASE("config errors are raised before any computation") {
    const fs::path dir = fresh_dir("dgopt_cfg_bad");
    SECTION("missing network file") {
        const fs::path cfg_path = dir / "cfg.json";
        std::ofstream(cfg_path) << R"({
            "scenario": "load_profile",
            "network": "nope.csv",
            "profiles": {"load": "a.csv", "irradiance": "b.csv", "wind": "c.csv"}
        })";
        CHECK_THROWS_AS(load_config(cfg_path.string()), config_error);
    }
    SECTION("unknown scenario") {
        const fs::path cfg_path = dir / "cfg2.json";
        std::ofstream(cfg_path) << R"({"scenario": "weekly", "network": "x.csv"})";
        CHECK_THROWS_AS(load_config(cfg_path.string()), config_error);
    }
    SECTION("empty seeds") {
        const fs::path cfg_path = dir / "cfg3.json";
        std::ofstream(cfg_path) << R"({
            "scenario": "constant_load",
            "network": ")" << dgopt::testing::data_path("ieee33.csv") << R"(",
            "profiles": {"irradiance": ")" << dgopt::testing::data_path("irradiance_24h.csv")
                         << R"(", "wind": ")" << dgopt::testing::data_path("wind_speed_24h.csv")
                         << R"("},
            "seeds": []
        })";
        CHECK_THROWS_AS(load_config(cfg_path.string()), config_error);
    }
    SECTION("missing config file") {
        CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), config_error);
    }
}

TEST_CASE("constant-load scenario does not need a load profile file") {
    const fs::path dir = fresh_dir("dgopt_s1");
    ScenarioConfig cfg = small_config((dir / "out").string(), ScenarioKind::ConstantLoad);
    cfg.load_profile_path.clear();
    cfg.optimizer = OptimizerChoice::Lsa;
    cfg.seeds = {1};
    const RunReport rep = run_scenario(cfg);
    CHECK(rep.scenario_id == "constant_load");
    // flat 1.0 load: base energy loss is 24x the nominal hour
    CHECK(rep.base_loss_kwh == Catch::Approx(24.0 * 202.677126456).epsilon(1e-7));
}

TEST_CASE("run_scenario writes the full artifact set and is reproducible") {
    const fs::path dir_a = fresh_dir("dgopt_run_a");
    const fs::path dir_b = fresh_dir("dgopt_run_b");
    const ScenarioConfig cfg_a = small_config(dir_a.string());
    const ScenarioConfig cfg_b = small_config(dir_b.string());

    const RunReport rep = run_scenario(cfg_a);
    run_scenario(cfg_b);

    const std::vector<std::string> expected = {
        "report.json",        "report.txt",          "lines_base.csv",
        "voltages_base.csv",  "trace_lsa_1.csv",     "trace_lsa_2.csv",
        "trace_pso_1.csv",    "trace_pso_2.csv",     "lines_lsa_best.csv",
        "voltages_lsa_best.csv", "lines_pso_best.csv", "voltages_pso_best.csv"};
    for (const auto& name : expected) {
        INFO(name);
        CHECK(fs::exists(dir_a / name));
        if (name == "report.txt")
            CHECK(without_first_line(slurp(dir_a / name)) ==
                  without_first_line(slurp(dir_b / name)));
        else
            CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }

    SECTION("percent reductions recompute from the report's own metrics") {
        for (const auto& opt : rep.optimizers) {
            CHECK(opt.loss_reduction_pct ==
                  Catch::Approx(100.0 * (rep.base_loss_kwh - opt.best.loss_kwh) /
                                rep.base_loss_kwh));
            CHECK(opt.vdev_improvement_pct ==
                  Catch::Approx(100.0 * (rep.base_vdev_puh - opt.best.vdev_puh) /
                                rep.base_vdev_puh));
        }
    }

    SECTION("reported best re-evaluates to exactly the reported objective") {
        ScenarioSetup setup = prepare_scenario(cfg_a);
        for (const auto& opt : rep.optimizers) {
            const Evaluation ev = evaluate(opt.best_vector, setup.ctx);
            CHECK(ev.objective == opt.best.objective);
            CHECK(ev.objective == opt.final_objectives[opt.best_seed == opt.seeds[0] ? 0 : 1]);
        }
    }

    SECTION("trace files carry the documented schema and non-increasing objectives") {
        std::ifstream f(dir_a / "trace_lsa_1.csv");
        std::string header;
        std::getline(f, header);
        CHECK(header == "iteration,best_objective,evaluations");
        double prev = 1e300;
        std::string line;
        int rows = 0;
        while (std::getline(f, line)) {
            ++rows;
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            const double obj = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
            CHECK(obj <= prev);
            prev = obj;
        }
        CHECK(rows == 8);
    }

    SECTION("report.json round-trips through the comparison view") {
        const auto cmp = compare_reports(
            {(dir_a / "report.json").string(), (dir_b / "report.json").string()});
        CHECK(cmp.human.find("scenario: load_profile") != std::string::npos);
        CHECK(cmp.csv.find("objective") != std::string::npos);
        // identical runs produce identical columns: lsa@a,pso@a,lsa@b,pso@b
        std::istringstream csv(cmp.csv);
        std::string line;
        std::getline(csv, line); // header
        while (std::getline(csv, line)) {
            std::vector<std::string> cells;
            std::istringstream row(line);
            std::string cell;
            while (std::getline(row, cell, ',')) cells.push_back(cell);
            REQUIRE(cells.size() == 5);
            CHECK(cells[1] == cells[3]);
            CHECK(cells[2] == cells[4]);
        }
    }
}

TEST_CASE("compare rejects mismatched scenarios") {
    const fs::path dir1 = fresh_dir("dgopt_cmp1");
    const fs::path dir2 = fresh_dir("dgopt_cmp2");
    ScenarioConfig c1 = small_config(dir1.string(), ScenarioKind::ConstantLoad);
    c1.optimizer = OptimizerChoice::Lsa;
    c1.seeds = {1};
    c1.lsa.population = 10;
    c1.lsa.iterations = 3;
    ScenarioConfig c2 = small_config(dir2.string(), ScenarioKind::LoadProfile);
    c2.optimizer = OptimizerChoice::Lsa;
    c2.seeds = {1};
    c2.lsa.population = 10;
    c2.lsa.iterations = 3;
    run_scenario(c1);
    run_scenario(c2);
    CHECK_THROWS_AS(compare_reports({(dir1 / "report.json").string(),
                                     (dir2 / "report.json").string()}),
                    config_error);
    CHECK_THROWS_AS(compare_reports({(dir1 / "report.json").string()}), config_error);
}

TEST_CASE("base case report finds the documented hot spots") {
    const fs::path dir = fresh_dir("dgopt_base");
    ScenarioConfig cfg = small_config((dir / "out").string());
    const BaseCaseReport rep = report_base_case(cfg);
    CHECK(rep.loss_kwh == Catch::Approx(1744.986113911).epsilon(1e-7));
    CHECK(rep.vdev_puh == Catch::Approx(24.169689525).epsilon(1e-7));
    CHECK(rep.max_loss_branch == 2);  // heaviest line
    CHECK(rep.max_loss_hour == 19);   // at the evening peak
    CHECK(rep.min_voltage_bus == 18); // weakest bus
    CHECK(rep.min_voltage_hour == 19);
    CHECK(fs::exists(rep.lines_csv));
    CHECK(fs::exists(rep.voltages_csv));

    // plot-ready matrices: header + 24 hours x (32 branches | 33 buses)
    std::ifstream lf(rep.lines_csv);
    int lines = 0;
    std::string s;
    while (std::getline(lf, s)) ++lines;
    CHECK(lines == 1 + 24 * 32);
    std::ifstream vf(rep.voltages_csv);
    int vrows = 0;
    while (std::getline(vf, s)) ++vrows;
    CHECK(vrows == 1 + 24 * 33);
}

TEST_CASE("zero-demand network yields an all-zero loss matrix") {
    const fs::path dir = fresh_dir("dgopt_zero");
    NetworkModel net = dgopt::testing::bundled_network();
    net = scale_loads(net, 0.0);
    const std::vector<InjectionSet> none(24, InjectionSet(net.n_bus()));
    const auto hz = solve_horizon(net, HourlySeries::flat(1.0, ProfileKind::LoadMultiplier), none);
    detail::write_horizon_csvs(hz, net, (dir / "lines.csv").string(),
                               (dir / "volts.csv").string());
    std::ifstream f(dir / "lines.csv");
    std::string line;
    std::getline(f, line); // header
    while (std::getline(f, line)) {
        const auto last = line.rfind(',');
        CHECK(std::stod(line.substr(last + 1)) == 0.0);
    }
}
