#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

#ifndef DGOPT_CLI_BIN
#error "test_cli needs -DDGOPT_CLI_BIN=..."
#endif

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "dgopt_cli_out.txt";
    const std::string cmd =
        std::string(DGOPT_CLI_BIN) + " " + args + " > " + out.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream f(out);
    std::ostringstream os;
    os << f.rdbuf();
    return {WEXITSTATUS(rc), os.str()};
}

std::string small_config_file() {
    const fs::path dir = fs::temp_directory_path() / "dgopt_cli_cfg";
    fs::create_directories(dir);
    const fs::path path = dir / "cfg.json";
    std::ofstream f(path);
    f << R"({
        "scenario": "load_profile",
        "network": ")" << dgopt::testing::data_path("ieee33.csv") << R"(",
        "profiles": {
            "load": ")" << dgopt::testing::data_path("load_profile_24h.csv") << R"(",
            "irradiance": ")" << dgopt::testing::data_path("irradiance_24h.csv") << R"(",
            "wind": ")" << dgopt::testing::data_path("wind_speed_24h.csv") << R"("
        },
        "optimizer": "lsa",
        "seeds": [1],
        "out_dir": ")" << (dir / "out").string() << R"(",
        "lsa": {"population": 10, "iterations": 3}
    })";
    return path.string();
}

} // namespace

TEST_CASE("missing config file exits with the config-error code") {
    const CliResult r = run_cli("run --config /nonexistent/cfg.json");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("config error") != std::string::npos);
}

TEST_CASE("powerflow prints the nominal solution") {
    const CliResult r = run_cli("powerflow --network " + dgopt::testing::data_path("ieee33.csv"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("total_loss_kw,202.6771") != std::string::npos);
    CHECK(r.output.find("min_v_pu,0.913090,bus,18") != std::string::npos);
}

TEST_CASE("powerflow --hour without --profile is a config error") {
    const CliResult r =
        run_cli("powerflow --network " + dgopt::testing::data_path("ieee33.csv") + " --hour 5");
    CHECK(r.exit_code == 1);
}

TEST_CASE("powerflow --hour all tabulates the horizon") {
    const CliResult r = run_cli("powerflow --network " + dgopt::testing::data_path("ieee33.csv") +
                                " --profile " + dgopt::testing::data_path("load_profile_24h.csv") +
                                " --hour all");
    CHECK(r.exit_code == 0);
    int rows = 0;
    std::istringstream is(r.output);
    std::string line;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 25); // header + 24 hours
}

TEST_CASE("powerflow on a corrupt network exits with the config-error code") {
    const fs::path bad = fs::temp_directory_path() / "dgopt_bad_net.csv";
    std::ofstream(bad) << "BUS,1,0,0\nBUS,2,10,5\nBRANCH,1,5,5,0.1,0.1,\n";
    const CliResult r = run_cli("powerflow --network " + bad.string());
    CHECK(r.exit_code == 1);
}

TEST_CASE("run and basecase drive a full small study") {
    const std::string cfg = small_config_file();
    const CliResult base = run_cli("basecase --config " + cfg);
    CHECK(base.exit_code == 0);
    CHECK(base.output.find("max line-hour loss") != std::string::npos);

    const CliResult run = run_cli("run --config " + cfg);
    CHECK(run.exit_code == 0);
    CHECK(run.output.find("objective") != std::string::npos);

    const fs::path out = fs::path(cfg).parent_path() / "out";
    CHECK(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "trace_lsa_1.csv"));

    const CliResult cmp = run_cli("compare " + (out / "report.json").string() + " " +
                                  (out / "report.json").string());
    CHECK(cmp.exit_code == 0);
    CHECK(cmp.output.find("lsa") != std::string::npos);
}

TEST_CASE("compare with mismatched scenarios exits with the config-error code") {
    // build a second report under the other scenario
    const std::string cfg = small_config_file();
    run_cli("run --config " + cfg);
    const fs::path dir = fs::temp_directory_path() / "dgopt_cli_cfg2";
    fs::create_directories(dir);
    const fs::path cfg2 = dir / "cfg.json";
    std::ofstream(cfg2) << R"({
        "scenario": "constant_load",
        "network": ")" << dgopt::testing::data_path("ieee33.csv") << R"(",
        "profiles": {
            "irradiance": ")" << dgopt::testing::data_path("irradiance_24h.csv") << R"(",
            "wind": ")" << dgopt::testing::data_path("wind_speed_24h.csv") << R"("
        },
        "optimizer": "lsa",
        "seeds": [1],
        "out_dir": ")" << (dir / "out").string() << R"(",
        "lsa": {"population": 10, "iterations": 3}
    })";
    run_cli("run --config " + cfg2.string());

    const fs::path rep1 = fs::path(cfg).parent_path() / "out" / "report.json";
    const fs::path rep2 = dir / "out" / "report.json";
    const CliResult r = run_cli("compare " + rep1.string() + " " + rep2.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("mismatch") != std::string::npos);
}
