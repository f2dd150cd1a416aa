#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_cmd(const std::string& args, const std::string& log = "/dev/null") {
    const std::string cmd = std::string(VNLW_BIN) + " " + args + " > " + log + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("exponents: table values and the domain guard") {
    CHECK(run_cmd("exponents --p 5 --delta 0.1 --s 0.6 --json cli_exp.json",
                  "cli_exp.log") == 0);
    const std::string out = slurp("cli_exp.log");
    CHECK(out.find("s_crit") != std::string::npos);
    const json j = json::parse(slurp("cli_exp.json"));
    CHECK(j["s_crit"].get<double>() == 0.5);
    CHECK(j["s_p"].get<double>() == 0.5);
    CHECK(j["alpha_bound"].get<double>() == 0.0);

    CHECK(run_cmd("exponents --p 1.0") == 64);
    fs::remove("cli_exp.json");
    fs::remove("cli_exp.log");
}

TEST_CASE("verify: admissible pair failure exits 1 with a report") {
    fs::create_directories("cli_reports");
    CHECK(run_cmd("verify admissible --out cli_reports --q 4 --r 4 --s 0") == 1);
    const json rep = json::parse(slurp("cli_reports/report_admissible.json"));
    CHECK(rep["pass"].get<bool>() == false);
    CHECK(rep["estimates"]["residual"].get<double>() == doctest::Approx(-0.25));

    CHECK(run_cmd("verify admissible --out cli_reports --q 3 --r 3 --s 0") == 0);
    CHECK(run_cmd("verify no-such-experiment") == 64);
    fs::remove_all("cli_reports");
}

TEST_CASE("simulate: linear run completes with monotone quadratic energy") {
    json cfg;
    cfg["grid"] = {{"N", 16}, {"pad", 2.0}};
    cfg["dynamics"] = {{"p", 3.0}, {"sign", "defocusing"}, {"forcing", "none"},
                       {"nonlinearity", false}};
    cfg["time"] = {{"T_final", 1.0}, {"h", 0.05}, {"T_loc", 0.25}};
    cfg["seeds"] = {{"noise", 11}, {"data", 12}};
    cfg["initial"] = {{"kind", "fixture"}, {"s_target", 1.0}, {"amplitude", 1.0}};
    cfg["output"] = {{"directory", "cli_run"}, {"cadence", 0.1}};
    {
        std::ofstream os("cli_linear.json");
        os << cfg.dump(2);
    }
    CHECK(run_cmd("simulate cli_linear.json") == 0);

    std::ifstream csv("cli_run/energy.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,E,quadratic,potential,H1");
    double prev_q = 1e300;
    int rows = 0;
    for (std::string line; std::getline(csv, line);) {
        double t, e, q, pot, h1;
        CHECK(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &e, &q, &pot, &h1) == 5);
        CHECK(q <= prev_q * (1.0 + 1e-12));
        prev_q = q;
        ++rows;
    }
    CHECK(rows >= 10);

    const json man = json::parse(slurp("cli_run/manifest.json"));
    CHECK(man["status"] == "completed");
    CHECK(man["files"].size() >= 2);
    const std::string hash_before = man["files"][0]["hash"].get<std::string>();

    // same config, same seed: byte-identical outputs
    CHECK(run_cmd("simulate cli_linear.json") == 0);
    const json man2 = json::parse(slurp("cli_run/manifest.json"));
    CHECK(man2["files"][0]["hash"].get<std::string>() == hash_before);

    fs::remove("cli_linear.json");
    fs::remove_all("cli_run");
}

TEST_CASE("simulate: focusing overflow exits 3, bad config exits 64") {
    json cfg;
    cfg["grid"] = {{"N", 8}, {"pad", 2.0}};
    cfg["dynamics"] = {{"p", 3.0}, {"sign", "focusing"}, {"forcing", "none"}};
    cfg["time"] = {{"T_final", 5.0}, {"h", 0.025}, {"T_loc", 0.1}};
    cfg["tolerances"] = {{"overflow", 100.0}};
    cfg["seeds"] = {{"noise", 1}, {"data", 2}};
    cfg["initial"] = {{"kind", "bump"}, {"scale", 0.5}, {"amplitude", 4.0}};
    cfg["output"] = {{"directory", "cli_focus"}, {"cadence", 0.1}};
    {
        std::ofstream os("cli_focus.json");
        os << cfg.dump(2);
    }
    CHECK(run_cmd("simulate cli_focus.json") == 3);
    const json man = json::parse(slurp("cli_focus/manifest.json"));
    CHECK(man["status"] == "norm_overflow");
    CHECK(man["end_time"].get<double>() < 5.0);
    fs::remove("cli_focus.json");
    fs::remove_all("cli_focus");

    {
        std::ofstream os("cli_bad.json");
        os << "{ not json";
    }
    CHECK(run_cmd("simulate cli_bad.json") == 64);
    CHECK(run_cmd("simulate cli_missing.json") == 64);
    {
        std::ofstream os("cli_bad2.json");
        os << R"({"grid": {"N": 16}, "dynamics": {"p": "three"}})";
    }
    CHECK(run_cmd("simulate cli_bad2.json") == 64);
    fs::remove("cli_bad.json");
    fs::remove("cli_bad2.json");
}
