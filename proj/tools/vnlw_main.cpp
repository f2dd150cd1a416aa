#include "vnlw/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"vnlw: pseudo-spectral viscous nonlinear wave simulator on the torus"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "run a dynamics config");
    sim->add_option("config", config_path, "JSON run config")->required();

    std::string experiment;
    std::string verify_out = ".";
    std::vector<std::string> extras;
    auto* ver = app.add_subcommand("verify", "run a named verification experiment");
    ver->add_option("experiment", experiment, "experiment name")->required();
    ver->add_option("--out", verify_out, "report output directory");
    ver->allow_extras();

    double p = 0.0, delta = 0.5, s = 0.0;
    auto* exp = app.add_subcommand("exponents", "closed-form exponent table");
    exp->add_option("--p", p, "nonlinearity degree")->required();
    exp->add_option("--delta", delta, "case-split parameter");
    exp->add_option("--s", s, "data regularity");
    std::string exp_json;
    exp->add_option("--json", exp_json, "also write the table to this JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : vnlw::kExitUsage;
    }

    try {
        if (sim->parsed()) {
            return vnlw::run_simulate(config_path);
        }
        if (ver->parsed()) {
            std::map<std::string, std::string> overrides;
            const auto& rem = ver->remaining();
            for (std::size_t i = 0; i + 1 < rem.size(); i += 2) {
                std::string key = rem[i];
                if (key.rfind("--", 0) != 0) {
                    std::cerr << "expected --key value overrides, got: " << key << "\n";
                    return vnlw::kExitUsage;
                }
                overrides[key.substr(2)] = rem[i + 1];
            }
            if (rem.size() % 2 != 0) {
                std::cerr << "dangling override token: " << rem.back() << "\n";
                return vnlw::kExitUsage;
            }
            return vnlw::run_verify(experiment, overrides, verify_out);
        }
        if (exp->parsed()) {
            std::string js;
            const int rc = vnlw::run_exponents(p, delta, s, &js);
            if (rc == 0 && !exp_json.empty()) {
                std::ofstream os(exp_json, std::ios::trunc);
                os << js << "\n";
            }
            return rc;
        }
    } catch (const vnlw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return vnlw::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
    return vnlw::kExitUsage;
}
