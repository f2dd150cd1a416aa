#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace vnlw {

// exit codes shared by the library runner and the CLI
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitContractionFailed = 2;
constexpr int kExitNormOverflow = 3;
constexpr int kExitUsage = 64;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// drive a run from a JSON config; writes energy.csv, optional snapshots,
// config echo and manifest.json (written last) into the output directory
int run_simulate(const std::string& config_path);

// named verification experiment with --key value overrides; writes a report
// JSON (and a CSV of raw samples when requested) into out_dir
int run_verify(const std::string& experiment,
               const std::map<std::string, std::string>& overrides,
               const std::string& out_dir);

// exponent table printed to stdout and returned as a JSON string
int run_exponents(double p, double delta, double s, std::string* json_out = nullptr);

} // namespace vnlw
