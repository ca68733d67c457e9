#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgap/envelope.hpp"
#include "pgap/integration.hpp"

namespace pgap {

// Resolved invocation of one CLI subcommand. The same struct drives the
// library entry points so tests can run commands without spawning processes.
struct RunConfig {
    std::string command;        // integrate | volume | delta | sweep | verify | envelope-export
    std::string function_spec;  // inline JSON or path
    std::string domain_spec;    // inline JSON or path
    MuKind mu = MuKind::concave_envelope;
    std::vector<double> u_values;
    std::uint64_t seed = 42;
    long long samples = 1'000'000;
    std::string format = "csv";  // csv | json
    std::string out_path;        // empty writes to the stream passed in
};

nlohmann::json config_to_json(const RunConfig& cfg);

int run_integrate(const RunConfig& cfg, std::ostream& out);
int run_volume(const RunConfig& cfg, std::ostream& out);
int run_delta(const RunConfig& cfg, std::ostream& out);
int run_sweep(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, std::ostream& out);
int run_envelope_export(const RunConfig& cfg, std::ostream& out);

// Dispatches on cfg.command and maps exceptions to exit codes:
// 0 success, 2 malformed input or spec, 3 numerical inconsistency/overflow.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace pgap
