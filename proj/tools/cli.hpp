#pragma once

// Command surface shared by the fockpack executable and its tests.
//
// A RunConfig is resolved (defaults filled in) before anything runs, and the
// resolved form is embedded in every report so `fockpack replay` can
// reproduce the result.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fockpack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;

struct RunConfig {
  std::string command;
  double alpha = 1.0;
  double p = 2.0;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::optional<std::string> report;   // lattice only: report path (output holds points)
  std::optional<std::string> csv;      // fock-sweep: CSV table path
  std::optional<std::string> targets;  // fock-interp: "re,im" per line
  std::string kind = "hex";
  double spacing = 1.0;
  double rotation = 0.0;
  double offset_x = 0.0;
  double offset_y = 0.0;
  std::optional<double> window;
  std::optional<double> pad;
  std::vector<double> radii;
  std::optional<double> zeta_step;
  std::optional<double> grid_step;
  std::optional<double> sigma;
  std::optional<double> r0;
  double perturb = 0.0;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::vector<double> spacings;
  double patch_radius = 4.0;
};

nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

/// Names of all commands, in help order.
const std::vector<std::string>& command_names();

/// Fills defaults that do not depend on input data and rejects missing or
/// conflicting flags. Throws InvalidInput.
void validate(const RunConfig& cfg);

/// Executes the command. Returns the report (tool, version, command,
/// resolved config, result). Writes side outputs (point files, CSV) itself;
/// lattice points go to `out` when no --output is given.
/// Throws InvalidInput / ComputationError.
nlohmann::json execute(const RunConfig& cfg, std::ostream& out);
/// As above, discarding stdout-bound side output.
nlohmann::json execute(const RunConfig& cfg);

/// execute() plus report delivery: the JSON report goes to cfg.output (or
/// cfg.report for lattice) with a 6-significant-digit summary on `out`; with
/// no report path the JSON itself goes to `out`. Maps errors to exit codes,
/// printing the message on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv[0] is skipped).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Human-readable rendering of a result object, numbers with 6 significant digits.
std::string summarize(const nlohmann::json& result);

}  // namespace fockpack::cli
