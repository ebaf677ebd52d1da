#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpade/report.hpp"
#include "mpade/schur.hpp"

namespace mpade::cli {

enum ExitCode { kOk = 0, kConfigError = 1, kDegenerate = 2, kNumericFailure = 3, kCheckFailure = 4 };

/// Invalid configuration; key() names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Perturbation of one stored coefficient, applied to the copy the pencil is built from.
struct FaultSpec {
  int step = 0;
  std::string field;  // "a1", "a2" or "b"
  double delta = 0.0;
};

struct ExperimentConfig {
  Measure measure;
  NodeSequence nodes;
  int n_max = 0;
  std::vector<Complex> grid;
  double eps_degenerate = 1e-12;
  std::uint64_t seed = 0;
  std::optional<FaultSpec> fault;
};

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string only;
  bool oracle = false;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
/// Applies --seed and --tol on top of the file values.
void apply_overrides(ExperimentConfig& cfg, const Options& opt);

/// Node generators: "vertical" z_k = base (1 + k spacing) i; "arc" z_k = c + base e^{i pi (k + 1/2) / count}
/// around the interval centre c; "strip" z_k = x_k + base i with x_k the Chebyshev points of the
/// interval shrunk by "width", taken alternately from both ends.
NodeSequence generate_nodes(const nlohmann::json& spec, const Interval& iv, int default_count);

/// Full-precision CSV number.
std::string fmt(double x);
/// Writes through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& content);

nlohmann::json chain_json(const SchurChain& chain);

struct CheckEntry {
  std::string module;
  CheckReport report;
};

/// Invariant suite; `only` restricts to one module name when nonempty.
std::vector<CheckEntry> run_checks(const ExperimentConfig& cfg, const std::string& only);

int cmd_approx(const ExperimentConfig& cfg, const Options& opt);
int cmd_converge(const ExperimentConfig& cfg, const Options& opt);
int cmd_check(const ExperimentConfig& cfg, const Options& opt);
int cmd_pencil(const ExperimentConfig& cfg, const Options& opt);
int cmd_biorth(const ExperimentConfig& cfg, const Options& opt);
int cmd_oracle(const ExperimentConfig& cfg, const Options& opt);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int run(int argc, char** argv);

}  // namespace mpade::cli
