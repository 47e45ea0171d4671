// Experiment configuration: a JSON file with three sections.
//
//   model   physical parameters, grid construction, photon cap, solver
//           tolerances
//   tasks   ordered list of work items (ground_state | wavefunctions |
//           verify | sweep | recurrence_demo), each with its own options;
//           a single "task" entry is accepted as shorthand
//   output  directory and formats (csv)
//
// Parsing is strict: unknown keys, wrong types, and out-of-range values
// are reported as ConfigError with the JSON field path, before any solve
// starts.  The momentum check names the constraint set
// S = {P : |P| < 1/3}; the coupling is capped by the configurable
// ceiling model.lambda_ceiling.

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "verification/sweep.h"

namespace cli {

/// Parse or validation failure; `path` locates the offending field
/// ("model.P", "tasks[1].sigmas[0]", ...) and what() includes it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct GridSpec {
  /// "shells" and "ladder" are thin collocation grids (weights carry the
  /// radial thickness); "volume_shells" and "volume_ladder" give each
  /// mode its full dyadic volume weight.
  std::string type = "shells";
  int shells = 2;              ///< shell count for the shells types
  double thickness = 0.0025;   ///< thin-shell radial thickness
  double fraction = 0.005;     ///< thin-ladder thickness fraction
};

struct ModelSection {
  std::array<double, 3> P{0.1, 0.0, 0.0};
  double sigma = 0.05;
  double kappa = 1.0;
  double lambda = 0.1;
  double alpha_bar = 0.0;
  double eps0 = 0.2;
  double lambda_ceiling = 0.5;  ///< configured |lambda| cap
  bool quadratic = true;
  int n_max = 4;
  double gs_tol = 1e-14;
  int gs_max_iter = 900;
  GridSpec grid;
};

enum class TaskType {
  GroundState,
  WaveFunctions,
  Verify,
  Sweep,
  RecurrenceDemo,
};

struct TaskSpec {
  TaskType type = TaskType::GroundState;
  // wavefunctions
  int n_limit = 2;  ///< tabulate all grid tuples with n <= n_limit
  std::vector<std::string> methods{"direct", "froehlich", "novel"};
  // sweep: cutoff and coupling grids plus the sweep options (P, kappa,
  // alpha_bar, eps0 are overwritten from the model section at run time)
  std::vector<double> sigmas;
  std::vector<double> lambdas;
  verif::SweepOptions sweep;
  // recurrence_demo
  int n = 10;
  std::array<double, 2> scalar{1.0, 1.0};
};

struct OutputSection {
  std::string directory = "out";
  std::vector<std::string> formats{"csv"};
};

struct ExperimentConfig {
  ModelSection model;
  std::vector<TaskSpec> tasks;
  OutputSection output;
  std::string raw;  ///< original file bytes (hashed into the manifest)
};

const char* task_type_name(TaskType t);

/// Parses and validates; throws ConfigError on the first problem.
ExperimentConfig parse_config(const std::string& text);

/// Reads the file and parses it; throws ConfigError (path "<file>") when
/// the file cannot be read.
ExperimentConfig load_config_file(const std::string& filename);

}  // namespace cli
