#include "cli/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cli {

using nlohmann::json;

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error(path.empty() ? message : path + ": " + message),
      path_(std::move(path)) {}

const char* task_type_name(TaskType t) {
  switch (t) {
    case TaskType::GroundState: return "ground_state";
    case TaskType::WaveFunctions: return "wavefunctions";
    case TaskType::Verify: return "verify";
    case TaskType::Sweep: return "sweep";
    case TaskType::RecurrenceDemo: return "recurrence_demo";
  }
  return "?";
}

namespace {

std::string quoted(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Rejects keys outside the allowed set so typos surface as errors with
// their path instead of silently keeping a default.
void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw ConfigError(path.empty() ? key : path + "." + key,
                        "unknown field");
    }
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_number_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::string> as_string_list(const json& v,
                                        const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_string(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

GridSpec parse_grid(const json& g, const std::string& path) {
  GridSpec spec;
  check_keys(g, path, {"type", "shells", "thickness", "fraction"});
  if (const json* v = find(g, "type")) spec.type = as_string(*v, path + ".type");
  if (spec.type != "shells" && spec.type != "ladder" &&
      spec.type != "volume_shells" && spec.type != "volume_ladder") {
    throw ConfigError(path + ".type",
                      "unknown grid type \"" + spec.type +
                          "\" (shells | ladder | volume_shells | volume_ladder)");
  }
  if (const json* v = find(g, "shells")) {
    spec.shells = as_int(*v, path + ".shells");
    if (spec.shells < 1) throw ConfigError(path + ".shells", "need at least one shell");
  }
  if (const json* v = find(g, "thickness")) {
    spec.thickness = as_number(*v, path + ".thickness");
    if (spec.thickness <= 0) throw ConfigError(path + ".thickness", "must be positive");
  }
  if (const json* v = find(g, "fraction")) {
    spec.fraction = as_number(*v, path + ".fraction");
    if (spec.fraction <= 0) throw ConfigError(path + ".fraction", "must be positive");
  }
  return spec;
}

ModelSection parse_model(const json& m) {
  ModelSection model;
  const std::string path = "model";
  check_keys(m, path,
             {"P", "sigma", "kappa", "lambda", "alpha_bar", "eps0",
              "lambda_ceiling", "quadratic", "n_max", "gs_tol", "gs_max_iter",
              "grid"});
  if (const json* v = find(m, "P")) {
    const auto p = as_number_list(*v, path + ".P");
    if (p.size() != 3) throw ConfigError(path + ".P", "expected three components");
    model.P = {p[0], p[1], p[2]};
  }
  if (const json* v = find(m, "sigma")) model.sigma = as_number(*v, path + ".sigma");
  if (const json* v = find(m, "kappa")) model.kappa = as_number(*v, path + ".kappa");
  if (const json* v = find(m, "lambda")) model.lambda = as_number(*v, path + ".lambda");
  if (const json* v = find(m, "alpha_bar"))
    model.alpha_bar = as_number(*v, path + ".alpha_bar");
  if (const json* v = find(m, "eps0")) model.eps0 = as_number(*v, path + ".eps0");
  if (const json* v = find(m, "lambda_ceiling"))
    model.lambda_ceiling = as_number(*v, path + ".lambda_ceiling");
  if (const json* v = find(m, "quadratic"))
    model.quadratic = as_bool(*v, path + ".quadratic");
  if (const json* v = find(m, "n_max")) {
    model.n_max = as_int(*v, path + ".n_max");
    if (model.n_max < 0) throw ConfigError(path + ".n_max", "must be >= 0");
  }
  if (const json* v = find(m, "gs_tol")) {
    model.gs_tol = as_number(*v, path + ".gs_tol");
    if (model.gs_tol <= 0) throw ConfigError(path + ".gs_tol", "must be positive");
  }
  if (const json* v = find(m, "gs_max_iter")) {
    model.gs_max_iter = as_int(*v, path + ".gs_max_iter");
    if (model.gs_max_iter < 1) throw ConfigError(path + ".gs_max_iter", "must be >= 1");
  }
  if (const json* v = find(m, "grid")) model.grid = parse_grid(*v, path + ".grid");

  // Range validation, before any solve can start.
  const double pnorm = std::sqrt(model.P[0] * model.P[0] +
                                 model.P[1] * model.P[1] +
                                 model.P[2] * model.P[2]);
  if (!(pnorm < 1.0 / 3.0)) {
    throw ConfigError(path + ".P",
                      "|P| = " + quoted(pnorm) +
                          " violates the momentum constraint S = {P : |P| < 1/3}");
  }
  if (!(model.kappa > 0)) throw ConfigError(path + ".kappa", "must be positive");
  if (!(model.sigma > 0) || model.sigma > model.kappa) {
    throw ConfigError(path + ".sigma",
                      "must lie in (0, kappa]; got " + quoted(model.sigma));
  }
  if (!(model.lambda_ceiling > 0)) {
    throw ConfigError(path + ".lambda_ceiling", "must be positive");
  }
  if (model.lambda < 0) {
    throw ConfigError(path + ".lambda", "must be nonnegative");
  }
  if (std::abs(model.lambda) > model.lambda_ceiling) {
    throw ConfigError(path + ".lambda",
                      "|lambda| = " + quoted(std::abs(model.lambda)) +
                          " exceeds the configured ceiling " +
                          quoted(model.lambda_ceiling));
  }
  if (model.alpha_bar < 0 || model.alpha_bar > 0.5) {
    throw ConfigError(path + ".alpha_bar", "must lie in [0, 1/2]");
  }
  if (!(model.eps0 > 0) || model.eps0 >= 1) {
    throw ConfigError(path + ".eps0", "must lie in (0, 1)");
  }
  return model;
}

TaskSpec parse_task(const json& t, const ModelSection& model,
                    const std::string& path) {
  TaskSpec task;
  if (t.is_string()) {
    // Shorthand: "verify" instead of {"type": "verify"}.
    return parse_task(json{{"type", t.get<std::string>()}}, model, path);
  }
  if (!t.is_object()) throw ConfigError(path, "expected a task object");
  const json* type = find(t, "type");
  if (!type) throw ConfigError(path + ".type", "missing");
  const std::string name = as_string(*type, path + ".type");

  if (name == "ground_state") {
    task.type = TaskType::GroundState;
    check_keys(t, path, {"type"});
  } else if (name == "wavefunctions") {
    task.type = TaskType::WaveFunctions;
    check_keys(t, path, {"type", "n_limit", "methods"});
    if (const json* v = find(t, "n_limit")) {
      task.n_limit = as_int(*v, path + ".n_limit");
      if (task.n_limit < 1 || task.n_limit > 4) {
        throw ConfigError(path + ".n_limit", "must lie in 1..4");
      }
    }
    if (const json* v = find(t, "methods")) {
      task.methods = as_string_list(*v, path + ".methods");
      if (task.methods.empty()) throw ConfigError(path + ".methods", "empty");
      for (std::size_t i = 0; i < task.methods.size(); ++i) {
        const std::string& m = task.methods[i];
        if (m != "direct" && m != "froehlich" && m != "novel") {
          throw ConfigError(path + ".methods[" + std::to_string(i) + "]",
                            "unknown method \"" + m + "\"");
        }
      }
    }
  } else if (name == "verify") {
    task.type = TaskType::Verify;
    check_keys(t, path, {"type"});
  } else if (name == "sweep") {
    task.type = TaskType::Sweep;
    check_keys(t, path,
               {"type", "sigmas", "lambdas", "quantities", "n_max",
                "shell_fraction", "gs_tol", "gs_max_iter", "cg_tol",
                "delta_points", "fit_threshold", "zero_floor"});
    const json* sig = find(t, "sigmas");
    if (!sig) throw ConfigError(path + ".sigmas", "missing");
    task.sigmas = as_number_list(*sig, path + ".sigmas");
    if (task.sigmas.empty()) throw ConfigError(path + ".sigmas", "empty");
    for (std::size_t i = 0; i < task.sigmas.size(); ++i) {
      if (!(task.sigmas[i] > 0) || !(task.sigmas[i] < model.kappa)) {
        throw ConfigError(path + ".sigmas[" + std::to_string(i) + "]",
                          "must lie in (0, kappa); got " + quoted(task.sigmas[i]));
      }
    }
    const json* lam = find(t, "lambdas");
    if (!lam) throw ConfigError(path + ".lambdas", "missing");
    task.lambdas = as_number_list(*lam, path + ".lambdas");
    if (task.lambdas.empty()) throw ConfigError(path + ".lambdas", "empty");
    for (std::size_t i = 0; i < task.lambdas.size(); ++i) {
      if (task.lambdas[i] < 0) {
        throw ConfigError(path + ".lambdas[" + std::to_string(i) + "]",
                          "must be nonnegative");
      }
      if (std::abs(task.lambdas[i]) > model.lambda_ceiling) {
        throw ConfigError(path + ".lambdas[" + std::to_string(i) + "]",
                          "|lambda| exceeds the configured ceiling " +
                              quoted(model.lambda_ceiling));
      }
    }
    if (const json* v = find(t, "quantities")) {
      task.sweep.quantities = as_string_list(*v, path + ".quantities");
      if (task.sweep.quantities.empty()) {
        throw ConfigError(path + ".quantities", "empty");
      }
      const auto& known = verif::sweep_quantity_ids();
      for (std::size_t i = 0; i < task.sweep.quantities.size(); ++i) {
        const std::string& q = task.sweep.quantities[i];
        if (std::find(known.begin(), known.end(), q) == known.end()) {
          throw ConfigError(path + ".quantities[" + std::to_string(i) + "]",
                            "unknown sweep quantity \"" + q + "\"");
        }
      }
    }
    if (const json* v = find(t, "n_max")) {
      task.sweep.n_max = as_int(*v, path + ".n_max");
      if (task.sweep.n_max < 1) throw ConfigError(path + ".n_max", "must be >= 1");
    }
    if (const json* v = find(t, "shell_fraction")) {
      task.sweep.shell_fraction = as_number(*v, path + ".shell_fraction");
      if (!(task.sweep.shell_fraction > 0)) {
        throw ConfigError(path + ".shell_fraction", "must be positive");
      }
    }
    if (const json* v = find(t, "gs_tol"))
      task.sweep.gs_tol = as_number(*v, path + ".gs_tol");
    if (const json* v = find(t, "gs_max_iter"))
      task.sweep.gs_max_iter = as_int(*v, path + ".gs_max_iter");
    if (const json* v = find(t, "cg_tol"))
      task.sweep.cg_tol = as_number(*v, path + ".cg_tol");
    if (const json* v = find(t, "delta_points")) {
      task.sweep.delta_points = as_int(*v, path + ".delta_points");
      if (task.sweep.delta_points < 2) {
        throw ConfigError(path + ".delta_points", "must be >= 2");
      }
    }
    if (const json* v = find(t, "fit_threshold"))
      task.sweep.fit_threshold = as_number(*v, path + ".fit_threshold");
    if (const json* v = find(t, "zero_floor"))
      task.sweep.zero_floor = as_number(*v, path + ".zero_floor");
  } else if (name == "recurrence_demo") {
    task.type = TaskType::RecurrenceDemo;
    check_keys(t, path, {"type", "n", "scalar"});
    if (const json* v = find(t, "n")) {
      task.n = as_int(*v, path + ".n");
      if (task.n < 1 || task.n > 25) {
        throw ConfigError(path + ".n", "must lie in 1..25");
      }
    }
    if (const json* v = find(t, "scalar")) {
      const auto s = as_number_list(*v, path + ".scalar");
      if (s.size() != 2) throw ConfigError(path + ".scalar", "expected [a, b]");
      task.scalar = {s[0], s[1]};
    }
  } else {
    throw ConfigError(path + ".type",
                      "unknown task type \"" + name +
                          "\" (ground_state | wavefunctions | verify | sweep "
                          "| recurrence_demo)");
  }
  return task;
}

OutputSection parse_output(const json& o) {
  OutputSection out;
  const std::string path = "output";
  check_keys(o, path, {"directory", "formats"});
  if (const json* v = find(o, "directory")) {
    out.directory = as_string(*v, path + ".directory");
    if (out.directory.empty()) throw ConfigError(path + ".directory", "empty");
  }
  if (const json* v = find(o, "formats")) {
    out.formats = as_string_list(*v, path + ".formats");
    for (std::size_t i = 0; i < out.formats.size(); ++i) {
      if (out.formats[i] != "csv") {
        throw ConfigError(path + ".formats[" + std::to_string(i) + "]",
                          "only \"csv\" is supported");
      }
    }
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "top level must be an object");
  check_keys(root, "", {"model", "tasks", "task", "output"});

  ExperimentConfig config;
  config.raw = text;
  if (const json* m = find(root, "model")) {
    if (!m->is_object()) throw ConfigError("model", "expected an object");
    config.model = parse_model(*m);
  } else {
    config.model = parse_model(json::object());
  }

  const json* tasks = find(root, "tasks");
  const json* task = find(root, "task");
  if (tasks && task) throw ConfigError("task", "declare either task or tasks, not both");
  if (tasks) {
    if (!tasks->is_array()) throw ConfigError("tasks", "expected an array");
    if (tasks->empty()) throw ConfigError("tasks", "empty");
    for (std::size_t i = 0; i < tasks->size(); ++i) {
      config.tasks.push_back(parse_task(
          (*tasks)[i], config.model, "tasks[" + std::to_string(i) + "]"));
    }
  } else if (task) {
    config.tasks.push_back(parse_task(*task, config.model, "task"));
  } else {
    throw ConfigError("tasks", "missing (declare tasks or task)");
  }

  if (const json* o = find(root, "output")) {
    if (!o->is_object()) throw ConfigError("output", "expected an object");
    config.output = parse_output(*o);
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw ConfigError(filename, "cannot read config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace cli
