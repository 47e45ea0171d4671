#include "cli/driver.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cli/config.h"
#include "cli/manifest.h"
#include "cli/tasks.h"

namespace cli {

namespace {

/// Runs the tasks on a bounded worker pool.  Each worker claims the next
/// unclaimed index; results land in pre-sized slots, so aggregation
/// stays deterministic regardless of completion order.  With fail_fast,
/// a failure stops workers from claiming further tasks (tasks already
/// running finish; unclaimed ones are marked skipped).
std::vector<TaskStatus> run_tasks(const TaskContext& ctx,
                                  const std::vector<std::string>& stems,
                                  int threads, bool fail_fast) {
  const std::size_t count = ctx.config->tasks.size();
  std::vector<TaskStatus> results(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      if (stop.load()) {
        TaskStatus st;
        st.index = static_cast<int>(i);
        st.type = task_type_name(ctx.config->tasks[i].type);
        st.status = "skipped";
        st.message = "not run: an earlier task failed (fail-fast)";
        results[i] = std::move(st);
        continue;
      }
      results[i] = run_task(ctx, i, stems[i]);
      if (fail_fast && results[i].status != "ok") stop.store(true);
    }
  };

  const int pool = std::clamp<int>(threads, 1, static_cast<int>(count ? count : 1));
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(pool));
    for (int t = 0; t < pool; ++t) workers.emplace_back(worker);
    for (std::thread& w : workers) w.join();
  }
  return results;
}

int run_config_command(const std::string& config_path, const std::string& out_override,
                       int threads, bool fail_fast,
                       const std::string& only_type) {
  ExperimentConfig config;
  try {
    config = load_config_file(config_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  if (!only_type.empty()) {
    std::vector<TaskSpec> filtered;
    for (const TaskSpec& t : config.tasks) {
      if (task_type_name(t.type) == only_type) filtered.push_back(t);
    }
    if (filtered.empty() && only_type == "verify") {
      filtered.push_back(TaskSpec{.type = TaskType::Verify});
    }
    if (filtered.empty()) {
      std::fprintf(stderr, "config error: no %s task configured\n",
                   only_type.c_str());
      return 2;
    }
    config.tasks = std::move(filtered);
  }

  RunManifest manifest;
  manifest.config_hash = fnv1a_hex(config.raw);
  manifest.started = utc_timestamp();

  TaskContext ctx;
  ctx.config = &config;
  ctx.out_dir = out_override.empty() ? config.output.directory : out_override;
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "config error: cannot create output directory %s\n",
                 ctx.out_dir.string().c_str());
    return 2;
  }

  const std::vector<std::string> stems = task_file_stems(config.tasks);
  manifest.tasks = run_tasks(ctx, stems, threads, fail_fast);
  manifest.finished = utc_timestamp();

  bool all_ok = true;
  for (const TaskStatus& st : manifest.tasks) {
    for (const std::string& f : st.outputs) manifest.outputs.push_back(f);
    if (st.status != "ok") all_ok = false;
    std::printf("[%d] %s: %s%s%s\n", st.index, st.type.c_str(),
                st.status.c_str(), st.message.empty() ? "" : " - ",
                st.message.c_str());
  }
  std::sort(manifest.outputs.begin(), manifest.outputs.end());
  manifest.outputs.push_back("manifest.json");

  const std::filesystem::path mpath = ctx.out_dir / "manifest.json";
  {
    std::ofstream out(mpath, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "error: cannot write %s\n", mpath.string().c_str());
      return 1;
    }
    out << manifest_json(manifest);
  }
  std::printf("wrote %s (%zu files)\n", mpath.string().c_str(),
              manifest.outputs.size());
  return all_ok ? 0 : 1;
}

int demo_recurrence(int n, const std::string& scalar) {
  TaskSpec task;
  task.type = TaskType::RecurrenceDemo;
  task.n = n;
  if (!scalar.empty()) {
    std::istringstream in(scalar);
    char comma = 0;
    if (!(in >> task.scalar[0] >> comma >> task.scalar[1]) || comma != ',') {
      std::fprintf(stderr, "config error: --scalar expects \"a,b\"\n");
      return 2;
    }
  }
  if (n < 1 || n > 25) {
    std::fprintf(stderr, "config error: --n must lie in 1..25\n");
    return 2;
  }

  ExperimentConfig config;
  config.tasks.push_back(task);
  TaskContext ctx;
  ctx.config = &config;
  ctx.out_dir = std::filesystem::temp_directory_path();
  const TaskStatus st = run_task(ctx, 0, "recurrence_demo");
  // The demo is a print, not a file product: drop the scratch output.
  for (const std::string& f : st.outputs) {
    std::error_code ec;
    std::filesystem::remove(ctx.out_dir / f, ec);
  }
  std::printf("%s\n", st.message.c_str());
  return st.status == "ok" ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Fiber-model batch runner: solves, wave-function tables, "
               "certification suites, infrared sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  int threads = 1;
  bool fail_fast = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "experiment config file")
        ->required();
    cmd->add_option("--out", out_override, "override output.directory");
    cmd->add_option("--threads", threads, "task worker pool size")
        ->check(CLI::Range(1, 64));
    cmd->add_flag("--fail-fast", fail_fast,
                  "stop scheduling tasks after the first failure");
  };

  CLI::App* run = app.add_subcommand("run", "run every configured task");
  add_common(run);
  CLI::App* sweep =
      app.add_subcommand("sweep", "run only the config's sweep tasks");
  add_common(sweep);
  CLI::App* verify =
      app.add_subcommand("verify",
                         "run only the verify tasks (or a default one)");
  add_common(verify);

  int demo_n = 10;
  std::string demo_scalar;
  CLI::App* demo = app.add_subcommand(
      "demo-recurrence", "print the closed-form value and monomial count");
  demo->add_option("--n", demo_n, "recurrence index (1..25)");
  demo->add_option("--scalar", demo_scalar,
                   "scalar coefficients \"a,b\" (default 1,1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (demo->parsed()) return demo_recurrence(demo_n, demo_scalar);
  const std::string only = sweep->parsed()   ? "sweep"
                           : verify->parsed() ? "verify"
                                              : "";
  return run_config_command(config_path, out_override, threads, fail_fast,
                            only);
}

}  // namespace cli
