// Task runners: each executes one configured task against the model
// section, writes its output files (with a .schema.txt sidecar per CSV
// documenting the columns), and returns a status row for the manifest.

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "cli/config.h"
#include "cli/manifest.h"

namespace cli {

struct TaskContext {
  const ExperimentConfig* config = nullptr;
  std::filesystem::path out_dir;
};

/// Distinct file stems for the configured tasks: the type name, with an
/// ordinal suffix ("_2", "_3", ...) on repeated types, in declaration
/// order.
std::vector<std::string> task_file_stems(const std::vector<TaskSpec>& tasks);

/// Runs task `index` of the config, writing files under
/// `ctx.out_dir / (stem + ...)`.  Never throws: solver or I/O failures
/// land in the returned status ("error"), failed verification checks in
/// "failed"; the status lists every file written.
TaskStatus run_task(const TaskContext& ctx, std::size_t index,
                    const std::string& stem);

}  // namespace cli
