// Run manifest: the machine-readable receipt of one batch invocation.
// It records the config digest, the code version, the wall-clock span,
// one status record per task, and the complete list of files the run
// left in the output directory (the manifest itself included), so a
// reader can audit a results directory without the original terminal.

#pragma once

#include <string>
#include <vector>

namespace cli {

inline constexpr const char* kCodeVersion = "artifact 0.1.0";

struct TaskStatus {
  int index = 0;        ///< position in the declared task list
  std::string type;
  std::string status;   ///< "ok", "failed" (assertion), or "error" (exception)
  std::string message;  ///< failure detail, per-point warnings, demo output
  std::vector<std::string> outputs;  ///< file names relative to the output dir
};

struct RunManifest {
  std::string config_hash;   ///< FNV-1a digest of the raw config bytes
  std::string code_version = kCodeVersion;
  std::string started;       ///< ISO-8601 UTC
  std::string finished;
  std::vector<TaskStatus> tasks;
  std::vector<std::string> outputs;  ///< every file written, manifest included
};

/// 64-bit FNV-1a digest as 16 hex characters.
std::string fnv1a_hex(const std::string& bytes);

/// Current UTC wall-clock time, ISO-8601, seconds precision.
std::string utc_timestamp();

/// Stable JSON serialization (sorted keys, two-space indent).
std::string manifest_json(const RunManifest& m);

}  // namespace cli
