#include "cli/manifest.h"

#include <cstdint>
#include <ctime>

#include <json.hpp>

namespace cli {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["config_hash"] = m.config_hash;
  j["code_version"] = m.code_version;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["tasks"] = nlohmann::ordered_json::array();
  for (const TaskStatus& t : m.tasks) {
    nlohmann::ordered_json task;
    task["index"] = t.index;
    task["type"] = t.type;
    task["status"] = t.status;
    task["message"] = t.message;
    task["outputs"] = t.outputs;
    j["tasks"].push_back(std::move(task));
  }
  j["outputs"] = m.outputs;
  return j.dump(2) + "\n";
}

}  // namespace cli
