#pragma once

// JSON renderings of threads, scenario specs and conflict reports.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "trollscope/pipeline.hpp"
#include "trollscope/simulator.hpp"

namespace trollscope {

inline constexpr const char* kToolVersion = "0.1.0";

/// File system failures (missing file, unwritable directory).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Provenance of a simulated thread.
struct GeneratorInfo {
  std::string algorithm;
  std::uint64_t seed = 0;
};

/// Thread file:
///   { "topic_count": N, "relevant_topic": i, "users": [...],
///     "messages": [ { "rank": 1, "author": "U1",
///                     "bba": [ {"set": ["Topic_1"], "mass": 0.97}, ... ] } ],
///     "generator": { "algorithm": ..., "seed": ... } }      (optional)
nlohmann::json thread_to_json(const Thread& thread, const std::optional<GeneratorInfo>& generator = {});
/// Shape errors throw kParse; content errors keep their own code.
Thread thread_from_json(const nlohmann::json& doc);

nlohmann::json scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const nlohmann::json& doc);

struct RunMetadata {
  std::string tool_version = kToolVersion;
  std::string input;
  double elapsed_ms = 0.0;
  std::string generated_at;  // ISO-8601 UTC
};

struct ReportDocument {
  ConflictReport report;
  RunMetadata run;
};

/// Everything except the "run" object is a pure function of the report.
nlohmann::json report_to_json(const ReportDocument& doc);
ReportDocument report_from_json(const nlohmann::json& doc);

/// Throws IoError, or Error(kParse) for text that is not JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace trollscope
