#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tdaee/detect.hpp"
#include "tdaee/ingest.hpp"
#include "tdaee/signal.hpp"

namespace tdaee {

inline constexpr std::string_view kVersion = "0.1.0";

struct RunConfig {
  std::filesystem::path manifest;
  std::size_t window = 60;
  std::size_t step = 1;
  int maxdim = 2;
  int dimension = 1;  // homology dimension feeding the signals
  double p = 2.0;     // Wasserstein degree
  std::vector<SignalKind> norms{SignalKind::L1, SignalKind::L2};
  double k_sigma = 4.0;
  double elevated_k = 2.0;
  std::size_t min_run = 3;
  Quorum quorum = Quorum::Any;
  int merge_gap_days = 7;
  AlignPolicy alignment = AlignPolicy::Intersection;
  bool standardize = false;
  unsigned threads = 1;
  std::filesystem::path out = "out";

  // Throws BadConfig for out-of-range fields.
  void validate() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

// Reads a JSON config. A relative manifest path is resolved against the
// config file's directory. Throws BadConfig or Io.
RunConfig load_config(const std::filesystem::path& path);

struct RunSummary {
  std::size_t points = 0;
  std::size_t windows = 0;
  std::vector<SignalSeries> signals;
  std::vector<ThresholdReport> reports;
  EventSummary events;
};

// The full pipeline: load and align prices, log-returns, sliding windows,
// Rips persistence per window, landscape norms, consecutive W_D, detection.
// Writes diagrams.csv, norms.csv, wasserstein.csv, signal_<kind>.csv,
// detection.json and run_metadata.json into config.out.
RunSummary run(const RunConfig& config);

// Persistence of the four-point square {(2,2),(2,6),(6,2),(6,6)} scaled by
// `scale`, formatted for display.
std::string demo_square(double scale = 1.0);

}  // namespace tdaee
