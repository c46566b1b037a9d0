// Command-line front end: `run`, `demo-square`, `version`.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tdaee/error.hpp"
#include "tdaee/pipeline.hpp"

namespace {

int exit_code(tdaee::ErrorCategory category) {
  switch (category) {
    case tdaee::ErrorCategory::Input: return 1;
    case tdaee::ErrorCategory::Config: return 2;
    case tdaee::ErrorCategory::Internal: return 3;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-window persistent homology and extreme-event detection for price series"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::size_t> window;
  std::optional<double> p;
  std::optional<int> dim;
  std::optional<double> sigma;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
  auto* run = app.add_subcommand("run", "Run the pipeline described by a JSON config");
  run->add_option("--config", config_path, "Config file (JSON)")->required();
  run->add_option("--window", window, "Window size in trading days");
  run->add_option("--p", p, "Wasserstein degree");
  run->add_option("--dim", dim, "Homology dimension used for the signals (0 or 1)");
  run->add_option("--sigma", sigma, "Extreme-event threshold multiplier k in mean + k*sd");
  run->add_option("--threads", threads, "Worker threads for per-window work");
  run->add_option("--out", out, "Output directory");

  double scale = 1.0;
  auto* demo = app.add_subcommand("demo-square", "Persistence of the four-point square example");
  demo->add_option("--scale", scale, "Scale factor applied to the points");

  auto* version = app.add_subcommand("version", "Print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*version) {
      std::cout << "tdaee " << tdaee::kVersion << '\n';
    } else if (*demo) {
      std::cout << tdaee::demo_square(scale);
    } else if (*run) {
      auto config = tdaee::load_config(config_path);
      if (window) config.window = *window;
      if (p) config.p = *p;
      if (dim) config.dimension = *dim;
      if (sigma) config.k_sigma = *sigma;
      if (threads) config.threads = *threads;
      if (out) config.out = *out;
      const auto summary = tdaee::run(config);
      std::cout << "points " << summary.points << ", windows " << summary.windows << ", events "
                << summary.events.events.size() << ", output " << config.out.string() << '\n';
    }
  } catch (const tdaee::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
