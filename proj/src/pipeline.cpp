#include "tdaee/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <type_traits>

#include <openssl/evp.h>

#include "tdaee/cloud.hpp"
#include "tdaee/error.hpp"
#include "tdaee/landscape.hpp"
#include "tdaee/parallel.hpp"
#include "tdaee/persistence.hpp"
#include "tdaee/wasserstein.hpp"

namespace tdaee {
namespace {

using nlohmann::json;

SignalKind parse_norm(const std::string& text) {
  if (text == "L1") return SignalKind::L1;
  if (text == "L2") return SignalKind::L2;
  throw Error(ErrorCode::BadConfig, "norms must be L1 or L2, got '" + text + "'");
}

AlignPolicy parse_alignment(const std::string& text) {
  if (text == "intersection") return AlignPolicy::Intersection;
  if (text == "forward_fill") return AlignPolicy::ForwardFill;
  throw Error(ErrorCode::BadConfig, "alignment must be intersection or forward_fill");
}

std::string alignment_name(AlignPolicy policy) {
  return policy == AlignPolicy::Intersection ? "intersection" : "forward_fill";
}

std::string sha256_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open file", path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Invariant, "sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write file", path.string());
  out << contents;
  if (!out) throw Error(ErrorCode::Io, "write failed", path.string());
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct WindowResult {
  std::vector<PersistenceDiagram> finite;  // H0, H1 with essentials substituted
  double l1 = 0.0;
  double l2 = 0.0;
};

WindowResult analyze_window(const PointCloud& points, const RunConfig& config) {
  const auto dm = distance_matrix(points);
  // Past the enclosing radius the complex is a cone: the remaining pairs all
  // have zero persistence, so stopping there leaves the diagrams unchanged.
  std::optional<double> cutoff;
  if (config.maxdim >= 2) cutoff = enclosing_radius(dm);
  const auto filtration = build_filtration(dm, config.maxdim, cutoff);
  const auto raw = diagrams(reduce(filtration), filtration);
  WindowResult r;
  for (const auto& d : raw) r.finite.push_back(with_finite_deaths(d, dm.max_entry()));
  const auto landscape = build_landscape(r.finite[static_cast<std::size_t>(config.dimension)]);
  r.l1 = lp_norm(landscape, 1).value;
  r.l2 = lp_norm(landscape, 2).value;
  return r;
}

// Like json::value, but without nlohmann's silent conversions (-3 to a huge
// size_t, 2.7 to 2).
template <typename T>
T field(const json& j, const char* key, const T& fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  bool ok = false;
  if constexpr (std::is_same_v<T, bool>) {
    ok = it->is_boolean();
  } else if constexpr (std::is_unsigned_v<T>) {
    ok = it->is_number_unsigned() || (it->is_number_integer() && it->template get<long long>() >= 0);
  } else if constexpr (std::is_integral_v<T>) {
    ok = it->is_number_integer();
  } else if constexpr (std::is_floating_point_v<T>) {
    ok = it->is_number();
  } else {
    ok = it->is_string();
  }
  if (!ok) throw Error(ErrorCode::BadConfig, std::string("config field '") + key + "' has the wrong type");
  return it->template get<T>();
}

json episode_json(const Episode& e) {
  return {{"start", e.start.iso()}, {"end", e.end.iso()}, {"length", e.length()}, {"peak", e.peak}};
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::BadConfig, m); };
  if (window < 2) fail("window must be at least 2");
  if (step < 1) fail("step must be positive");
  if (maxdim < 1 || maxdim > kMaxSimplexDimension) fail("maxdim must be between 1 and 3");
  if (dimension < 0 || dimension > 1) fail("dim must be 0 or 1");
  if (maxdim <= dimension) fail("maxdim must exceed dim");
  if (!(p >= 1.0) || !std::isfinite(p)) fail("p must be a finite number >= 1");
  if (!(k_sigma > 0.0) || !(elevated_k > 0.0)) fail("sigma multipliers must be positive");
  if (min_run < 1) fail("min_run must be positive");
  if (merge_gap_days < 0) fail("merge_gap_days must be non-negative");
  if (threads < 1) fail("threads must be positive");
  for (auto k : norms) {
    if (k == SignalKind::WD) fail("norms must be L1 or L2");
  }
}

void to_json(json& j, const RunConfig& c) {
  json norms = json::array();
  for (auto k : c.norms) norms.push_back(std::string(to_string(k)));
  j = json{{"manifest", c.manifest.generic_string()},
           {"window", c.window},
           {"step", c.step},
           {"maxdim", c.maxdim},
           {"dim", c.dimension},
           {"p", c.p},
           {"norms", norms},
           {"k_sigma", c.k_sigma},
           {"elevated_k", c.elevated_k},
           {"min_run", c.min_run},
           {"quorum", std::string(to_string(c.quorum))},
           {"merge_gap_days", c.merge_gap_days},
           {"alignment", alignment_name(c.alignment)},
           {"standardize", c.standardize},
           {"threads", c.threads},
           {"out", c.out.generic_string()}};
}

void from_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw Error(ErrorCode::BadConfig, "config must be a JSON object");
  static const std::vector<std::string> known{
      "manifest", "window",  "step",  "maxdim",         "dim",       "p",
      "norms",    "k_sigma", "elevated_k", "min_run",   "quorum",    "merge_gap_days",
      "alignment", "standardize", "threads", "out"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::BadConfig, "unknown config key '" + key + "'");
    }
  }
  try {
    RunConfig d;
    c.manifest = field(j, "manifest", d.manifest.string());
    c.window = field(j, "window", d.window);
    c.step = field(j, "step", d.step);
    c.maxdim = field(j, "maxdim", d.maxdim);
    c.dimension = field(j, "dim", d.dimension);
    c.p = field(j, "p", d.p);
    if (j.contains("norms")) {
      c.norms.clear();
      for (const auto& n : j.at("norms")) c.norms.push_back(parse_norm(n.get<std::string>()));
    } else {
      c.norms = d.norms;
    }
    c.k_sigma = field(j, "k_sigma", d.k_sigma);
    c.elevated_k = field(j, "elevated_k", d.elevated_k);
    c.min_run = field(j, "min_run", d.min_run);
    c.quorum = parse_quorum(field(j, "quorum", std::string("any")));
    c.merge_gap_days = field(j, "merge_gap_days", d.merge_gap_days);
    c.alignment = parse_alignment(field(j, "alignment", std::string("intersection")));
    c.standardize = field(j, "standardize", d.standardize);
    c.threads = field(j, "threads", d.threads);
    c.out = field(j, "out", d.out.string());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadConfig, e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadConfig, "cannot open config", path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadConfig, e.what(), path.string());
  }
  RunConfig config = doc.get<RunConfig>();
  if (config.manifest.empty()) throw Error(ErrorCode::BadConfig, "config needs a manifest", path.string());
  if (config.manifest.is_relative()) config.manifest = path.parent_path() / config.manifest;
  config.validate();
  return config;
}

RunSummary run(const RunConfig& config) {
  config.validate();
  const auto entries = load_manifest(config.manifest);
  std::vector<PriceSeries> prices;
  prices.reserve(entries.size());
  for (const auto& e : entries) prices.push_back(load_csv(e.path, e.csv, e.name));
  const auto table = align(prices, config.alignment);
  auto returns = log_returns(table);
  if (config.standardize) returns = standardize(returns);
  const auto cloud = build_cloud(returns);

  const WindowSpec spec{config.window, config.step};
  const std::size_t count = window_count(cloud.size(), spec);
  if (count < 3) {
    throw Error(ErrorCode::WindowTooLarge,
                "window leaves " + std::to_string(count) + " positions; at least 3 are needed");
  }

  std::vector<WindowResult> results(count);
  parallel_for(count, config.threads, [&](std::size_t k) {
    results[k] = analyze_window(cloud.slice(k * spec.step, spec.size), config);
  });

  std::vector<Date> starts(count), ends(count);
  for (std::size_t k = 0; k < count; ++k) {
    starts[k] = returns.dates[k * spec.step];
    ends[k] = returns.dates[k * spec.step + spec.size - 1];
  }

  RunSummary summary;
  summary.points = cloud.size();
  summary.windows = count;
  const SignalParams params{config.window, config.p, config.dimension};
  for (const auto kind : config.norms) {
    SignalSeries s;
    s.kind = kind;
    s.times = ends;
    s.params = params;
    for (const auto& r : results) s.values.push_back(kind == SignalKind::L1 ? r.l1 : r.l2);
    summary.signals.push_back(std::move(s));
  }
  std::vector<PersistenceDiagram> selected;
  selected.reserve(count);
  for (const auto& r : results) selected.push_back(r.finite[static_cast<std::size_t>(config.dimension)]);
  auto wd = consecutive_distances(selected, ends, config.p, config.threads);
  wd.params = params;
  summary.signals.push_back(std::move(wd));

  for (const auto& s : summary.signals) summary.reports.push_back(threshold(s, config.k_sigma));
  summary.events = classify_events(summary.reports, config.quorum, config.merge_gap_days);

  // Artifacts.
  std::error_code ec;
  std::filesystem::create_directories(config.out, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory", config.out.string());

  std::ostringstream diag_csv;
  diag_csv << "window_start,dim,birth,death,essential\n";
  for (std::size_t k = 0; k < count; ++k) {
    for (const auto& d : results[k].finite) write_diagram_rows(diag_csv, starts[k].iso(), d);
  }
  write_file(config.out / "diagrams.csv", diag_csv.str());

  std::ostringstream norms_csv;
  norms_csv << "window,start,end,L1,L2\n";
  for (std::size_t k = 0; k < count; ++k) {
    norms_csv << k << ',' << starts[k].iso() << ',' << ends[k].iso() << ','
              << fmt17(results[k].l1) << ',' << fmt17(results[k].l2) << '\n';
  }
  write_file(config.out / "norms.csv", norms_csv.str());

  const auto& wd_series = summary.signals.back();
  std::ostringstream wd_csv;
  wd_csv << "window,from_end,to_end,distance\n";
  for (std::size_t t = 0; t < wd_series.size(); ++t) {
    wd_csv << t + 1 << ',' << ends[t].iso() << ',' << ends[t + 1].iso() << ','
           << fmt17(wd_series.values[t]) << '\n';
  }
  write_file(config.out / "wasserstein.csv", wd_csv.str());

  json signals = json::array();
  for (std::size_t i = 0; i < summary.signals.size(); ++i) {
    const auto& s = summary.signals[i];
    const auto& r = summary.reports[i];
    std::ostringstream csv;
    write_signal_csv(csv, s, r);
    write_file(config.out / ("signal_" + std::string(to_string(s.kind)) + ".csv"), csv.str());

    json crossings = json::array();
    for (const auto& c : r.crossings) crossings.push_back({{"date", c.date.iso()}, {"value", c.value}});
    json episodes = json::array();
    for (const auto& e : r.episodes) episodes.push_back(episode_json(e));
    json elevated = json::array();
    for (const auto& e : elevated_periods(s, config.elevated_k, config.min_run, config.k_sigma)) {
      elevated.push_back(episode_json(e));
    }
    signals.push_back({{"kind", std::string(to_string(s.kind))},
                       {"length", s.size()},
                       {"mean", r.mean},
                       {"stddev", r.stddev},
                       {"k_sigma", r.k_sigma},
                       {"threshold", r.threshold},
                       {"crossings", crossings},
                       {"episodes", episodes},
                       {"elevated_k", config.elevated_k},
                       {"elevated_periods", elevated}});
  }
  json events = json::array();
  for (const auto& ev : summary.events.events) {
    json support = json::array();
    for (const auto& sup : ev.support) {
      json dates = json::array();
      for (const auto& d : sup.crossing_dates) dates.push_back(d.iso());
      support.push_back({{"signal", std::string(to_string(sup.kind))}, {"crossing_dates", dates}});
    }
    events.push_back({{"label", "ExtremeEvent"},
                      {"start", ev.start.iso()},
                      {"end", ev.end.iso()},
                      {"support", support}});
  }
  const json detection{{"quorum", std::string(to_string(config.quorum))},
                       {"signals", signals},
                       {"events", events}};
  write_file(config.out / "detection.json", detection.dump(2) + "\n");

  json config_echo = config;
  config_echo.erase("out");
  json inputs = json::array();
  for (const auto& e : entries) {
    inputs.push_back({{"name", e.name},
                      {"file", e.path.filename().string()},
                      {"sha256", sha256_hex(e.path)}});
  }
  const json metadata{{"version", std::string(kVersion)},
                      {"config", config_echo},
                      {"inputs", inputs},
                      {"series", table.series.size()},
                      {"aligned_dates", table.length()},
                      {"points", cloud.size()},
                      {"windows", count}};
  write_file(config.out / "run_metadata.json", metadata.dump(2) + "\n");
  return summary;
}

std::string demo_square(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  }
  const auto cloud = PointCloud::from_points(
      {{2 * scale, 2 * scale}, {2 * scale, 6 * scale}, {6 * scale, 2 * scale}, {6 * scale, 6 * scale}});
  const auto dgms = rips_diagrams(cloud, 2);
  std::ostringstream out;
  out << "points:";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out << " (" << fmt17(cloud.point(i)[0]) << ", " << fmt17(cloud.point(i)[1]) << ")";
  }
  out << '\n';
  for (const auto& d : dgms) {
    out << 'H' << d.dimension << ':';
    if (d.empty()) out << " (none)";
    out << '\n';
    for (const auto& p : d.points) {
      out << "  (" << fmt17(p.birth) << ", " << (p.essential ? std::string("inf") : fmt17(p.death))
          << ")\n";
    }
  }
  return out.str();
}

}  // namespace tdaee
