#include "tdaee/detect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include "tdaee/error.hpp"

namespace tdaee {
namespace {

void check_series(const SignalSeries& series) {
  if (series.times.size() != series.values.size()) {
    throw Error(ErrorCode::InvalidArgument, "signal times and values differ in length");
  }
  for (std::size_t i = 1; i < series.times.size(); ++i) {
    if (!(series.times[i - 1] < series.times[i])) {
      throw Error(ErrorCode::InvalidArgument, "signal times must be strictly increasing");
    }
  }
}

std::vector<Episode> runs_above(const SignalSeries& series, double level, std::size_t from) {
  std::vector<Episode> out;
  for (std::size_t i = from; i < series.size(); ++i) {
    if (!(series.values[i] > level)) continue;
    if (!out.empty() && out.back().last + 1 == i) {
      auto& e = out.back();
      e.last = i;
      e.end = series.times[i];
      e.peak = std::max(e.peak, series.values[i]);
    } else {
      out.push_back({i, i, series.times[i], series.times[i], series.values[i]});
    }
  }
  return out;
}

}  // namespace

ThresholdReport threshold(const SignalSeries& series, double k_sigma) {
  check_series(series);
  if (series.size() < 2) throw Error(ErrorCode::SeriesTooShort, "need at least two values");
  if (!(k_sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "k_sigma must be positive");
  ThresholdReport r;
  r.kind = series.kind;
  r.k_sigma = k_sigma;
  const auto n = static_cast<double>(series.size());
  double sum = 0.0;
  for (double v : series.values) sum += v;
  r.mean = sum / n;
  double sq = 0.0;
  for (double v : series.values) sq += (v - r.mean) * (v - r.mean);
  r.stddev = std::sqrt(sq / n);
  r.threshold = r.mean + k_sigma * r.stddev;
  r.episodes = runs_above(series, r.threshold, 0);
  for (const auto& e : r.episodes) {
    for (std::size_t i = e.first; i <= e.last; ++i) {
      r.crossings.push_back({i, series.times[i], series.values[i]});
    }
  }
  return r;
}

std::string_view to_string(Quorum quorum) noexcept {
  switch (quorum) {
    case Quorum::Any: return "any";
    case Quorum::Majority: return "majority";
    case Quorum::All: return "all";
  }
  return "?";
}

Quorum parse_quorum(std::string_view text) {
  if (text == "any") return Quorum::Any;
  if (text == "majority") return Quorum::Majority;
  if (text == "all") return Quorum::All;
  throw Error(ErrorCode::BadConfig, "quorum must be any, majority or all");
}

EventSummary classify_events(std::span<const ThresholdReport> reports, Quorum quorum,
                             int merge_gap_days) {
  struct Span {
    Date start, end;
    std::size_t report;
    const Episode* episode;
  };
  std::vector<Span> spans;
  std::set<SignalKind> kinds_present;
  for (std::size_t r = 0; r < reports.size(); ++r) {
    kinds_present.insert(reports[r].kind);
    for (const auto& e : reports[r].episodes) spans.push_back({e.start, e.end, r, &e});
  }
  std::stable_sort(spans.begin(), spans.end(),
                   [](const Span& a, const Span& b) { return a.start < b.start; });

  std::size_t required = 1;
  if (quorum == Quorum::Majority) required = kinds_present.size() / 2 + 1;
  if (quorum == Quorum::All) required = kinds_present.size();

  EventSummary summary;
  std::size_t i = 0;
  while (i < spans.size()) {
    Date end = spans[i].end;
    std::size_t j = i + 1;
    while (j < spans.size() && spans[j].start.serial() - end.serial() <= merge_gap_days) {
      end = std::max(end, spans[j].end);
      ++j;
    }
    std::map<SignalKind, std::set<Date>> support;
    for (std::size_t k = i; k < j; ++k) {
      const auto& rep = reports[spans[k].report];
      auto& dates = support[rep.kind];
      for (const auto& c : rep.crossings) {
        if (c.index >= spans[k].episode->first && c.index <= spans[k].episode->last) {
          dates.insert(c.date);
        }
      }
    }
    if (support.size() >= required) {
      ExtremeEvent ev;
      ev.start = spans[i].start;
      ev.end = end;
      for (const auto& [kind, dates] : support) {
        ev.support.push_back({kind, std::vector<Date>(dates.begin(), dates.end())});
      }
      summary.events.push_back(std::move(ev));
    }
    i = j;
  }
  return summary;
}

std::vector<Episode> elevated_periods(const SignalSeries& series, double k_sigma,
                                      std::size_t min_run, double event_k_sigma) {
  if (min_run == 0) throw Error(ErrorCode::InvalidArgument, "min_run must be positive");
  const auto events = threshold(series, event_k_sigma);
  if (events.episodes.empty()) return {};
  const auto elevated = threshold(series, k_sigma);
  std::vector<Episode> out;
  for (auto& run : runs_above(series, elevated.threshold, events.episodes.back().last + 1)) {
    if (run.length() >= min_run) out.push_back(run);
  }
  return out;
}

void write_signal_csv(std::ostream& out, const SignalSeries& series,
                      const ThresholdReport& report) {
  out << "date,value,mean,threshold,crossing\n";
  char buf[128];
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%d\n", series.values[i], report.mean,
                  report.threshold, series.values[i] > report.threshold ? 1 : 0);
    out << series.times[i].iso() << buf;
  }
}

}  // namespace tdaee
