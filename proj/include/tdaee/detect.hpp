#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "tdaee/signal.hpp"

namespace tdaee {

struct Crossing {
  std::size_t index = 0;
  Date date;
  double value = 0.0;
};

// Maximal run of consecutive series positions above a threshold.
struct Episode {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
  Date start;
  Date end;
  double peak = 0.0;

  std::size_t length() const { return last - first + 1; }
};

struct ThresholdReport {
  SignalKind kind = SignalKind::L1;
  double mean = 0.0;
  double stddev = 0.0;  // population
  double k_sigma = 4.0;
  double threshold = 0.0;  // mean + k_sigma * stddev
  std::vector<Crossing> crossings;  // values strictly above threshold
  std::vector<Episode> episodes;
};

// Mean and population standard deviation over the whole series; crossings
// are values strictly greater than mean + k_sigma * stddev. Throws
// SeriesTooShort for fewer than two values.
ThresholdReport threshold(const SignalSeries& series, double k_sigma = 4.0);

enum class Quorum { Any, Majority, All };

std::string_view to_string(Quorum quorum) noexcept;
Quorum parse_quorum(std::string_view text);

struct SignalSupport {
  SignalKind kind = SignalKind::L1;
  std::vector<Date> crossing_dates;
};

struct ExtremeEvent {
  Date start;
  Date end;
  std::vector<SignalSupport> support;  // one entry per signal kind that crossed
};

struct EventSummary {
  std::vector<ExtremeEvent> events;
};

// Episodes of all reports whose date spans overlap, or lie within
// `merge_gap_days` calendar days of each other, form one candidate event.
// A candidate is an ExtremeEvent when the number of distinct supporting
// signal kinds meets the quorum relative to the kinds present in `reports`.
EventSummary classify_events(std::span<const ThresholdReport> reports, Quorum quorum = Quorum::Any,
                             int merge_gap_days = 7);

// Runs of at least `min_run` consecutive values above mean + k_sigma * stddev
// that start after the last episode at `event_k_sigma`. Empty when the series
// has no such episode.
std::vector<Episode> elevated_periods(const SignalSeries& series, double k_sigma = 2.0,
                                      std::size_t min_run = 3, double event_k_sigma = 4.0);

// CSV with header `date,value,mean,threshold,crossing`.
void write_signal_csv(std::ostream& out, const SignalSeries& series,
                      const ThresholdReport& report);

}  // namespace tdaee
