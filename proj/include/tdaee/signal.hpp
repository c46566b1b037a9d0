#pragma once

#include <string_view>
#include <vector>

#include "tdaee/date.hpp"

namespace tdaee {

enum class SignalKind { L1, L2, WD };

std::string_view to_string(SignalKind kind) noexcept;

struct SignalParams {
  std::size_t window = 0;
  double p = 2.0;
  int dimension = 1;
};

// Time-indexed scalar summary of the window sequence. times[t] is the end
// date of the (later) window that produced values[t].
struct SignalSeries {
  SignalKind kind = SignalKind::L1;
  std::vector<Date> times;
  std::vector<double> values;
  SignalParams params;

  std::size_t size() const { return values.size(); }
};

}  // namespace tdaee
