#pragma once

// In-window period detection for integer series.

#include <cstdint>
#include <optional>

#include "fiperiod/fimod.hpp"

namespace fiperiod::periodet {

struct PeriodReport {
  std::optional<int> period;  // empty when inconclusive
  int onset = 0;
  int window_min = 0;
  int window_max = 0;
  int margin = 0;  // floor((window_max - onset) / period)

  bool conclusive() const { return period.has_value(); }
};

/// Smallest P, then smallest onset n0, with s(n) = s(n+P) for n0 <= n <= max-P
/// and (max - n0) / P >= min_margin.
PeriodReport detect_period(const fimod::DimensionSeries& s, int min_margin = 3);

bool check_power_of_p(const PeriodReport& r, std::uint32_t p);

/// True iff the period divides p^exponent.
bool check_divides_bound(const PeriodReport& r, std::uint32_t p, std::int64_t exponent);

}  // namespace fiperiod::periodet
