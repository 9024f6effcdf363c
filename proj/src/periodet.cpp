#include "fiperiod/periodet.hpp"

#include <stdexcept>

namespace fiperiod::periodet {

PeriodReport detect_period(const fimod::DimensionSeries& s, int min_margin) {
  if (s.values.empty()) throw std::invalid_argument("detect_period: empty series");
  if (min_margin < 2) throw std::invalid_argument("detect_period: min_margin must be at least 2");
  PeriodReport rep;
  rep.window_min = s.n_min;
  rep.window_max = s.n_max();
  const int lo = s.n_min;
  const int hi = s.n_max();
  for (int P = 1; P <= hi - lo; ++P) {
    // onset is one past the last disagreement
    int onset = lo;
    for (int n = hi - P; n >= lo; --n) {
      if (s.at(n) != s.at(n + P)) {
        onset = n + 1;
        break;
      }
    }
    const int margin = (hi - onset) / P;
    if (margin >= min_margin) {
      rep.period = P;
      rep.onset = onset;
      rep.margin = margin;
      return rep;
    }
  }
  rep.onset = lo;
  return rep;
}

bool check_power_of_p(const PeriodReport& r, std::uint32_t p) {
  if (!r.period) throw std::invalid_argument("check_power_of_p: inconclusive report");
  std::int64_t v = *r.period;
  while (v % p == 0) v /= p;
  return v == 1;
}

bool check_divides_bound(const PeriodReport& r, std::uint32_t p, std::int64_t exponent) {
  if (!r.period) throw std::invalid_argument("check_divides_bound: inconclusive report");
  std::int64_t v = *r.period;
  std::int64_t k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return v == 1 && k <= exponent;
}

}  // namespace fiperiod::periodet
