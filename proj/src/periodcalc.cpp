#include "fiperiod/periodcalc.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "fiperiod/gfla.hpp"

namespace fiperiod::periodcalc {

CoverShape::CoverShape(std::uint32_t p_, std::vector<int> degrees_) : p(p_), degrees(std::move(degrees_)) {
  if (!gfla::is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  for (int m : degrees) {
    if (m < 0) throw std::invalid_argument("cover degrees must be nonnegative");
  }
}

int CoverShape::D() const { return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end()); }

PeriodProfile::PeriodProfile(CoverShape c, std::vector<Exponent> e) : cover(std::move(c)), exponents(std::move(e)) {
  if (static_cast<int>(exponents.size()) != cover.d()) {
    throw std::invalid_argument("profile length differs from the cover length");
  }
  for (auto v : exponents) {
    if (v < 0) throw std::invalid_argument("profile exponents must be nonnegative");
  }
}

PeriodProfile PeriodProfile::zero(const CoverShape& c) {
  return PeriodProfile(c, std::vector<Exponent>(static_cast<std::size_t>(c.d()), 0));
}

Exponent factorial_valuation(std::int64_t n, std::uint32_t p) {
  Exponent v = 0;
  for (std::int64_t q = n / p; q > 0; q /= p) v += q;
  return v;
}

Exponent delta_h(std::int64_t b1, std::int64_t b2, std::uint32_t p) {
  if (b1 <= b2) return 0;
  return factorial_valuation(b1 - b2, p) + 1;
}

Triangle refine_profile(const PeriodProfile& q) {
  const int d = q.cover.d();
  Triangle tri(static_cast<std::size_t>(d));
  if (d == 0) return tri;
  tri[static_cast<std::size_t>(d - 1)] = q.exponents;
  const auto p = q.cover.p;
  for (int r = d; r >= 2; --r) {
    const auto& cur = tri[static_cast<std::size_t>(r - 1)];
    auto& next = tri[static_cast<std::size_t>(r - 2)];
    next.resize(static_cast<std::size_t>(r - 1));
    const Exponent hrr = cur[static_cast<std::size_t>(r - 1)];
    const int mr = q.cover.m(r);
    for (int i = 1; i <= r - 1; ++i) {
      const Exponent hir = cur[static_cast<std::size_t>(i - 1)];
      const int mi = q.cover.m(i);
      next[static_cast<std::size_t>(i - 1)] = mr >= mi ? std::max(hir, hrr + delta_h(mr, mi, p)) : hir;
    }
  }
  return tri;
}

PeriodProfile op_D(const PeriodProfile& q) {
  const auto tri = refine_profile(q);
  std::vector<Exponent> out;
  for (int i = 1; i <= q.cover.d(); ++i) out.push_back(tri[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)]);
  return PeriodProfile(q.cover, std::move(out));
}

PeriodProfile op_Dr(const PeriodProfile& q, int r) {
  if (r < 1 || r > q.cover.d()) throw std::invalid_argument("op_Dr: r out of range");
  const auto tri = refine_profile(q);
  CoverShape head(q.cover.p, std::vector<int>(q.cover.degrees.begin(), q.cover.degrees.begin() + r));
  return PeriodProfile(std::move(head), tri[static_cast<std::size_t>(r - 1)]);
}

Exponent op_I(const PeriodProfile& q) {
  const auto tri = refine_profile(q);
  Exponent best = 0;
  for (int i = 1; i <= q.cover.d(); ++i) {
    best = std::max(best, tri[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] +
                              delta_h(q.cover.m(i), 0, q.cover.p));
  }
  return best;
}

SequentialWiring::SequentialWiring(CoverShape s, CoverShape t, std::vector<std::pair<int, int>> pairs_)
    : source(std::move(s)), target(std::move(t)), pairs(std::move(pairs_)) {
  std::vector<bool> used_s(static_cast<std::size_t>(source.d()) + 1, false);
  std::vector<bool> used_t(static_cast<std::size_t>(target.d()) + 1, false);
  for (auto [a, b] : pairs) {
    if (a < 1 || a > source.d() || b < 1 || b > target.d()) {
      throw std::invalid_argument("wiring pair (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    }
    if (used_s[static_cast<std::size_t>(a)] || used_t[static_cast<std::size_t>(b)]) {
      throw std::invalid_argument("wiring is not injective");
    }
    if (source.m(a) != target.m(b)) {
      throw std::invalid_argument("wiring pair (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") joins generators of different degree");
    }
    used_s[static_cast<std::size_t>(a)] = true;
    used_t[static_cast<std::size_t>(b)] = true;
  }
}

SequentialWiring SequentialWiring::identity(const CoverShape& c) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= c.d(); ++i) pairs.emplace_back(i, i);
  return SequentialWiring(c, c, std::move(pairs));
}

PeriodProfile phi_star(const PeriodProfile& q, const SequentialWiring& w) {
  if (!(q.cover == w.source)) throw std::invalid_argument("phi_star: profile cover differs from the wiring source");
  auto out = PeriodProfile::zero(w.target);
  for (auto [a, b] : w.pairs) out.exponents[static_cast<std::size_t>(b - 1)] = q.at(a);
  return out;
}

PeriodProfile gcd_profiles(const PeriodProfile& a, const PeriodProfile& b) {
  if (!(a.cover == b.cover)) throw std::invalid_argument("gcd_profiles: covers differ");
  auto out = a;
  for (std::size_t i = 0; i < out.exponents.size(); ++i) out.exponents[i] = std::max(a.exponents[i], b.exponents[i]);
  return out;
}

FilteredBounds filtered_bounds(const CoverShape& cover, int t) {
  if (cover.d() == 0) throw std::invalid_argument("filtered_bounds: empty cover");
  FilteredBounds b;
  b.exponent = op_I(op_D(PeriodProfile::zero(cover)));
  b.stable_range = 2 * (static_cast<std::int64_t>(t) + cover.d() - 1) + cover.D();
  return b;
}

BoundOnM bound_boundonM(const PeriodProfile& q) {
  BoundOnM b;
  const Exponent D = q.cover.D();
  for (auto v : q.exponents) b.D1 = std::max(b.D1, v);
  b.I_bound = b.D1 + D;
  for (int m : q.cover.degrees) b.D_bounds.push_back(b.D1 + D - m);
  b.ID_bound = b.D1 + 2 * D;
  b.I = op_I(q);
  b.Dq = op_D(q);
  b.ID = op_I(b.Dq);
  b.holds = b.I <= b.I_bound && b.ID <= b.ID_bound;
  for (std::size_t i = 0; i < b.D_bounds.size(); ++i) b.holds = b.holds && b.Dq.exponents[i] <= b.D_bounds[i];
  return b;
}

// ---------------------------------------------------------------------------

SequentialWiring ResolutionShape::horizontal(int x, int u) const {
  const auto& src = columns[static_cast<std::size_t>(x)].rows[static_cast<std::size_t>(u)];
  const auto& tgt = columns[static_cast<std::size_t>(x + 1)].rows[static_cast<std::size_t>(u)];
  if (static_cast<std::size_t>(x) < wiring.size() && static_cast<std::size_t>(u) < wiring[static_cast<std::size_t>(x)].size()) {
    return wiring[static_cast<std::size_t>(x)][static_cast<std::size_t>(u)];
  }
  return SequentialWiring(src, tgt, {});
}

SequentialWiring ResolutionShape::vertical(int x, int u) const {
  const auto& col = columns[static_cast<std::size_t>(x)];
  if (static_cast<std::size_t>(u) < col.row_wiring.size()) return col.row_wiring[static_cast<std::size_t>(u)];
  return SequentialWiring(col.rows[static_cast<std::size_t>(u)], col.rows[static_cast<std::size_t>(u + 1)], {});
}

void ResolutionShape::validate() const {
  if (columns.empty()) throw std::invalid_argument("resolution shape has no columns");
  for (std::size_t x = 0; x < columns.size(); ++x) {
    const auto& col = columns[x];
    const std::string where = "column " + std::to_string(x);
    if (col.rows.empty()) throw std::invalid_argument(where + " has no rows");
    for (const auto& row : col.rows) {
      if (row.p != p) throw std::invalid_argument(where + ": row prime differs from the shape prime");
      if (row.d() == 0) throw std::invalid_argument(where + ": empty cover");
    }
    if (col.Dx < col.rows[0].D()) throw std::invalid_argument(where + ": Dx is below the largest row-0 degree");
    if (col.row_wiring.size() + 1 > col.rows.size() && !col.row_wiring.empty()) {
      throw std::invalid_argument(where + ": more row wirings than row transitions");
    }
    for (std::size_t u = 0; u < col.row_wiring.size(); ++u) {
      if (!(col.row_wiring[u].source == col.rows[u]) || !(col.row_wiring[u].target == col.rows[u + 1])) {
        throw std::invalid_argument(where + ": row wiring " + std::to_string(u) + " does not match its rows");
      }
    }
  }
  for (std::size_t x = 0; x < wiring.size(); ++x) {
    if (x + 1 >= columns.size()) {
      if (!wiring[x].empty()) throw std::invalid_argument("wiring " + std::to_string(x) + " has no target column");
      continue;
    }
    for (std::size_t u = 0; u < wiring[x].size(); ++u) {
      const std::string where = "wiring " + std::to_string(x) + " row " + std::to_string(u);
      if (u >= columns[x].rows.size() || u >= columns[x + 1].rows.size()) {
        throw std::invalid_argument(where + ": row missing in an adjacent column");
      }
      if (!(wiring[x][u].source == columns[x].rows[u]) || !(wiring[x][u].target == columns[x + 1].rows[u])) {
        throw std::invalid_argument(where + ": covers do not match the columns");
      }
    }
  }
}

namespace {

class ScalarRecursion {
 public:
  explicit ScalarRecursion(const ResolutionShape& s) : s_(s), N_(s.N()) {}

  bool in_range(int x, int y) const { return x >= 0 && x <= N_ && y >= 0; }

  const CoverShape& cover(int x) const { return s_.columns[static_cast<std::size_t>(x)].rows[0]; }

  // Q_i for the chain starting at column x
  const PeriodProfile& chain(int x, int i) {
    auto key = std::make_pair(x, i);
    if (auto it = chain_.find(key); it != chain_.end()) return it->second;
    PeriodProfile q = i == 0 ? op_D(PeriodProfile::zero(cover(x)))
                             : op_D(phi_star(chain(x, i - 1), s_.horizontal(x + i - 1, 0)));
    return chain_.emplace(key, std::move(q)).first->second;
  }

  Exponent N(int r, int x) {
    auto key = std::make_pair(r, x);
    if (auto it = N_cache_.find(key); it != N_cache_.end()) return it->second;
    Exponent best = op_I(PeriodProfile::zero(cover(x)));
    for (int i = 0; i <= r - 1 && x + i + 1 <= N_; ++i) {
      best = std::max(best, op_I(phi_star(chain(x, i), s_.horizontal(x + i, 0))));
    }
    N_cache_.emplace(key, best);
    return best;
  }

  Exponent M(int r, int x, int y) {
    auto key = std::make_tuple(r, x, y);
    if (auto it = M_.find(key); it != M_.end()) return it->second;
    Exponent v;
    if (r == 1) {
      v = 2 * static_cast<Exponent>(s_.columns[static_cast<std::size_t>(x)].Dx);
    } else {
      const int q = r - 1;
      v = M(q, x, y);
      v = std::max(v, N(q, x));
      if (in_range(x - q, y + q - 1)) {
        v = std::max(v, M(q, x - q, y + q - 1));
        v = std::max(v, N(q, x - q));
      }
      if (in_range(x + q, y - q + 1)) v = std::max(v, M(q, x + q, y - q + 1));
    }
    M_.emplace(key, v);
    return v;
  }

  Exponent SD(int r, int x, int y) {
    auto key = std::make_tuple(r, x, y);
    if (auto it = SD_.find(key); it != SD_.end()) return it->second;
    Exponent v;
    if (r == 1) {
      const auto& col = s_.columns[static_cast<std::size_t>(x)];
      v = 2 * (static_cast<Exponent>(y) + col.rows[0].d() - 1) + col.Dx;
    } else {
      const int q = r - 1;
      v = SD(q, x, y);
      if (in_range(x - q, y + q - 1)) v = std::max(v, SD(q, x - q, y + q - 1));
      if (in_range(x + q, y - q + 1)) v = std::max(v, SD(q, x + q, y - q + 1));
    }
    SD_.emplace(key, v);
    return v;
  }

 private:
  const ResolutionShape& s_;
  int N_;
  std::map<std::pair<int, int>, PeriodProfile> chain_;
  std::map<std::pair<int, int>, Exponent> N_cache_;
  std::map<std::tuple<int, int, int>, Exponent> M_, SD_;
};

}  // namespace

RecursionTables resolution_recursion(const ResolutionShape& shape, int t, std::optional<int> r_max) {
  if (t < 0) throw std::invalid_argument("resolution_recursion: t must be nonnegative");
  shape.validate();
  RecursionTables out;
  out.t = t;
  out.r_max = r_max.value_or(t + 2);
  if (out.r_max < 1) throw std::invalid_argument("resolution_recursion: r_max must be at least 1");
  ScalarRecursion rec(shape);
  for (int x = 0; x <= std::min(t, shape.N()); ++x) {
    const int y = t - x;
    for (int r = 1; r <= out.r_max; ++r) {
      const auto m = rec.M(r, x, y);
      const auto sd = rec.SD(r, x, y);
      out.M[{r, x, y}] = m;
      out.SD[{r, x, y}] = sd;
      out.N[{r, x, y}] = rec.N(r, x);
      out.M_inf = std::max(out.M_inf, m);
      out.SD_inf = std::max(out.SD_inf, sd);
    }
  }
  bool all_known = true;
  int c = 0;
  for (const auto& col : shape.columns) {
    if (!col.C) {
      all_known = false;
    } else {
      c = std::max(c, *col.C);
    }
  }
  if (all_known) out.C = c;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using Tuple = std::vector<PeriodProfile>;

class VectorRecursion {
 public:
  explicit VectorRecursion(const ResolutionShape& s) : s_(s), N_(s.N()) {}

  int rows(int x) const { return static_cast<int>(s_.columns[static_cast<std::size_t>(x)].rows.size()); }
  const CoverShape& row(int x, int u) const {
    return s_.columns[static_cast<std::size_t>(x)].rows[static_cast<std::size_t>(u)];
  }

  Tuple zeros(int x, int len) const {
    Tuple out;
    for (int u = 0; u < std::min(len, rows(x)); ++u) out.push_back(PeriodProfile::zero(row(x, u)));
    return out;
  }

  // entry u of a tuple, zero when absent
  PeriodProfile entry(const Tuple& q, int x, int u) const {
    if (u < static_cast<int>(q.size())) return q[static_cast<std::size_t>(u)];
    return PeriodProfile::zero(row(x, u));
  }

  // Chain Q^{t,u} for u = 0..t, and the I-candidates along it.
  void chain(const Tuple& q, int x, int t, Tuple* d_out, Exponent* i_out) const {
    Exponent best = op_I(entry(q, x, 0));
    Tuple qt{op_D(entry(q, x, 0))};
    for (int u = 0; u <= t && u + 1 < rows(x); ++u) {
      const auto g = gcd_profiles(phi_star(qt.back(), s_.vertical(x, u)), entry(q, x, u + 1));
      best = std::max(best, op_I(g));
      if (u + 1 <= t) qt.push_back(op_D(g));
    }
    if (d_out) *d_out = std::move(qt);
    if (i_out) *i_out = best;
  }

  Exponent vec_I(const Tuple& q, int x, int t) const {
    Exponent v = 0;
    chain(q, x, t, nullptr, &v);
    return v;
  }

  Tuple vec_D(const Tuple& q, int x, int t) const {
    Tuple out;
    chain(q, x, std::max(t, 0), &out, nullptr);
    return out;
  }

  Tuple transport(const Tuple& q, int x) const {
    Tuple out;
    for (int u = 0; u < static_cast<int>(q.size()) && u < rows(x + 1); ++u) {
      out.push_back(phi_star(q[static_cast<std::size_t>(u)], s_.horizontal(x, u)));
    }
    return out;
  }

  bool in_range(int x, int y) const { return x >= 0 && x <= N_ && y >= 0; }

  // column x's own resolution, rows as columns
  const RecursionTables& column_tables(int x, int y) {
    auto key = std::make_pair(x, y);
    if (auto it = col_.find(key); it != col_.end()) return it->second;
    ResolutionShape inner;
    inner.p = s_.p;
    const auto& col = s_.columns[static_cast<std::size_t>(x)];
    for (int u = 0; u < rows(x); ++u) {
      ResolutionColumn c;
      c.rows.push_back(row(x, u));
      c.Dx = u == 0 ? col.Dx : row(x, u).D();
      inner.columns.push_back(std::move(c));
      if (u + 1 < rows(x)) inner.wiring.push_back({s_.vertical(x, u)});
    }
    return col_.emplace(key, resolution_recursion(inner, y)).first->second;
  }

  Exponent N(int r, int x, int y) {
    auto key = std::make_tuple(r, x, y);
    if (auto it = N_cache_.find(key); it != N_cache_.end()) return it->second;
    Exponent best = vec_I(zeros(x, y + 2), x, y);
    Tuple q = vec_D(zeros(x, y + 2), x, y);
    for (int i = 0; i <= r - 1 && x + i + 1 <= N_; ++i) {
      const Tuple moved = transport(q, x + i);
      if (moved.empty()) break;
      best = std::max(best, vec_I(moved, x + i + 1, std::max(y - i - 1, -1)));
      q = vec_D(moved, x + i + 1, y - i - 1);
    }
    N_cache_.emplace(key, best);
    return best;
  }

  Exponent M(int r, int x, int y) {
    auto key = std::make_tuple(r, x, y);
    if (auto it = M_.find(key); it != M_.end()) return it->second;
    Exponent v;
    if (r == 1) {
      v = column_tables(x, y).M_inf;
      v = std::max(v, vec_I(vec_D(zeros(x, y + 2), x, y), x, y - 1));
      v = std::max(v, vec_I(zeros(x, y + 2), x, y));
    } else {
      const int q = r - 1;
      v = std::max(M(q, x, y), N(q, x, y));
      if (in_range(x - q, y + q - 1)) {
        v = std::max(v, M(q, x - q, y + q - 1));
        v = std::max(v, N(q, x - q, y + q - 1));
      }
      if (in_range(x + q, y - q + 1)) v = std::max(v, M(q, x + q, y - q + 1));
    }
    M_.emplace(key, v);
    return v;
  }

  Exponent SD(int r, int x, int y) {
    auto key = std::make_tuple(r, x, y);
    if (auto it = SD_.find(key); it != SD_.end()) return it->second;
    Exponent v;
    if (r == 1) {
      v = column_tables(x, y).SD_inf;
    } else {
      const int q = r - 1;
      v = SD(q, x, y);
      if (in_range(x - q, y + q - 1)) v = std::max(v, SD(q, x - q, y + q - 1));
      if (in_range(x + q, y - q + 1)) v = std::max(v, SD(q, x + q, y - q + 1));
    }
    SD_.emplace(key, v);
    return v;
  }

 private:
  const ResolutionShape& s_;
  int N_;
  std::map<std::pair<int, int>, RecursionTables> col_;
  std::map<std::tuple<int, int, int>, Exponent> N_cache_, M_, SD_;
};

}  // namespace

VectorResult vector_recursion(const ResolutionShape& shape, int x, int y, std::optional<int> r_max) {
  shape.validate();
  if (x < 0 || x > shape.N() || y < 0) throw std::invalid_argument("vector_recursion: cell out of range");
  VectorRecursion rec(shape);
  VectorResult out;
  out.x = x;
  out.y = y;
  const int top = r_max.value_or(x + y + 2);
  if (top < 1) throw std::invalid_argument("vector_recursion: r_max must be at least 1");
  for (int r = 1; r <= top; ++r) {
    out.M[r] = rec.M(r, x, y);
    out.SD[r] = rec.SD(r, x, y);
    out.M_inf = std::max(out.M_inf, out.M[r]);
    out.SD_inf = std::max(out.SD_inf, out.SD[r]);
  }
  return out;
}

BoundCheck check_bound_main(const ResolutionShape& shape, const RecursionTables& tables) {
  Exponent D = 0;
  int dmax = 0;
  for (int x = 0; x <= shape.N(); ++x) {
    const auto& col = shape.columns[static_cast<std::size_t>(x)];
    D = std::max<Exponent>(D, col.Dx + x);
    dmax = std::max(dmax, col.rows[0].d());
  }
  BoundCheck b;
  b.M_bound = std::min((tables.t + 3) * D, std::max(2 * D, D * (D + 1) / 2));
  b.SD_bound = 2 * (static_cast<std::int64_t>(tables.t) + dmax - 1) + D;
  b.M_ok = tables.M_inf <= b.M_bound;
  b.SD_ok = tables.SD_inf <= b.SD_bound;
  return b;
}

BoundCheck check_bound_general(const ResolutionShape& shape, const VectorResult& v) {
  Exponent D = 0;
  int dmax = 0;
  for (const auto& col : shape.columns) {
    D = std::max<Exponent>(D, col.Dx);
    for (const auto& row : col.rows) {
      D = std::max<Exponent>(D, row.D());
      dmax = std::max(dmax, row.d());
    }
  }
  BoundCheck b;
  b.M_bound = (static_cast<Exponent>(v.x) + v.y + 3) * D;
  b.SD_bound = 2 * (static_cast<std::int64_t>(v.x) + v.y + dmax - 1) + D;
  b.M_ok = v.M_inf <= b.M_bound;
  b.SD_ok = v.SD_inf <= b.SD_bound;
  return b;
}

std::int64_t config_bound(int t) {
  if (t < 0) throw std::invalid_argument("config_bound: t must be nonnegative");
  return static_cast<std::int64_t>(t + 3) * (2 * t + 2);
}

}  // namespace fiperiod::periodcalc
