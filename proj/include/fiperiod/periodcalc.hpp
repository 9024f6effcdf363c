#pragma once

// Period-exponent calculus for filtered FI-modules and for complexes of them:
// the operators dH, D^r, D, I, transport along sequential maps, and the page
// recursions for the period exponent M and the stable range SD.

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

namespace fiperiod::periodcalc {

using Exponent = std::int64_t;

/// Ordered degree tuple of a cover; the order matters.
struct CoverShape {
  std::uint32_t p = 2;
  std::vector<int> degrees;

  CoverShape() = default;
  CoverShape(std::uint32_t p_, std::vector<int> degrees_);

  int d() const { return static_cast<int>(degrees.size()); }
  int D() const;
  int m(int i) const { return degrees[static_cast<std::size_t>(i - 1)]; }  // 1-based
  bool operator==(const CoverShape&) const = default;
};

struct PeriodProfile {
  CoverShape cover;
  std::vector<Exponent> exponents;

  PeriodProfile() = default;
  PeriodProfile(CoverShape c, std::vector<Exponent> e);
  static PeriodProfile zero(const CoverShape& c);
  Exponent at(int i) const { return exponents[static_cast<std::size_t>(i - 1)]; }  // 1-based
  bool operator==(const PeriodProfile&) const = default;
};

/// v_p(n!) by Legendre's formula.
Exponent factorial_valuation(std::int64_t n, std::uint32_t p);

/// v_p((b1 - b2)!) + 1 if b1 > b2, else 0.
Exponent delta_h(std::int64_t b1, std::int64_t b2, std::uint32_t p);

/// H^{i,r} for 1 <= i <= r <= d; triangle[r-1][i-1] = H^{i,r}.
using Triangle = std::vector<std::vector<Exponent>>;
Triangle refine_profile(const PeriodProfile& q);

PeriodProfile op_D(const PeriodProfile& q);
/// (H^{i,r})_{i <= r}, on the cover truncated to its first r degrees.
PeriodProfile op_Dr(const PeriodProfile& q, int r);
Exponent op_I(const PeriodProfile& q);

/// Partial bijection f from source indices to target indices, 1-based pairs
/// (source, target) with equal degrees.
struct SequentialWiring {
  CoverShape source;
  CoverShape target;
  std::vector<std::pair<int, int>> pairs;

  SequentialWiring() = default;
  SequentialWiring(CoverShape s, CoverShape t, std::vector<std::pair<int, int>> pairs_);
  static SequentialWiring identity(const CoverShape& c);
};

PeriodProfile phi_star(const PeriodProfile& q, const SequentialWiring& w);
PeriodProfile gcd_profiles(const PeriodProfile& a, const PeriodProfile& b);

struct FilteredBounds {
  Exponent exponent = 0;
  std::int64_t stable_range = 0;
};

/// exponent = I(D(0)), stable range 2(t + d - 1) + D.
FilteredBounds filtered_bounds(const CoverShape& cover, int t);

struct BoundOnM {
  Exponent D1 = 0;
  Exponent I_bound = 0;                  // D1 + D
  std::vector<Exponent> D_bounds;        // D1 + D - m_i
  Exponent ID_bound = 0;                 // D1 + 2D
  Exponent I = 0;
  PeriodProfile Dq;
  Exponent ID = 0;
  bool holds = false;
};

BoundOnM bound_boundonM(const PeriodProfile& q);

// ---------------------------------------------------------------------------

/// One column x of a resolution shape: a cover per row u, wiring from row u
/// to row u+1, generation degree D_x and an optional onset constant C_x.
struct ResolutionColumn {
  std::vector<CoverShape> rows;
  std::vector<SequentialWiring> row_wiring;  // row u -> row u+1
  int Dx = 0;
  std::optional<int> C;
};

struct ResolutionShape {
  std::uint32_t p = 2;
  std::vector<ResolutionColumn> columns;
  /// wiring[x][u]: row u of column x -> row u of column x+1.
  std::vector<std::vector<SequentialWiring>> wiring;

  int N() const { return static_cast<int>(columns.size()) - 1; }
  /// Missing entries are empty pairings.
  SequentialWiring horizontal(int x, int u) const;
  SequentialWiring vertical(int x, int u) const;
  /// Throws std::invalid_argument describing the first inconsistency.
  void validate() const;
};

struct RecursionTables {
  int t = 0;
  int r_max = 0;
  /// Keyed by (r, x, y); only in-range cells are present.
  std::map<std::tuple<int, int, int>, Exponent> M, SD, N;
  Exponent M_inf = 0;
  Exponent SD_inf = 0;
  /// max C_x when every column supplies one.
  std::optional<int> C;
};

/// Scalar page recursion on row 0 of every column. r_max defaults to t + 2.
RecursionTables resolution_recursion(const ResolutionShape& shape, int t,
                                     std::optional<int> r_max = std::nullopt);

struct VectorResult {
  int x = 0, y = 0;
  std::map<int, Exponent> M, SD;  // by page r
  Exponent M_inf = 0;
  Exponent SD_inf = 0;
};

/// Vector page recursion using every row of every column.
VectorResult vector_recursion(const ResolutionShape& shape, int x, int y,
                              std::optional<int> r_max = std::nullopt);

struct BoundCheck {
  Exponent M_bound = 0;
  std::int64_t SD_bound = 0;
  bool M_ok = false;
  bool SD_ok = false;
};

/// D taken as max_x (D_x + x).
BoundCheck check_bound_main(const ResolutionShape& shape, const RecursionTables& tables);
/// D = largest row degree, d = longest row.
BoundCheck check_bound_general(const ResolutionShape& shape, const VectorResult& v);

std::int64_t config_bound(int t);

}  // namespace fiperiod::periodcalc
