#pragma once

// dim H^0 and dim H^1 of S_n acting on a level of an FI-module, plus the
// Kuenneth/Shapiro assembly for induced modules.

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "fiperiod/fimod.hpp"

namespace fiperiod::cohom {

/// dim V_n^{S_n}. Uses the permutation model when the level has one.
std::size_t invariants_dim(const fimod::LevelData& L);

/// Common fixed space of the action matrices: dim V - rank of the stacked (A_i - I).
std::size_t invariants_dim_dense(const fimod::LevelData& L);

/// Invariants of F / R for a permutation module F and an S_n-stable subspace R,
/// without forming action matrices on the quotient.
///
/// A lift x of an invariant satisfies x_y - x_{s_i y} = sum_k c_{ik} rho_k[y],
/// where rho_k runs over a basis of R. These difference equations are solved by
/// union-find with offsets that are linear forms in c; cycles contribute linear
/// constraints on c.
std::size_t invariants_dim_permutation(const fimod::PermutationModel& model);

/// dim Z^1 - dim B^1 for the Coxeter cocycle model.
std::size_t h1_dim(const fimod::LevelData& L);

/// dim H^t(S_m, W) for a fixed coefficient module, keyed by (m, t).
struct CohomologyTable {
  std::string module;
  std::map<std::pair<int, int>, std::int64_t> entries;

  void set(int m, int t, std::int64_t dim) { entries[{m, t}] = dim; }
  /// Throws std::out_of_range for a missing entry.
  std::int64_t get(int m, int t) const;
};

/// sum_{a+b=t} W(m, a) * triv(n-m, b).
std::int64_t induced_cohomology_dims(const CohomologyTable& w_table, const CohomologyTable& triv_table,
                                     int m, int n, int t);

/// Nakaoka's stable range n > 2t.
struct NakaokaWindow {
  int t = 0;
  bool operator()(int n) const { return n > 2 * t; }
};

NakaokaWindow nakaoka_window(int t);

}  // namespace fiperiod::cohom
