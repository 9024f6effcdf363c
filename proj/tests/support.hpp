#pragma once

// Generators and independent reference computations for the test suites.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "fiperiod/fimod.hpp"
#include "fiperiod/gfla.hpp"
#include "fiperiod/symcore.hpp"

namespace testsupport {

using Rows = std::vector<std::vector<std::int64_t>>;

inline std::int64_t modp(std::int64_t v, std::int64_t p) { return ((v % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  for (std::int64_t x = 1; x < p; ++x)
    if (modp(a * x, p) == 1) return x;
  return 0;
}

/// Plain Gauss-Jordan over F_p on int64 rows.
inline std::size_t naive_rank(Rows rows, std::int64_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && modp(rows[piv][c], p) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const auto iv = inv_mod(modp(rows[r][c], p), p);
    for (auto& x : rows[r]) x = modp(x * iv, p);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r) continue;
      const auto f = modp(rows[k][c], p);
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) rows[k][j] = modp(rows[k][j] - f * rows[r][j], p);
    }
    ++r;
  }
  return r;
}

inline Rows to_rows(const fiperiod::gfla::GFMatrix& m) {
  Rows out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j);
  return out;
}

inline fiperiod::gfla::GFMatrix random_matrix(std::uint32_t p, std::size_t r, std::size_t c, std::mt19937_64& rng,
                                              int density_percent = 50) {
  fiperiod::gfla::GFMatrix m(fiperiod::gfla::PrimeField(p), r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (static_cast<int>(rng() % 100) < density_percent) m.set(i, j, static_cast<std::uint32_t>(rng() % p));
  return m;
}

/// Every element of S_n, lexicographic.
inline std::vector<fiperiod::symcore::Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  std::vector<fiperiod::symcore::Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

/// dim H^1(S_n, V) from crossed homomorphisms on the whole group:
/// f(gh) = f(g) + g f(h), modulo principal ones.
inline std::int64_t h1_full_group(const fiperiod::fimod::LevelData& L) {
  const auto p = static_cast<std::int64_t>(L.p());
  const auto dv = L.dim();
  const auto group = all_permutations(L.n());
  std::map<fiperiod::symcore::Permutation, std::size_t> index;
  std::vector<fiperiod::gfla::GFMatrix> act;
  for (std::size_t i = 0; i < group.size(); ++i) {
    index[group[i]] = i;
    act.push_back(fiperiod::fimod::permutation_action(L, group[i]));
  }
  const std::size_t unknowns = group.size() * dv;
  Rows eqs;
  for (std::size_t g = 0; g < group.size(); ++g) {
    for (std::size_t h = 0; h < group.size(); ++h) {
      const auto gh = index.at(group[g] * group[h]);
      for (std::size_t k = 0; k < dv; ++k) {
        std::vector<std::int64_t> row(unknowns, 0);
        row[gh * dv + k] += 1;
        row[g * dv + k] -= 1;
        for (std::size_t j = 0; j < dv; ++j) row[h * dv + j] -= static_cast<std::int64_t>(act[g].at(k, j));
        for (auto& x : row) x = modp(x, p);
        eqs.push_back(std::move(row));
      }
    }
  }
  const auto z1 = static_cast<std::int64_t>(unknowns) - static_cast<std::int64_t>(naive_rank(eqs, p));
  // B^1 = image of v -> (g v - v)_g
  Rows b;
  for (std::size_t j = 0; j < dv; ++j) {
    std::vector<std::int64_t> row(unknowns, 0);
    for (std::size_t g = 0; g < group.size(); ++g)
      for (std::size_t k = 0; k < dv; ++k) row[g * dv + k] = modp(static_cast<std::int64_t>(act[g].at(k, j)) - (k == j ? 1 : 0), p);
    b.push_back(std::move(row));
  }
  return z1 - static_cast<std::int64_t>(naive_rank(b, p));
}

/// dim of the common fixed space over all of S_n.
inline std::int64_t h0_full_group(const fiperiod::fimod::LevelData& L) {
  const auto p = static_cast<std::int64_t>(L.p());
  Rows eqs;
  for (const auto& g : all_permutations(L.n())) {
    const auto A = fiperiod::fimod::permutation_action(L, g);
    for (std::size_t k = 0; k < L.dim(); ++k) {
      std::vector<std::int64_t> row(L.dim());
      for (std::size_t j = 0; j < L.dim(); ++j) row[j] = modp(static_cast<std::int64_t>(A.at(k, j)) - (k == j ? 1 : 0), p);
      eqs.push_back(std::move(row));
    }
  }
  return static_cast<std::int64_t>(L.dim()) - static_cast<std::int64_t>(naive_rank(eqs, p));
}

/// Brute-force partition of m-subsets of [n] by the class relation.
inline std::map<std::vector<int>, std::uint64_t> brute_class_sizes(int m, int n, int a, int u) {
  std::map<std::vector<int>, std::uint64_t> sizes;
  for (const auto& f : fiperiod::symcore::all_subsets(m, n)) {
    std::vector<int> key;
    for (int x : f.elements) key.push_back(x <= n - a ? x : -1000 - (x % u));
    ++sizes[key];
  }
  return sizes;
}

/// Pascal's triangle mod p.
inline std::int64_t pascal_mod(int n, int k, std::int64_t p) {
  if (k < 0 || k > n) return 0;
  std::vector<std::int64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = (row[static_cast<std::size_t>(j - 1)] + row[static_cast<std::size_t>(j)]) % p;
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

inline std::vector<int> random_degrees(std::mt19937_64& rng, int max_len, int max_deg) {
  const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
  std::vector<int> out;
  for (int i = 0; i < d; ++i) out.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 1)));
  return out;
}

}  // namespace testsupport
