#include "fiperiod/symcore.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fiperiod::symcore {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > degree() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("image sequence is not a bijection of [n]");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::adjacent(int n, int i) {
  if (i < 1 || i >= n) throw std::out_of_range("adjacent transposition index out of range");
  auto im = identity(n).images_;
  std::swap(im[static_cast<std::size_t>(i - 1)], im[static_cast<std::size_t>(i)]);
  return Permutation(std::move(im));
}

Permutation Permutation::random(int n, std::mt19937_64& rng) {
  auto im = identity(n).images_;
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
  }
  return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw std::invalid_argument("permutation degree mismatch");
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    out[i] = images_[static_cast<std::size_t>(rhs.images_[i] - 1)];
  }
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

std::vector<int> Permutation::adjacent_word() const {
  // Strip descents from the right: sigma = sigma' * s_i with one fewer inversion.
  std::vector<int> im = images_;
  std::vector<int> stripped;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < im.size(); ++i) {
      if (im[i] > im[i + 1]) {
        std::swap(im[i], im[i + 1]);
        stripped.push_back(static_cast<int>(i) + 1);
        changed = true;
      }
    }
  }
  std::reverse(stripped.begin(), stripped.end());
  return stripped;
}

OrderedSubset::OrderedSubset(int n_, std::vector<int> elems)
    : m(static_cast<int>(elems.size())), n(n_), elements(std::move(elems)) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] < 1 || elements[i] > n) throw std::invalid_argument("subset element out of [n]");
    if (i > 0 && elements[i - 1] >= elements[i]) {
      throw std::invalid_argument("subset elements must be strictly increasing");
    }
  }
}

OrderedSubset OrderedSubset::initial(int m, int n) {
  std::vector<int> e(static_cast<std::size_t>(m));
  std::iota(e.begin(), e.end(), 1);
  return OrderedSubset(n, std::move(e));
}

std::vector<OrderedSubset> all_subsets(int m, int n) {
  std::vector<OrderedSubset> out;
  if (m < 0 || m > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(m));
  std::iota(cur.begin(), cur.end(), 1);
  for (;;) {
    out.emplace_back(n, cur);
    int i = m - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - (m - 1 - i)) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

Permutation gamma(const OrderedSubset& f) {
  std::vector<int> im;
  im.reserve(static_cast<std::size_t>(f.n));
  im.insert(im.end(), f.elements.begin(), f.elements.end());
  std::vector<bool> used(static_cast<std::size_t>(f.n) + 1, false);
  for (int v : f.elements) used[static_cast<std::size_t>(v)] = true;
  for (int v = 1; v <= f.n; ++v) {
    if (!used[static_cast<std::size_t>(v)]) im.push_back(v);
  }
  return Permutation(std::move(im));
}

OrderedSubset beta(int m, const Permutation& sigma) {
  if (m < 0 || m > sigma.degree()) throw std::out_of_range("beta: m exceeds the degree");
  const auto inv = sigma.inverse();
  std::vector<int> pre;
  for (int x = 1; x <= m; ++x) pre.push_back(inv(x));
  std::sort(pre.begin(), pre.end());
  return OrderedSubset(sigma.degree(), std::move(pre));
}

TracePair trace(int m, const Permutation& sigma) {
  const int n = sigma.degree();
  const Permutation h = trace_embedded(m, sigma);
  std::vector<int> head, tail;
  for (int x = 1; x <= m; ++x) head.push_back(h(x));
  for (int x = m + 1; x <= n; ++x) tail.push_back(h(x) - m);
  return {Permutation(std::move(head)), Permutation(std::move(tail))};
}

Permutation trace_embedded(int m, const Permutation& sigma) {
  return sigma * gamma(beta(m, sigma));
}

Permutation embed(const TracePair& h) {
  const int m = h.head.degree();
  std::vector<int> im = h.head.images();
  for (int v : h.tail.images()) im.push_back(v + m);
  return Permutation(std::move(im));
}

EquivClassKey class_key(const OrderedSubset& f, int a, int u) {
  if (u < 1) throw std::invalid_argument("class_key: u must be at least 1");
  if (a < 0 || a > f.n) throw std::invalid_argument("class_key: a must lie in [0, n]");
  EquivClassKey key{f.m, f.n, a, u, {}, {}};
  for (int v : f.elements) {
    if (v <= f.n - a) {
      key.fixed_part.push_back(v);
    } else {
      key.residues.push_back(v % u);
    }
  }
  return key;
}

std::vector<EquivClass> equiv_classes(int m, int n, int a, int u) {
  std::vector<EquivClass> out;
  std::map<EquivClassKey, std::size_t> index;
  for (auto& f : all_subsets(m, n)) {
    auto key = class_key(f, a, u);
    auto [it, fresh] = index.try_emplace(key, out.size());
    if (fresh) out.push_back({std::move(key), {}});
    out[it->second].members.push_back(std::move(f));
  }
  return out;
}

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(acc);
}

ClassSize class_size(const EquivClassKey& key) {
  const int b = static_cast<int>(key.residues.size());
  if (b == 0) return {1, 0, 0};
  const int base = key.n - key.a;
  // o = largest element of the lexicographically least class member
  int last = base;
  for (int r : key.residues) {
    int x = last + 1;
    while (x % key.u != r) ++x;
    last = x;
  }
  const int o = last;
  const int t = key.a % key.u;
  // least s >= 0 with o - (n - a) <= s u + t
  const int excess = o - base - t;
  const int s = excess <= 0 ? 0 : (excess + key.u - 1) / key.u;
  const int top = key.a / key.u - s + b;
  return {binomial(top, b), b, s};
}

CoxeterPresentation coxeter_presentation(int n) {
  if (n < 1) throw std::invalid_argument("coxeter_presentation: n must be at least 1");
  CoxeterPresentation pres;
  pres.n = n;
  for (int i = 1; i < n; ++i) pres.generators.push_back(Permutation::adjacent(n, i));
  for (int i = 1; i < n; ++i) pres.relations.push_back({i, i});
  for (int i = 1; i + 1 < n; ++i) pres.relations.push_back({i, i + 1, i, i + 1, i, i + 1});
  for (int i = 1; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) pres.relations.push_back({i, j, i, j});
  }
  return pres;
}

Permutation evaluate_word(int n, const std::vector<int>& word) {
  Permutation acc = Permutation::identity(n);
  for (int i : word) acc = acc * Permutation::adjacent(n, i);
  return acc;
}

}  // namespace fiperiod::symcore
