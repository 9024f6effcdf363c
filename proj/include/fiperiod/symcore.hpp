#pragma once

// Symmetric-group combinatorics: permutations, ordered coset representatives,
// the trace/beta factorization, collision classes and the Coxeter presentation.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fiperiod::symcore {

/// A bijection of {1..n}, stored as the image sequence of 1..n.
///
/// Products compose as functions: (a * b)(x) = a(b(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// The adjacent transposition s_i = (i, i+1) in S_n.
  static Permutation adjacent(int n, int i);
  static Permutation random(int n, std::mt19937_64& rng);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[static_cast<std::size_t>(x - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  Permutation operator*(const Permutation& rhs) const;
  bool is_identity() const;
  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

  /// Word s_{w1} s_{w2} ... in adjacent transpositions whose product is this permutation.
  std::vector<int> adjacent_word() const;

 private:
  std::vector<int> images_;
};

/// An m-subset of [n], stored strictly increasing.
struct OrderedSubset {
  int m = 0;
  int n = 0;
  std::vector<int> elements;

  OrderedSubset() = default;
  OrderedSubset(int n_, std::vector<int> elems);

  static OrderedSubset initial(int m, int n);
  bool operator==(const OrderedSubset&) const = default;
  auto operator<=>(const OrderedSubset&) const = default;
};

/// All m-subsets of [n] in lexicographic order.
std::vector<OrderedSubset> all_subsets(int m, int n);

/// The coset representative gamma_f: maps [m] onto f, order preserving on [m]
/// and on its complement.
Permutation gamma(const OrderedSubset& f);

/// The pair (h_m, h_{n-m}) in S_m x S_{n-m}.
struct TracePair {
  Permutation head;
  Permutation tail;
};

/// beta^m(sigma) = sigma^{-1}([m]), sorted.
OrderedSubset beta(int m, const Permutation& sigma);
/// tr^m(sigma): the h in S_m x S_{n-m} with sigma = h * gamma_{beta(sigma)}^{-1}.
TracePair trace(int m, const Permutation& sigma);
/// tr^m(sigma) as an element of S_n (block-diagonal embedding).
Permutation trace_embedded(int m, const Permutation& sigma);
Permutation embed(const TracePair& h);

/// Class label of f under f1 ~ f2 iff f1 and f2 agree on [n-a] and agree mod u
/// position-wise above n-a.
struct EquivClassKey {
  int m = 0, n = 0, a = 0, u = 1;
  std::vector<int> fixed_part;  // f intersected with [n-a]
  std::vector<int> residues;    // f(j) mod u for the elements above n-a

  bool operator==(const EquivClassKey&) const = default;
  auto operator<=>(const EquivClassKey&) const = default;
};

EquivClassKey class_key(const OrderedSubset& f, int a, int u);

struct EquivClass {
  EquivClassKey key;
  std::vector<OrderedSubset> members;
};

/// Partition of D_{m,n}; classes ordered by their lexicographically least member.
std::vector<EquivClass> equiv_classes(int m, int n, int a, int u);

struct ClassSize {
  std::uint64_t size = 1;
  int b = 0;  // number of elements above n-a
  int s = 0;
};

/// Closed-form class cardinality binom(floor(a/u) - s + b, b) with its witnesses.
/// Classes lying inside [n-a] have size 1 and b = s = 0.
ClassSize class_size(const EquivClassKey& key);

struct CoxeterPresentation {
  int n = 0;
  std::vector<Permutation> generators;      // s_1 .. s_{n-1}
  std::vector<std::vector<int>> relations;  // words over generator indices 1..n-1
};

/// s_i^2, (s_i s_{i+1})^3 and (s_i s_j)^2 for |i-j| >= 2, in that order.
CoxeterPresentation coxeter_presentation(int n);

Permutation evaluate_word(int n, const std::vector<int>& word);

std::uint64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace fiperiod::symcore
