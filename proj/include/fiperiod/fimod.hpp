#pragma once

// Finitely generated FI-modules over F_p: free modules, presented quotients,
// kernels of morphisms, shifts, and their evaluation at a level n.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fiperiod/gfla.hpp"
#include "fiperiod/symcore.hpp"

namespace fiperiod::fimod {

using gfla::GFMatrix;
using gfla::PrimeField;

/// Image sequence (f(1), ..., f(k)) of an injection [k] -> [n].
using Injection = std::vector<int>;

/// n! / (n-m)!, or 0 when m > n.
std::uint64_t falling(int n, int m);

/// Calls fn(f) for every injection [k] -> [n] in lexicographic order.
template <class Fn>
void for_each_injection(int k, int n, Fn&& fn);

struct FreeShape {
  std::uint32_t p = 2;
  std::vector<int> degrees;

  FreeShape() = default;
  FreeShape(std::uint32_t p_, std::vector<int> degrees_);

  int d() const { return static_cast<int>(degrees.size()); }
  int D() const;
  bool operator==(const FreeShape&) const = default;
};

std::uint64_t free_dim(const FreeShape& shape, int n);

struct FreeBasisIndex {
  int gen = 0;
  Injection inj;
  auto operator<=>(const FreeBasisIndex&) const = default;
};

/// A finitely supported combination of free basis vectors at one level.
class Element {
 public:
  Element(FreeShape shape, int degree);

  const FreeShape& shape() const { return shape_; }
  int degree() const { return degree_; }
  const std::map<FreeBasisIndex, std::uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * (gen, inj); zero sums are dropped.
  Element& add(int gen, const Injection& inj, std::int64_t c = 1);
  /// Adds c times the sum of all injections [m_gen] -> [degree].
  Element& add_all_injections(int gen, std::int64_t c = 1);
  Element& add(const Element& other, std::int64_t c = 1);

  bool operator==(const Element& other) const {
    return shape_ == other.shape_ && degree_ == other.degree_ && terms_ == other.terms_;
  }

 private:
  FreeShape shape_;
  int degree_;
  std::map<FreeBasisIndex, std::uint32_t> terms_;
};

/// (gen, g) -> (gen, f o g) for f : [degree(e)] -> [n].
Element pushforward(const Element& e, const Injection& f, int n);

/// Rank/unrank of the free basis at level n, ordered by (gen, image sequence).
class LevelBasis {
 public:
  LevelBasis(const FreeShape& shape, int n);

  int n() const { return n_; }
  std::size_t size() const { return total_; }
  std::size_t offset(int gen) const { return offsets_[static_cast<std::size_t>(gen)]; }
  std::size_t index_of(int gen, const Injection& inj) const;
  std::size_t index_of(const FreeBasisIndex& b) const { return index_of(b.gen, b.inj); }
  FreeBasisIndex at(std::size_t index) const;

 private:
  std::vector<int> degrees_;
  int n_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  // weights_[gen][j] = P(n-j-1, m-j-1)
  std::vector<std::vector<std::uint64_t>> weights_;
};

class FIMorphism;
class LevelData;

/// A finitely presented FI-module, the kernel of a morphism, or a shift.
class FIPresentation {
 public:
  enum class Kind { presented, kernel, shift };

  static FIPresentation presented(FreeShape shape, std::vector<Element> relations = {});
  static FIPresentation free(std::uint32_t p, std::vector<int> degrees);
  static FIPresentation kernel_of(const FIMorphism& phi);
  static FIPresentation shifted(const FIPresentation& base, int a);

  Kind kind() const;
  std::uint32_t p() const;
  /// Presented form only.
  const FreeShape& shape() const;
  const std::vector<Element>& relations() const;
  /// Kernel form only.
  const FIMorphism& morphism() const;
  /// Shift form only.
  const FIPresentation& base() const;
  int shift_amount() const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

class FIMorphism {
 public:
  /// Validates shapes and well-definedness; both ends must be presented.
  FIMorphism(FIPresentation source, FIPresentation target, std::vector<Element> images);

  const FIPresentation& source() const { return source_; }
  const FIPresentation& target() const { return target_; }
  const std::vector<Element>& images() const { return images_; }

 private:
  FIPresentation source_;
  FIPresentation target_;
  std::vector<Element> images_;
};

/// Free-module-with-relations model of a level: ambient basis, permutation
/// action of each Coxeter generator on it, and the relation subspace.
struct PermutationModel {
  PrimeField field{2};
  std::size_t ambient_dim = 0;
  std::vector<std::vector<std::uint32_t>> generator_perms;  // s_i acting on ambient indices
  /// Independent relation vectors, as sparse (index, coefficient) lists.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> relation_basis;
  std::shared_ptr<const gfla::QuotientProjector> projector;
};

/// Kernel-form level: basis vectors inside the source level.
struct KernelModel {
  std::shared_ptr<const LevelData> source;
  GFMatrix basis;                         // source_dim x dim, columns are basis vectors
  std::vector<std::size_t> free_rows;     // rows where `basis` restricts to the identity
};

class LevelData {
 public:
  int n() const { return n_; }
  const PrimeField& field() const { return field_; }
  std::uint32_t p() const { return field_.p(); }
  std::size_t dim() const { return dim_; }
  int num_generators() const { return n_ > 0 ? n_ - 1 : 0; }

  /// Action matrices of s_1..s_{n-1}; built on first use.
  const std::vector<GFMatrix>& generator_actions() const;

  const PermutationModel* permutation_model() const { return perm_.get(); }
  const KernelModel* kernel_model() const { return kernel_.get(); }
  /// For shifted modules: the base module's level n + a.
  const LevelData* shifted_from() const { return base_.get(); }

 private:
  friend struct LevelBuilder;

  int n_ = 0;
  PrimeField field_{2};
  std::size_t dim_ = 0;
  std::shared_ptr<const PermutationModel> perm_;
  std::shared_ptr<const KernelModel> kernel_;
  std::shared_ptr<const LevelData> base_;

  struct ActionCache {
    std::once_flag once;
    std::vector<GFMatrix> actions;
  };
  std::shared_ptr<ActionCache> cache_ = std::make_shared<ActionCache>();
};

LevelData evaluate(const FIPresentation& P, int n);

/// Ambient size evaluate(P, n) has to work in; used by size guards.
std::uint64_t ambient_dim(const FIPresentation& P, int n);

GFMatrix morphism_matrix(const FIMorphism& phi, int n);

FIPresentation shift(const FIPresentation& P, int a);

/// Matrix of f_* : V_{n_from} -> V_{n_to} for an injection f : [n_from] -> [n_to].
GFMatrix level_map(const FIPresentation& P, int n_from, const Injection& f, int n_to);

/// Matrix of the natural map X_a at level n, V_n -> V_{n+a}.
GFMatrix shift_map_matrix(const FIPresentation& P, int a, int n);

std::size_t torsion_kernel_dim(const FIPresentation& P, int a, int n);

/// T : M(V_m)_n -> V_n. Source basis is ordered by (subset f lexicographic, basis of V_m).
GFMatrix transfer_matrix(const FIPresentation& P, int m, int n);

/// Action of sigma on M(V_m)_n in the basis used by transfer_matrix.
GFMatrix induced_action(const LevelData& level_m, int n, const symcore::Permutation& sigma);

/// Action of sigma on V_n, composed from the generator actions.
GFMatrix permutation_action(const LevelData& level, const symcore::Permutation& sigma);

struct DimensionSeries {
  int n_min = 0;
  std::vector<std::int64_t> values;
  std::string label = "computed";

  int n_max() const { return n_min + static_cast<int>(values.size()) - 1; }
  std::int64_t at(int n) const { return values[static_cast<std::size_t>(n - n_min)]; }
};

DimensionSeries dim_series(const FIPresentation& P, int n_min, int n_max);

/// Integer-valued polynomial sum_k c_k binom(n - n0, k) in Newton form.
struct Polynomial {
  int n0 = 0;
  std::vector<std::int64_t> newton;  // forward differences at n0

  int degree() const;
  std::int64_t operator()(int n) const;
};

/// Fits a polynomial of degree <= max_degree through the last max_degree+1 points
/// and checks it on the whole tail of length `tail` (default: entire series).
/// Throws std::invalid_argument if the window is shorter than max_degree + 2.
std::optional<Polynomial> fit_polynomial(const DimensionSeries& s, int max_degree,
                                         std::optional<int> tail = std::nullopt);

template <class Fn>
void for_each_injection(int k, int n, Fn&& fn) {
  if (k < 0 || k > n) return;
  Injection f(static_cast<std::size_t>(k));
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  // depth-first in lexicographic order
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == k) {
      fn(static_cast<const Injection&>(f));
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      f[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1);
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace fiperiod::fimod
