#include "fiperiod/cohom.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "fiperiod/symcore.hpp"

namespace fiperiod::cohom {

using gfla::GFMatrix;
using gfla::Word;
namespace rowops = gfla::rowops;

std::size_t invariants_dim(const fimod::LevelData& L) {
  if (const auto* pm = L.permutation_model()) return invariants_dim_permutation(*pm);
  return invariants_dim_dense(L);
}

std::size_t invariants_dim_dense(const fimod::LevelData& L) {
  const auto& gens = L.generator_actions();
  if (gens.empty() || L.dim() == 0) return L.dim();
  const GFMatrix id = GFMatrix::identity(L.field(), L.dim());
  gfla::EchelonBasis eb(L.field(), L.dim());
  for (const auto& a : gens) {
    const GFMatrix d = a - id;
    for (std::size_t r = 0; r < d.rows(); ++r) {
      std::vector<Word> row(d.row(r).begin(), d.row(r).end());
      eb.insert(std::span<Word>(row));
    }
  }
  return L.dim() - eb.rank();
}

namespace {

struct WordsHash {
  std::size_t operator()(const std::vector<Word>& v) const {
    std::size_t h = v.size();
    for (Word w : v) h = (h * 0x9E3779B97F4A7C15ULL) ^ (w + (h >> 7));
    return h;
  }
};

// Union-find over ambient coordinates; off(v) is the linear form with
// x_v = x_root + off(v).
class OffsetForest {
 public:
  OffsetForest(const gfla::PrimeField& f, std::size_t nodes, std::size_t forms)
      : f_(f), stride_(gfla::row_stride(f, forms)), parent_(nodes), off_(nodes * stride_, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    components_ = nodes;
  }

  std::size_t components() const { return components_; }
  std::span<Word> off(std::size_t v) { return {off_.data() + v * stride_, stride_}; }

  std::size_t find(std::size_t v) {
    // collect the path, then compress from the top down
    path_.clear();
    while (parent_[v] != v) {
      path_.push_back(v);
      v = parent_[v];
    }
    const std::size_t root = v;
    for (std::size_t k = path_.size(); k-- > 1;) {
      const std::size_t node = path_[k - 1];
      const std::size_t up = path_[k];
      // off(node) was relative to up; up is now relative to root
      rowops::axpy(f_, off(node), off(up), 1);
      parent_[node] = root;
    }
    return root;
  }

  /// Imposes x_a - x_b = rhs. Returns a nonzero constraint on the forms when
  /// a and b are already joined, otherwise an empty vector.
  std::vector<Word> relate(std::size_t a, std::size_t b, std::span<const Word> rhs) {
    const std::size_t ra = find(a);
    const std::size_t rb = find(b);
    if (ra != rb) {
      // x_ra = x_rb + rhs + off_b - off_a
      std::vector<Word> o(rhs.begin(), rhs.end());
      rowops::axpy(f_, o, off(b), 1);
      rowops::axpy(f_, o, off(a), f_.neg(1));
      std::copy(o.begin(), o.end(), off(ra).begin());
      parent_[ra] = rb;
      --components_;
      return {};
    }
    std::vector<Word> c(off(a).begin(), off(a).end());
    rowops::axpy(f_, c, off(b), f_.neg(1));
    rowops::axpy(f_, c, rhs, f_.neg(1));
    if (rowops::is_zero(c)) return {};
    return c;
  }

 private:
  gfla::PrimeField f_;
  std::size_t stride_;
  std::vector<std::size_t> parent_;
  std::vector<Word> off_;
  std::vector<std::size_t> path_;
  std::size_t components_ = 0;
};

}  // namespace

std::size_t invariants_dim_permutation(const fimod::PermutationModel& model) {
  const auto& f = model.field;
  const std::size_t A = model.ambient_dim;
  const std::size_t r = model.relation_basis.size();
  const std::size_t gens = model.generator_perms.size();
  if (gens == 0) return A - r;
  const std::size_t C = gens * r;
  const std::size_t stride = gfla::row_stride(f, C);

  // rho_k[y] by ambient coordinate
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_coord(A);
  for (std::size_t k = 0; k < r; ++k) {
    for (auto [y, c] : model.relation_basis[k]) by_coord[y].emplace_back(static_cast<std::uint32_t>(k), c);
  }

  OffsetForest forest(f, A, C);
  gfla::EchelonBasis constraints(f, C);
  std::unordered_set<std::vector<Word>, WordsHash> seen;
  std::vector<Word> rhs(stride, 0);
  auto add_constraint = [&](std::vector<Word> c) {
    if (c.empty() || rowops::is_zero(c)) return;
    if (!seen.insert(c).second) return;
    constraints.insert(std::move(c));
  };

  for (std::size_t i = 0; i < gens; ++i) {
    const auto& perm = model.generator_perms[i];
    for (std::size_t y = 0; y < A; ++y) {
      std::fill(rhs.begin(), rhs.end(), 0);
      for (auto [k, c] : by_coord[y]) rowops::set(f, rhs, i * r + k, c);
      const std::size_t z = perm[y];
      if (z == y) {
        add_constraint(rhs);
        continue;
      }
      add_constraint(forest.relate(y, z, rhs));
    }
  }
  const std::size_t sol = forest.components() + C - constraints.rank();
  return sol - r;
}

std::size_t h1_dim(const fimod::LevelData& L) {
  const int n = L.n();
  if (n < 1) throw std::invalid_argument("h1_dim needs n >= 1");
  const std::size_t dv = L.dim();
  const std::size_t gens = static_cast<std::size_t>(L.num_generators());
  if (gens == 0 || dv == 0) return 0;
  const auto& act = L.generator_actions();
  const auto pres = symcore::coxeter_presentation(n);
  const std::size_t unknowns = gens * dv;

  gfla::EchelonBasis eqs(L.field(), unknowns);
  const GFMatrix id = GFMatrix::identity(L.field(), dv);
  for (const auto& word : pres.relations) {
    std::vector<GFMatrix> block(gens, GFMatrix(L.field(), dv, dv));
    GFMatrix prefix = id;
    for (int letter : word) {
      const auto g = static_cast<std::size_t>(letter - 1);
      block[g] = block[g] + prefix;
      prefix = prefix * act[g];
    }
    for (std::size_t row = 0; row < dv; ++row) {
      std::vector<Word> eq = eqs.zero_row();
      for (std::size_t g = 0; g < gens; ++g) {
        for (std::size_t c = 0; c < dv; ++c) {
          const auto v = block[g].at(row, c);
          if (v != 0) rowops::set(L.field(), eq, g * dv + c, v);
        }
      }
      eqs.insert(std::span<Word>(eq));
    }
  }
  const std::size_t z1 = unknowns - eqs.rank();
  const std::size_t b1 = dv - invariants_dim(L);
  return z1 - b1;
}

std::int64_t CohomologyTable::get(int m, int t) const {
  const auto it = entries.find({m, t});
  if (it == entries.end()) {
    throw std::out_of_range("cohomology table '" + module + "' has no entry for m=" + std::to_string(m) +
                            ", t=" + std::to_string(t));
  }
  return it->second;
}

std::int64_t induced_cohomology_dims(const CohomologyTable& w_table, const CohomologyTable& triv_table,
                                     int m, int n, int t) {
  if (m > n || t < 0) throw std::invalid_argument("induced_cohomology_dims: need m <= n and t >= 0");
  std::int64_t total = 0;
  for (int a = 0; a <= t; ++a) total += w_table.get(m, a) * triv_table.get(n - m, t - a);
  return total;
}

NakaokaWindow nakaoka_window(int t) {
  if (t < 0) throw std::invalid_argument("nakaoka_window: t must be nonnegative");
  return NakaokaWindow{t};
}

}  // namespace fiperiod::cohom
