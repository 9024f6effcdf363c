#include "fiperiod/fimod.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace fiperiod::fimod {

namespace {

using Sparse = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct SparseHash {
  std::size_t operator()(const Sparse& v) const {
    std::size_t h = v.size();
    for (auto [i, c] : v) h = h * 1000003U ^ (static_cast<std::size_t>(i) * 31U + c);
    return h;
  }
};

void check_injection(const Injection& f, int n, const char* what) {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(n, 0)) + 1, false);
  for (int v : f) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument(std::string(what) + ": not an injection into [" +
                                  std::to_string(n) + "]");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Injection compose(const Injection& f, const Injection& g) {
  Injection out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = f[static_cast<std::size_t>(g[j] - 1)];
  return out;
}

}  // namespace

std::uint64_t falling(int n, int m) {
  if (m < 0 || n < 0 || m > n) return 0;
  std::uint64_t acc = 1;
  for (int i = 0; i < m; ++i) acc *= static_cast<std::uint64_t>(n - i);
  return acc;
}

FreeShape::FreeShape(std::uint32_t p_, std::vector<int> degrees_)
    : p(p_), degrees(std::move(degrees_)) {
  if (!gfla::is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (degrees.empty()) throw std::invalid_argument("a free shape needs at least one generator");
  for (int m : degrees) {
    if (m < 0) throw std::invalid_argument("generator degrees must be nonnegative");
  }
}

int FreeShape::D() const { return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end()); }

std::uint64_t free_dim(const FreeShape& shape, int n) {
  std::uint64_t total = 0;
  for (int m : shape.degrees) total += falling(n, m);
  return total;
}

Element::Element(FreeShape shape, int degree) : shape_(std::move(shape)), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("element degree must be nonnegative");
}

Element& Element::add(int gen, const Injection& inj, std::int64_t c) {
  if (gen < 0 || gen >= shape_.d()) {
    throw std::invalid_argument("generator index " + std::to_string(gen) + " out of range");
  }
  if (static_cast<int>(inj.size()) != shape_.degrees[static_cast<std::size_t>(gen)]) {
    throw std::invalid_argument("injection length does not match the generator degree");
  }
  check_injection(inj, degree_, "term");
  const PrimeField f(shape_.p);
  const auto r = f.reduce(c);
  if (r == 0) return *this;
  auto [it, fresh] = terms_.try_emplace(FreeBasisIndex{gen, inj}, r);
  if (!fresh) {
    it->second = f.add(it->second, r);
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

Element& Element::add_all_injections(int gen, std::int64_t c) {
  if (gen < 0 || gen >= shape_.d()) {
    throw std::invalid_argument("generator index " + std::to_string(gen) + " out of range");
  }
  for_each_injection(shape_.degrees[static_cast<std::size_t>(gen)], degree_,
                     [&](const Injection& f) { add(gen, f, c); });
  return *this;
}

Element& Element::add(const Element& other, std::int64_t c) {
  if (!(other.shape_ == shape_) || other.degree_ != degree_) {
    throw std::invalid_argument("adding elements of different shape or degree");
  }
  for (const auto& [b, v] : other.terms_) add(b.gen, b.inj, static_cast<std::int64_t>(v) * c);
  return *this;
}

Element pushforward(const Element& e, const Injection& f, int n) {
  if (static_cast<int>(f.size()) != e.degree()) {
    throw std::invalid_argument("pushforward: injection source does not match the element degree");
  }
  check_injection(f, n, "pushforward");
  Element out(e.shape(), n);
  for (const auto& [b, c] : e.terms()) out.add(b.gen, compose(f, b.inj), c);
  return out;
}

LevelBasis::LevelBasis(const FreeShape& shape, int n) : degrees_(shape.degrees), n_(n) {
  for (int m : degrees_) {
    offsets_.push_back(total_);
    total_ += falling(n, m);
    std::vector<std::uint64_t> w(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(j)] = falling(n - j - 1, m - j - 1);
    weights_.push_back(std::move(w));
  }
}

std::size_t LevelBasis::index_of(int gen, const Injection& inj) const {
  const auto& w = weights_[static_cast<std::size_t>(gen)];
  std::size_t idx = offsets_[static_cast<std::size_t>(gen)];
  // digit j = rank of inj[j] among values not used by inj[0..j-1]
  std::uint64_t used = 0;  // bitmask; n stays far below 64 in practice
  if (n_ >= 64) {
    for (std::size_t j = 0; j < inj.size(); ++j) {
      int digit = inj[j] - 1;
      for (std::size_t k = 0; k < j; ++k) digit -= inj[k] < inj[j] ? 1 : 0;
      idx += static_cast<std::size_t>(digit) * w[j];
    }
    return idx;
  }
  for (std::size_t j = 0; j < inj.size(); ++j) {
    const std::uint64_t below = used & ((std::uint64_t{1} << inj[j]) - 1);
    const int digit = inj[j] - 1 - std::popcount(below);
    idx += static_cast<std::size_t>(digit) * w[j];
    used |= std::uint64_t{1} << inj[j];
  }
  return idx;
}

FreeBasisIndex LevelBasis::at(std::size_t index) const {
  if (index >= total_) throw std::out_of_range("LevelBasis::at");
  int gen = static_cast<int>(degrees_.size()) - 1;
  while (offsets_[static_cast<std::size_t>(gen)] > index) --gen;
  std::uint64_t rest = index - offsets_[static_cast<std::size_t>(gen)];
  const auto& w = weights_[static_cast<std::size_t>(gen)];
  std::vector<bool> used(static_cast<std::size_t>(n_) + 1, false);
  Injection inj(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    auto digit = rest / w[j];
    rest %= w[j];
    int v = 1;
    for (;; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      if (digit == 0) break;
      --digit;
    }
    used[static_cast<std::size_t>(v)] = true;
    inj[j] = v;
  }
  return {gen, std::move(inj)};
}

// ---------------------------------------------------------------------------

struct FIPresentation::Data {
  Kind kind = Kind::presented;
  std::uint32_t p = 2;
  FreeShape shape;
  std::vector<Element> relations;
  std::shared_ptr<const FIMorphism> morphism;
  std::shared_ptr<const FIPresentation> base;
  int a = 0;
};

FIPresentation FIPresentation::presented(FreeShape shape, std::vector<Element> relations) {
  for (const auto& r : relations) {
    if (!(r.shape() == shape)) throw std::invalid_argument("relation shape differs from the module shape");
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::presented;
  d->p = shape.p;
  d->shape = std::move(shape);
  d->relations = std::move(relations);
  FIPresentation out;
  out.data_ = std::move(d);
  return out;
}

FIPresentation FIPresentation::free(std::uint32_t p, std::vector<int> degrees) {
  return presented(FreeShape(p, std::move(degrees)));
}

FIPresentation FIPresentation::kernel_of(const FIMorphism& phi) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::kernel;
  d->p = phi.source().p();
  d->morphism = std::make_shared<const FIMorphism>(phi);
  FIPresentation out;
  out.data_ = std::move(d);
  return out;
}

FIPresentation FIPresentation::shifted(const FIPresentation& base, int a) {
  if (a < 1) throw std::invalid_argument("shift amount must be at least 1");
  auto d = std::make_shared<Data>();
  d->kind = Kind::shift;
  d->p = base.p();
  d->base = std::make_shared<const FIPresentation>(base);
  d->a = a;
  FIPresentation out;
  out.data_ = std::move(d);
  return out;
}

FIPresentation::Kind FIPresentation::kind() const { return data_->kind; }
std::uint32_t FIPresentation::p() const { return data_->p; }

const FreeShape& FIPresentation::shape() const {
  if (data_->kind != Kind::presented) throw std::logic_error("shape() of a non-presented module");
  return data_->shape;
}
const std::vector<Element>& FIPresentation::relations() const {
  if (data_->kind != Kind::presented) throw std::logic_error("relations() of a non-presented module");
  return data_->relations;
}
const FIMorphism& FIPresentation::morphism() const {
  if (data_->kind != Kind::kernel) throw std::logic_error("morphism() of a non-kernel module");
  return *data_->morphism;
}
const FIPresentation& FIPresentation::base() const {
  if (data_->kind != Kind::shift) throw std::logic_error("base() of a non-shifted module");
  return *data_->base;
}
int FIPresentation::shift_amount() const { return data_->kind == Kind::shift ? data_->a : 0; }

FIPresentation shift(const FIPresentation& P, int a) { return FIPresentation::shifted(P, a); }

// ---------------------------------------------------------------------------

struct LevelBuilder {
  static LevelData presented(const FIPresentation& P, int n);
  static LevelData kernel(const FIPresentation& P, int n);
  static LevelData shifted(const FIPresentation& P, int n);
  static void build_actions(const LevelData& L, std::vector<GFMatrix>& out);
};

namespace {

std::vector<gfla::Word> pack_element(const Element& e, const LevelBasis& basis, const PrimeField& f) {
  std::vector<gfla::Word> row(gfla::row_stride(f, basis.size()), 0);
  for (const auto& [b, c] : e.terms()) gfla::rowops::set(f, row, basis.index_of(b), c);
  return row;
}

// Dense image of ambient unit vectors under a projector, with a fast path for
// complement columns.
std::vector<std::uint32_t> project_unit(const gfla::QuotientProjector& q, std::size_t col) {
  const auto c = q.coordinate_of(col);
  if (c >= 0) {
    std::vector<std::uint32_t> out(q.quotient_dim(), 0);
    out[static_cast<std::size_t>(c)] = 1;
    return out;
  }
  return q.reduce_unit(col);
}

}  // namespace

LevelData LevelBuilder::presented(const FIPresentation& P, int n) {
  const auto& shape = P.shape();
  const PrimeField field(shape.p);
  const LevelBasis basis(shape, n);
  auto model = std::make_shared<PermutationModel>();
  model->field = field;
  model->ambient_dim = basis.size();

  // generator permutations on ambient indices
  for (int i = 1; i < n; ++i) {
    std::vector<std::uint32_t> perm(basis.size());
    for (int gen = 0; gen < shape.d(); ++gen) {
      std::size_t idx = basis.offset(gen);
      for_each_injection(shape.degrees[static_cast<std::size_t>(gen)], n, [&](const Injection& g) {
        Injection h = g;
        for (int& v : h) {
          if (v == i) {
            v = i + 1;
          } else if (v == i + 1) {
            v = i;
          }
        }
        perm[idx++] = static_cast<std::uint32_t>(basis.index_of(gen, h));
      });
    }
    model->generator_perms.push_back(std::move(perm));
  }

  // relation span: pushforwards under every injection, deduplicated
  gfla::EchelonBasis echelon(field, basis.size());
  std::unordered_set<Sparse, SparseHash> seen;
  for (const auto& r : P.relations()) {
    if (r.degree() > n || r.is_zero()) continue;
    for_each_injection(r.degree(), n, [&](const Injection& f) {
      Sparse v;
      v.reserve(r.terms().size());
      for (const auto& [b, c] : r.terms()) {
        v.emplace_back(static_cast<std::uint32_t>(basis.index_of(b.gen, compose(f, b.inj))), c);
      }
      std::sort(v.begin(), v.end());
      if (!seen.insert(v).second) return;
      auto row = echelon.zero_row();
      for (auto [i, c] : v) gfla::rowops::set(field, row, i, c);
      if (echelon.insert(std::span<gfla::Word>(row))) model->relation_basis.push_back(std::move(v));
    });
  }
  model->projector = std::make_shared<const gfla::QuotientProjector>(std::move(echelon));

  LevelData L;
  L.n_ = n;
  L.field_ = field;
  L.dim_ = model->projector->quotient_dim();
  L.perm_ = std::move(model);
  return L;
}

namespace {

GFMatrix morphism_matrix_impl(const FIMorphism& phi, const LevelData& src, const LevelData& tgt) {
  const auto& sshape = phi.source().shape();
  const auto& tshape = phi.target().shape();
  const int n = src.n();
  const LevelBasis sbasis(sshape, n);
  const LevelBasis tbasis(tshape, n);
  const auto& sproj = *src.permutation_model()->projector;
  const auto& tproj = *tgt.permutation_model()->projector;
  GFMatrix out(src.field(), tgt.dim(), src.dim());
  const auto& comp = sproj.complement_columns();
  for (std::size_t j = 0; j < comp.size(); ++j) {
    const auto b = sbasis.at(comp[j]);
    const Element img = pushforward(phi.images()[static_cast<std::size_t>(b.gen)], b.inj, n);
    auto row = pack_element(img, tbasis, src.field());
    const auto coords = tproj.reduce_packed(row);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] != 0) out.set(i, j, coords[i]);
    }
  }
  return out;
}

}  // namespace

LevelData LevelBuilder::kernel(const FIPresentation& P, int n) {
  const auto& phi = P.morphism();
  auto src = std::make_shared<const LevelData>(evaluate(phi.source(), n));
  const LevelData tgt = evaluate(phi.target(), n);
  const GFMatrix m = morphism_matrix_impl(phi, *src, tgt);
  auto k = gfla::kernel(m);
  GFMatrix basis(src->field(), src->dim(), k.basis.size());
  for (std::size_t j = 0; j < k.basis.size(); ++j) {
    for (std::size_t i = 0; i < src->dim(); ++i) {
      if (k.basis[j][i] != 0) basis.set(i, j, k.basis[j][i]);
    }
  }
  LevelData L;
  L.n_ = n;
  L.field_ = src->field();
  L.dim_ = k.basis.size();
  L.kernel_ = std::make_shared<const KernelModel>(KernelModel{src, std::move(basis), std::move(k.free_columns)});
  return L;
}

LevelData LevelBuilder::shifted(const FIPresentation& P, int n) {
  auto base = std::make_shared<const LevelData>(evaluate(P.base(), n + P.shift_amount()));
  LevelData L;
  L.n_ = n;
  L.field_ = base->field();
  L.dim_ = base->dim();
  if (const auto* pm = base->permutation_model()) {
    auto model = std::make_shared<PermutationModel>(*pm);
    model->generator_perms.resize(static_cast<std::size_t>(L.num_generators()));
    L.perm_ = std::move(model);
  }
  L.kernel_ = base->kernel_;
  L.base_ = std::move(base);
  return L;
}

void LevelBuilder::build_actions(const LevelData& L, std::vector<GFMatrix>& out) {
  const std::size_t gens = static_cast<std::size_t>(L.num_generators());
  out.clear();
  if (L.perm_) {
    const auto& q = *L.perm_->projector;
    const auto& comp = q.complement_columns();
    for (std::size_t g = 0; g < gens; ++g) {
      const auto& perm = L.perm_->generator_perms[g];
      GFMatrix a(L.field_, L.dim_, L.dim_);
      for (std::size_t j = 0; j < comp.size(); ++j) {
        const auto img = perm[comp[j]];
        const auto c = q.coordinate_of(img);
        if (c >= 0) {
          a.set(static_cast<std::size_t>(c), j, 1);
          continue;
        }
        const auto col = q.reduce_unit(img);
        for (std::size_t i = 0; i < col.size(); ++i) {
          if (col[i] != 0) a.set(i, j, col[i]);
        }
      }
      out.push_back(std::move(a));
    }
    return;
  }
  if (L.kernel_) {
    const auto& km = *L.kernel_;
    const auto& src_actions = km.source->generator_actions();
    for (std::size_t g = 0; g < gens; ++g) {
      const GFMatrix moved = src_actions[g] * km.basis;
      GFMatrix a(L.field_, L.dim_, L.dim_);
      for (std::size_t i = 0; i < km.free_rows.size(); ++i) {
        for (std::size_t j = 0; j < L.dim_; ++j) {
          const auto v = moved.at(km.free_rows[i], j);
          if (v != 0) a.set(i, j, v);
        }
      }
      out.push_back(std::move(a));
    }
    return;
  }
  throw std::logic_error("level data without a model");
}

const std::vector<GFMatrix>& LevelData::generator_actions() const {
  std::call_once(cache_->once, [this] { LevelBuilder::build_actions(*this, cache_->actions); });
  return cache_->actions;
}

LevelData evaluate(const FIPresentation& P, int n) {
  if (n < 0) throw std::invalid_argument("level n must be nonnegative");
  switch (P.kind()) {
    case FIPresentation::Kind::presented:
      return LevelBuilder::presented(P, n);
    case FIPresentation::Kind::kernel:
      return LevelBuilder::kernel(P, n);
    case FIPresentation::Kind::shift:
      return LevelBuilder::shifted(P, n);
  }
  throw std::logic_error("unknown presentation kind");
}

std::uint64_t ambient_dim(const FIPresentation& P, int n) {
  switch (P.kind()) {
    case FIPresentation::Kind::presented:
      return free_dim(P.shape(), n);
    case FIPresentation::Kind::kernel:
      return ambient_dim(P.morphism().source(), n) + ambient_dim(P.morphism().target(), n);
    case FIPresentation::Kind::shift:
      return ambient_dim(P.base(), n + P.shift_amount());
  }
  return 0;
}

// ---------------------------------------------------------------------------

FIMorphism::FIMorphism(FIPresentation source, FIPresentation target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (source_.kind() != FIPresentation::Kind::presented ||
      target_.kind() != FIPresentation::Kind::presented) {
    throw std::invalid_argument("morphism ends must be presented modules");
  }
  if (source_.p() != target_.p()) throw std::invalid_argument("morphism source and target primes differ");
  const auto& sshape = source_.shape();
  if (static_cast<int>(images_.size()) != sshape.d()) {
    throw std::invalid_argument("morphism needs one image per source generator");
  }
  for (int i = 0; i < sshape.d(); ++i) {
    const auto& img = images_[static_cast<std::size_t>(i)];
    if (!(img.shape() == target_.shape())) {
      throw std::invalid_argument("image " + std::to_string(i) + " is not an element of the target");
    }
    if (img.degree() != sshape.degrees[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("image " + std::to_string(i) + " has the wrong degree");
    }
  }
  // each source relation must land in the target relation span at its degree
  const PrimeField field(source_.p());
  for (std::size_t r = 0; r < source_.relations().size(); ++r) {
    const auto& rel = source_.relations()[r];
    Element img(target_.shape(), rel.degree());
    for (const auto& [b, c] : rel.terms()) {
      img.add(pushforward(images_[static_cast<std::size_t>(b.gen)], b.inj, rel.degree()), c);
    }
    const LevelData tgt = evaluate(target_, rel.degree());
    const LevelBasis tbasis(target_.shape(), rel.degree());
    auto row = pack_element(img, tbasis, field);
    const auto coords = tgt.permutation_model()->projector->reduce_packed(row);
    if (std::any_of(coords.begin(), coords.end(), [](std::uint32_t v) { return v != 0; })) {
      throw std::invalid_argument("morphism is not well defined: relation " + std::to_string(r) +
                                  " does not map into the target relations");
    }
  }
}

GFMatrix morphism_matrix(const FIMorphism& phi, int n) {
  const LevelData src = evaluate(phi.source(), n);
  const LevelData tgt = evaluate(phi.target(), n);
  return morphism_matrix_impl(phi, src, tgt);
}

// ---------------------------------------------------------------------------

namespace {

GFMatrix level_map_impl(const FIPresentation& P, const LevelData& from, const LevelData& to,
                        const Injection& f) {
  switch (P.kind()) {
    case FIPresentation::Kind::presented: {
      const LevelBasis bfrom(P.shape(), from.n());
      const LevelBasis bto(P.shape(), to.n());
      const auto& qfrom = *from.permutation_model()->projector;
      const auto& qto = *to.permutation_model()->projector;
      GFMatrix out(from.field(), to.dim(), from.dim());
      const auto& comp = qfrom.complement_columns();
      for (std::size_t j = 0; j < comp.size(); ++j) {
        const auto b = bfrom.at(comp[j]);
        const auto col = project_unit(qto, bto.index_of(b.gen, compose(f, b.inj)));
        for (std::size_t i = 0; i < col.size(); ++i) {
          if (col[i] != 0) out.set(i, j, col[i]);
        }
      }
      return out;
    }
    case FIPresentation::Kind::kernel: {
      const auto& kf = *from.kernel_model();
      const auto& kt = *to.kernel_model();
      const GFMatrix s = level_map_impl(P.morphism().source(), *kf.source, *kt.source, f);
      const GFMatrix moved = s * kf.basis;
      GFMatrix out(from.field(), to.dim(), from.dim());
      for (std::size_t i = 0; i < kt.free_rows.size(); ++i) {
        for (std::size_t j = 0; j < from.dim(); ++j) {
          const auto v = moved.at(kt.free_rows[i], j);
          if (v != 0) out.set(i, j, v);
        }
      }
      return out;
    }
    case FIPresentation::Kind::shift: {
      const int a = P.shift_amount();
      Injection g = f;
      for (int j = 1; j <= a; ++j) g.push_back(to.n() + j);
      return level_map_impl(P.base(), *from.shifted_from(), *to.shifted_from(), g);
    }
  }
  throw std::logic_error("unknown presentation kind");
}

}  // namespace

GFMatrix level_map(const FIPresentation& P, int n_from, const Injection& f, int n_to) {
  if (static_cast<int>(f.size()) != n_from) throw std::invalid_argument("level_map: injection length");
  check_injection(f, n_to, "level_map");
  const LevelData from = evaluate(P, n_from);
  const LevelData to = evaluate(P, n_to);
  return level_map_impl(P, from, to, f);
}

GFMatrix shift_map_matrix(const FIPresentation& P, int a, int n) {
  Injection incl(static_cast<std::size_t>(n));
  std::iota(incl.begin(), incl.end(), 1);
  return level_map(P, n, incl, n + a);
}

std::size_t torsion_kernel_dim(const FIPresentation& P, int a, int n) {
  if (a < 1) throw std::invalid_argument("torsion_kernel_dim: a must be at least 1");
  const GFMatrix x = shift_map_matrix(P, a, n);
  return x.cols() - gfla::rank(x);
}

GFMatrix transfer_matrix(const FIPresentation& P, int m, int n) {
  if (m < 0 || m > n) throw std::invalid_argument("transfer_matrix: need 0 <= m <= n");
  const LevelData lm = evaluate(P, m);
  const LevelData ln = evaluate(P, n);
  const auto subsets = symcore::all_subsets(m, n);
  GFMatrix out(ln.field(), ln.dim(), subsets.size() * lm.dim());
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    const GFMatrix block = level_map_impl(P, lm, ln, subsets[s].elements);
    for (std::size_t i = 0; i < block.rows(); ++i) {
      for (std::size_t j = 0; j < block.cols(); ++j) {
        const auto v = block.at(i, j);
        if (v != 0) out.set(i, s * lm.dim() + j, v);
      }
    }
  }
  return out;
}

GFMatrix permutation_action(const LevelData& level, const symcore::Permutation& sigma) {
  if (sigma.degree() != level.n()) throw std::invalid_argument("permutation degree differs from the level");
  GFMatrix acc = GFMatrix::identity(level.field(), level.dim());
  const auto word = sigma.adjacent_word();
  if (word.empty()) return acc;
  const auto& gens = level.generator_actions();
  for (int i : word) acc = acc * gens[static_cast<std::size_t>(i - 1)];
  return acc;
}

GFMatrix induced_action(const LevelData& level_m, int n, const symcore::Permutation& sigma) {
  const int m = level_m.n();
  if (sigma.degree() != n || m > n) throw std::invalid_argument("induced_action: degree mismatch");
  const auto subsets = symcore::all_subsets(m, n);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t s = 0; s < subsets.size(); ++s) index.emplace(subsets[s].elements, s);
  const std::size_t dm = level_m.dim();
  GFMatrix out(level_m.field(), subsets.size() * dm, subsets.size() * dm);
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    std::vector<int> img;
    for (int v : subsets[s].elements) img.push_back(sigma(v));
    std::sort(img.begin(), img.end());
    const symcore::OrderedSubset target(n, img);
    const auto h = symcore::gamma(target).inverse() * sigma * symcore::gamma(subsets[s]);
    std::vector<int> head;
    for (int x = 1; x <= m; ++x) head.push_back(h(x));
    const GFMatrix a = permutation_action(level_m, symcore::Permutation(head));
    const std::size_t t = index.at(img);
    for (std::size_t i = 0; i < dm; ++i) {
      for (std::size_t j = 0; j < dm; ++j) {
        const auto v = a.at(i, j);
        if (v != 0) out.set(t * dm + i, s * dm + j, v);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

DimensionSeries dim_series(const FIPresentation& P, int n_min, int n_max) {
  if (n_min < 0 || n_max < n_min) throw std::invalid_argument("dim_series: empty or negative range");
  DimensionSeries s;
  s.n_min = n_min;
  for (int n = n_min; n <= n_max; ++n) s.values.push_back(static_cast<std::int64_t>(evaluate(P, n).dim()));
  return s;
}

namespace {

__int128 generalized_binomial(std::int64_t x, int k) {
  __int128 acc = 1;
  for (int i = 0; i < k; ++i) acc = acc * (x - i) / (i + 1);
  return acc;
}

}  // namespace

int Polynomial::degree() const {
  for (int k = static_cast<int>(newton.size()) - 1; k > 0; --k) {
    if (newton[static_cast<std::size_t>(k)] != 0) return k;
  }
  return 0;
}

std::int64_t Polynomial::operator()(int n) const {
  __int128 acc = 0;
  for (std::size_t k = 0; k < newton.size(); ++k) {
    acc += newton[k] * generalized_binomial(n - n0, static_cast<int>(k));
  }
  return static_cast<std::int64_t>(acc);
}

std::optional<Polynomial> fit_polynomial(const DimensionSeries& s, int max_degree,
                                         std::optional<int> tail) {
  if (max_degree < 0) throw std::invalid_argument("fit_polynomial: negative degree");
  const int len = tail.value_or(static_cast<int>(s.values.size()));
  if (len > static_cast<int>(s.values.size())) throw std::invalid_argument("fit_polynomial: tail longer than series");
  if (len < max_degree + 2) throw std::invalid_argument("fit_polynomial: window too short");
  const int start = s.n_max() - len + 1;
  std::vector<std::int64_t> diff;
  for (int k = 0; k <= max_degree; ++k) diff.push_back(s.at(start + k));
  Polynomial poly;
  poly.n0 = start;
  for (int k = 0; k <= max_degree; ++k) {
    poly.newton.push_back(diff[0]);
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  for (int n = start; n <= s.n_max(); ++n) {
    if (poly(n) != s.at(n)) return std::nullopt;
  }
  while (poly.newton.size() > 1 && poly.newton.back() == 0) poly.newton.pop_back();
  return poly;
}

}  // namespace fiperiod::fimod
