#include "fiperiod/gfla.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace fiperiod::gfla {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  }
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  // a^(p-2) by square-and-multiply
  std::uint64_t result = 1, base = a % p_;
  for (std::uint32_t e = p_ - 2; e != 0; e >>= 1) {
    if (e & 1U) result = result * base % p_;
    base = base * base % p_;
  }
  return static_cast<std::uint32_t>(result);
}

std::size_t row_stride(const PrimeField& f, std::size_t cols) {
  return f.binary() ? (cols + 63) / 64 : cols;
}

namespace rowops {

std::uint32_t get(const PrimeField& f, std::span<const Word> row, std::size_t col) {
  if (f.binary()) return static_cast<std::uint32_t>((row[col >> 6] >> (col & 63)) & 1U);
  return static_cast<std::uint32_t>(row[col]);
}

void set(const PrimeField& f, std::span<Word> row, std::size_t col, std::uint32_t v) {
  if (f.binary()) {
    const Word bit = Word{1} << (col & 63);
    if (v & 1U) {
      row[col >> 6] |= bit;
    } else {
      row[col >> 6] &= ~bit;
    }
    return;
  }
  row[col] = v;
}

void axpy(const PrimeField& f, std::span<Word> dst, std::span<const Word> src, std::uint32_t c,
          std::size_t from_word) {
  const std::size_t n = dst.size();
  if (f.binary()) {
    if ((c & 1U) == 0) return;
    for (std::size_t w = from_word; w < n; ++w) dst[w] ^= src[w];
    return;
  }
  c %= f.p();
  if (c == 0) return;
  const Word p = f.p();
  for (std::size_t w = from_word; w < n; ++w) {
    if (src[w] != 0) dst[w] = (dst[w] + c * src[w]) % p;
  }
}

void scale(const PrimeField& f, std::span<Word> row, std::uint32_t c) {
  if (f.binary()) {
    if ((c & 1U) == 0) std::fill(row.begin(), row.end(), 0);
    return;
  }
  const Word p = f.p();
  for (auto& w : row) w = w * c % p;
}

bool is_zero(std::span<const Word> row) {
  return std::all_of(row.begin(), row.end(), [](Word w) { return w == 0; });
}

std::size_t leading(const PrimeField& f, std::span<const Word> row, std::size_t cols) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    if (row[w] == 0) continue;
    const std::size_t col = f.binary() ? (w << 6) + std::countr_zero(row[w]) : w;
    return col < cols ? col : npos;
  }
  return npos;
}

}  // namespace rowops

GFMatrix::GFMatrix(PrimeField f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), stride_(row_stride(f, cols)), data_(rows * stride_, 0) {}

GFMatrix GFMatrix::identity(PrimeField f, std::size_t n) {
  GFMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

GFMatrix GFMatrix::from_rows(PrimeField f, std::size_t cols,
                             const std::vector<std::vector<std::int64_t>>& rows) {
  GFMatrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged row in GFMatrix::from_rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, f.reduce(rows[r][c]));
  }
  return m;
}

GFMatrix GFMatrix::transpose() const {
  GFMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto src = row(r);
    if (field_.binary()) {
      for (std::size_t w = 0; w < stride_; ++w) {
        for (Word bits = src[w]; bits != 0; bits &= bits - 1) {
          t.set((w << 6) + std::countr_zero(bits), r, 1);
        }
      }
    } else {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (src[c] != 0) t.set(c, r, static_cast<std::uint32_t>(src[c]));
      }
    }
  }
  return t;
}

GFMatrix GFMatrix::operator*(const GFMatrix& rhs) const {
  if (cols_ != rhs.rows_ || !(field_ == rhs.field_)) {
    throw std::invalid_argument("GFMatrix product: shape or field mismatch");
  }
  GFMatrix out(field_, rows_, rhs.cols_);
  // out.row(i) = sum_k a(i,k) * rhs.row(k)
  for (std::size_t i = 0; i < rows_; ++i) {
    auto dst = out.row(i);
    auto src = row(i);
    if (field_.binary()) {
      for (std::size_t w = 0; w < stride_; ++w) {
        for (Word bits = src[w]; bits != 0; bits &= bits - 1) {
          rowops::axpy(field_, dst, rhs.row((w << 6) + std::countr_zero(bits)), 1);
        }
      }
    } else {
      for (std::size_t k = 0; k < cols_; ++k) {
        if (src[k] != 0) rowops::axpy(field_, dst, rhs.row(k), static_cast<std::uint32_t>(src[k]));
      }
    }
  }
  return out;
}

GFMatrix GFMatrix::operator+(const GFMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || !(field_ == rhs.field_)) {
    throw std::invalid_argument("GFMatrix sum: shape or field mismatch");
  }
  GFMatrix out = *this;
  for (std::size_t i = 0; i < rows_; ++i) rowops::axpy(field_, out.row(i), rhs.row(i), 1);
  return out;
}

GFMatrix GFMatrix::operator-(const GFMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || !(field_ == rhs.field_)) {
    throw std::invalid_argument("GFMatrix difference: shape or field mismatch");
  }
  GFMatrix out = *this;
  const auto minus_one = field_.neg(1);
  for (std::size_t i = 0; i < rows_; ++i) rowops::axpy(field_, out.row(i), rhs.row(i), minus_one);
  return out;
}

std::vector<std::uint32_t> GFMatrix::apply(std::span<const std::uint32_t> x) const {
  if (x.size() != cols_) throw std::invalid_argument("GFMatrix::apply: length mismatch");
  std::vector<std::uint32_t> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = (acc + static_cast<std::uint64_t>(at(r, c)) * x[c]) % field_.p();
    }
    y[r] = static_cast<std::uint32_t>(acc);
  }
  return y;
}

GFMatrix GFMatrix::vstack(const GFMatrix& below) const {
  if (cols_ != below.cols_ || !(field_ == below.field_)) {
    throw std::invalid_argument("GFMatrix::vstack: shape or field mismatch");
  }
  GFMatrix out(field_, rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + data_.size());
  return out;
}

bool GFMatrix::is_zero() const { return rowops::is_zero(data_); }

bool GFMatrix::operator==(const GFMatrix& other) const {
  return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ &&
         data_ == other.data_;
}

EchelonBasis::EchelonBasis(PrimeField f, std::size_t cols)
    : field_(f), cols_(cols), stride_(row_stride(f, cols)), pivot_row_(cols, -1) {}

void EchelonBasis::reduce(std::span<Word> v) const {
  if (pivots_.empty()) return;
  if (field_.binary()) {
    for (std::size_t w = 0; w < stride_; ++w) {
      Word skip = 0;
      for (;;) {
        const Word live = v[w] & ~skip;
        if (live == 0) break;
        const int bit = std::countr_zero(live);
        const auto r = pivot_row_[(w << 6) + bit];
        if (r < 0) {
          skip |= Word{1} << bit;
          continue;
        }
        // stored rows vanish left of their pivot, so earlier words stay clean
        const Word* src = rows_.data() + static_cast<std::size_t>(r) * stride_;
        for (std::size_t k = w; k < stride_; ++k) v[k] ^= src[k];
      }
    }
    return;
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c] == 0) continue;
    const auto r = pivot_row_[c];
    if (r < 0) continue;
    rowops::axpy(field_, v, basis_row(static_cast<std::size_t>(r)),
                 field_.neg(static_cast<std::uint32_t>(v[c])), c);
  }
}

bool EchelonBasis::insert(std::span<Word> v) {
  reduce(v);
  const auto lead = rowops::leading(field_, v, cols_);
  if (lead == rowops::npos) return false;
  if (!field_.binary()) rowops::scale(field_, v, field_.inv(static_cast<std::uint32_t>(v[lead])));
  pivot_row_[lead] = static_cast<std::int64_t>(pivots_.size());
  pivots_.push_back(lead);
  rows_.insert(rows_.end(), v.begin(), v.end());
  return true;
}

bool EchelonBasis::contains(std::span<const Word> v) const {
  std::vector<Word> tmp(v.begin(), v.end());
  reduce(tmp);
  return rowops::is_zero(tmp);
}

GFMatrix EchelonBasis::rref() const {
  std::vector<std::size_t> order(pivots_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  GFMatrix out(field_, pivots_.size(), cols_);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    const std::size_t piv = pivots_[i];
    auto dst = out.row(k);
    auto src = basis_row(i);
    std::copy(src.begin(), src.end(), dst.begin());
    // clear the own pivot, reduce the tail against all pivots, then restore it
    rowops::set(field_, dst, piv, 0);
    reduce(dst);
    rowops::set(field_, dst, piv, 1);
  }
  return out;
}

std::size_t rank(const GFMatrix& m) {
  EchelonBasis basis(m.field(), m.cols());
  std::vector<Word> tmp(m.stride());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row(r);
    std::copy(src.begin(), src.end(), tmp.begin());
    basis.insert(std::span<Word>(tmp));
    if (basis.rank() == m.cols()) break;
  }
  return basis.rank();
}

std::vector<std::vector<std::uint32_t>> kernel_basis(const GFMatrix& m) {
  return kernel(m).basis;
}

Kernel kernel(const GFMatrix& m) {
  const auto& f = m.field();
  EchelonBasis basis(f, m.cols());
  std::vector<Word> tmp(m.stride());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row(r);
    std::copy(src.begin(), src.end(), tmp.begin());
    basis.insert(std::span<Word>(tmp));
  }
  const GFMatrix reduced = basis.rref();
  std::vector<bool> is_pivot(m.cols(), false);
  std::vector<std::size_t> pivot_cols;
  for (std::size_t k = 0; k < reduced.rows(); ++k) {
    const auto lead = rowops::leading(f, reduced.row(k), m.cols());
    is_pivot[lead] = true;
    pivot_cols.push_back(lead);
  }
  Kernel out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    out.free_columns.push_back(free);
    std::vector<std::uint32_t> x(m.cols(), 0);
    x[free] = 1;
    for (std::size_t k = 0; k < reduced.rows(); ++k) {
      x[pivot_cols[k]] = f.neg(reduced.at(k, free));
    }
    out.basis.push_back(std::move(x));
  }
  return out;
}

QuotientProjector::QuotientProjector(PrimeField f, std::size_t ambient_dim)
    : relations_(f, ambient_dim) {
  index_complement();
}

QuotientProjector::QuotientProjector(const GFMatrix& relations, std::size_t ambient_dim)
    : relations_(relations.field(), ambient_dim) {
  if (relations.rows() > 0 && relations.cols() != ambient_dim) {
    throw std::invalid_argument("relation rows do not lie in the ambient space");
  }
  std::vector<Word> tmp(relations_.stride());
  for (std::size_t r = 0; r < relations.rows(); ++r) {
    auto src = relations.row(r);
    std::copy(src.begin(), src.end(), tmp.begin());
    relations_.insert(std::span<Word>(tmp));
  }
  index_complement();
}

QuotientProjector::QuotientProjector(EchelonBasis relations) : relations_(std::move(relations)) {
  index_complement();
}

void QuotientProjector::index_complement() {
  coord_of_.assign(relations_.cols(), -1);
  complement_.clear();
  for (std::size_t c = 0; c < relations_.cols(); ++c) {
    if (relations_.is_pivot(c)) continue;
    coord_of_[c] = static_cast<std::int64_t>(complement_.size());
    complement_.push_back(c);
  }
}

std::vector<std::uint32_t> QuotientProjector::reduce(std::span<const std::uint32_t> ambient) const {
  if (ambient.size() != ambient_dim()) {
    throw std::invalid_argument("QuotientProjector::reduce: vector is not in the ambient space");
  }
  auto packed = pack(field(), ambient);
  return reduce_packed(packed);
}

std::vector<std::uint32_t> QuotientProjector::reduce_packed(std::span<Word> ambient) const {
  relations_.reduce(ambient);
  std::vector<std::uint32_t> out(complement_.size());
  for (std::size_t i = 0; i < complement_.size(); ++i) {
    out[i] = rowops::get(field(), ambient, complement_[i]);
  }
  return out;
}

std::vector<std::uint32_t> QuotientProjector::reduce_unit(std::size_t col) const {
  if (coord_of_[col] >= 0) {
    std::vector<std::uint32_t> out(complement_.size(), 0);
    out[static_cast<std::size_t>(coord_of_[col])] = 1;
    return out;
  }
  auto row = relations_.zero_row();
  rowops::set(field(), row, col, 1);
  return reduce_packed(row);
}

std::vector<Word> pack(const PrimeField& f, std::span<const std::uint32_t> v) {
  std::vector<Word> row(row_stride(f, v.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto r = v[i] % f.p();
    if (r != 0) rowops::set(f, row, i, r);
  }
  return row;
}

std::vector<std::uint32_t> unpack(const PrimeField& f, std::span<const Word> row, std::size_t cols) {
  std::vector<std::uint32_t> out(cols);
  for (std::size_t i = 0; i < cols; ++i) out[i] = rowops::get(f, row, i);
  return out;
}

}  // namespace fiperiod::gfla
