#pragma once

// Dense linear algebra over prime fields F_p.
//
// Storage is a flat buffer of 64-bit words. For p = 2 a row packs 64 entries
// per word and row operations are word-level XOR; for odd p every word holds
// a single residue in [0, p).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fiperiod::gfla {

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  bool binary() const { return p_ == 2; }

  std::uint32_t reduce(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

/// Number of storage words needed for a row of `cols` entries.
std::size_t row_stride(const PrimeField& f, std::size_t cols);

using Word = std::uint64_t;

/// Row kernels shared by matrices and echelon bases.
namespace rowops {
std::uint32_t get(const PrimeField& f, std::span<const Word> row, std::size_t col);
void set(const PrimeField& f, std::span<Word> row, std::size_t col, std::uint32_t v);
/// dst += c * src, touching words from `from_word` on.
void axpy(const PrimeField& f, std::span<Word> dst, std::span<const Word> src, std::uint32_t c,
          std::size_t from_word = 0);
void scale(const PrimeField& f, std::span<Word> row, std::uint32_t c);
bool is_zero(std::span<const Word> row);
/// Leftmost nonzero column, or `npos` if the row is zero.
std::size_t leading(const PrimeField& f, std::span<const Word> row, std::size_t cols);
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);
}  // namespace rowops

class GFMatrix {
 public:
  GFMatrix(PrimeField f, std::size_t rows, std::size_t cols);

  static GFMatrix identity(PrimeField f, std::size_t n);
  /// Builds from row-major residues; values are reduced mod p.
  static GFMatrix from_rows(PrimeField f, std::size_t cols,
                            const std::vector<std::vector<std::int64_t>>& rows);

  const PrimeField& field() const { return field_; }
  std::uint32_t p() const { return field_.p(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  std::uint32_t at(std::size_t r, std::size_t c) const {
    return rowops::get(field_, row(r), c);
  }
  void set(std::size_t r, std::size_t c, std::uint32_t v) {
    rowops::set(field_, row(r), c, v % field_.p());
  }

  std::span<Word> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
  std::span<const Word> row(std::size_t r) const {
    return {data_.data() + r * stride_, stride_};
  }

  GFMatrix transpose() const;
  GFMatrix operator*(const GFMatrix& rhs) const;
  GFMatrix operator+(const GFMatrix& rhs) const;
  GFMatrix operator-(const GFMatrix& rhs) const;
  std::vector<std::uint32_t> apply(std::span<const std::uint32_t> x) const;
  /// Stacks `below` under this matrix; column counts must agree.
  GFMatrix vstack(const GFMatrix& below) const;

  bool is_zero() const;
  bool operator==(const GFMatrix& other) const;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  std::vector<Word> data_;
};

/// Incremental row-echelon basis of a subspace of F_p^cols.
///
/// Rows are inserted one at a time and reduced against the current basis;
/// pivots are leftmost nonzero entries and the first row to claim a pivot keeps
/// it. Stored rows are normalized so the pivot entry is 1. Peak memory is
/// rank x row width.
class EchelonBasis {
 public:
  EchelonBasis(PrimeField f, std::size_t cols);

  const PrimeField& field() const { return field_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }
  std::size_t rank() const { return pivots_.size(); }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

  /// Reduces `v` in place so that every pivot column is zero.
  void reduce(std::span<Word> v) const;
  /// Inserts `v` (consumed); returns true if it enlarged the span.
  bool insert(std::span<Word> v);
  bool insert(std::vector<Word> v) { return insert(std::span<Word>(v)); }
  bool contains(std::span<const Word> v) const;

  std::span<const Word> basis_row(std::size_t i) const {
    return {rows_.data() + i * stride_, stride_};
  }
  /// Reduced row echelon form: one row per pivot, sorted by pivot column.
  GFMatrix rref() const;

  std::vector<Word> zero_row() const { return std::vector<Word>(stride_, 0); }

 private:
  PrimeField field_;
  std::size_t cols_;
  std::size_t stride_;
  std::vector<Word> rows_;
  std::vector<std::size_t> pivots_;       // pivot column of stored row i
  std::vector<std::int64_t> pivot_row_;   // stored row for each column, -1 if none
};

std::size_t rank(const GFMatrix& m);

/// Basis of {x : M x = 0}; vectors have length cols(M).
std::vector<std::vector<std::uint32_t>> kernel_basis(const GFMatrix& m);

/// Kernel basis together with its free columns: basis vector i is 1 at
/// free_columns[i] and 0 at every other free column.
struct Kernel {
  std::vector<std::vector<std::uint32_t>> basis;
  std::vector<std::size_t> free_columns;
};
Kernel kernel(const GFMatrix& m);

/// Coordinates on the quotient F_p^ambient / rowspace(R).
///
/// The complement coordinates are the non-pivot columns of the row-reduced
/// relation rows. `reduce` rewrites an ambient vector modulo the row space and
/// returns its complement coordinates.
class QuotientProjector {
 public:
  QuotientProjector(PrimeField f, std::size_t ambient_dim);
  QuotientProjector(const GFMatrix& relations, std::size_t ambient_dim);
  explicit QuotientProjector(EchelonBasis relations);

  const PrimeField& field() const { return relations_.field(); }
  std::size_t ambient_dim() const { return relations_.cols(); }
  std::size_t quotient_dim() const { return complement_.size(); }
  const std::vector<std::size_t>& complement_columns() const { return complement_; }
  /// Quotient coordinate of an ambient column, or -1 for pivot columns.
  std::int64_t coordinate_of(std::size_t ambient_col) const { return coord_of_[ambient_col]; }
  const EchelonBasis& relations() const { return relations_; }

  std::vector<std::uint32_t> reduce(std::span<const std::uint32_t> ambient) const;
  /// Same as `reduce` for an already-packed ambient row (consumed).
  std::vector<std::uint32_t> reduce_packed(std::span<Word> ambient) const;
  /// Image of the ambient basis vector e_col.
  std::vector<std::uint32_t> reduce_unit(std::size_t col) const;

 private:
  void index_complement();

  EchelonBasis relations_;
  std::vector<std::size_t> complement_;
  std::vector<std::int64_t> coord_of_;
};

/// Packs residues into a row of the given field and width.
std::vector<Word> pack(const PrimeField& f, std::span<const std::uint32_t> v);
std::vector<std::uint32_t> unpack(const PrimeField& f, std::span<const Word> row, std::size_t cols);

}  // namespace fiperiod::gfla
