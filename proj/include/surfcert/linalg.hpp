#pragma once

// Exact integer linear algebra: sparse matrices over Z, Smith normal form and
// the homology of a pair of composable boundary maps.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace surfcert {

using BigInt = mpz_class;

/// A finitely generated abelian group Z^free_rank + Z/d_1 + ... + Z/d_r with
/// d_1 | d_2 | ... and every d_i >= 2.
struct AbelianGroupStructure {
  std::size_t free_rank = 0;
  std::vector<BigInt> invariant_factors;

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_finite() const { return free_rank == 0; }
  /// Order of the torsion subgroup.
  BigInt torsion_order() const;
  /// True iff some invariant factor is divisible by `p`.
  bool has_p_torsion(const BigInt& p) const;

  /// "Z^2 + Z/5", "0", ...
  std::string to_string() const;

  /// Normalizes an arbitrary list of cyclic orders (zeros mean Z, ones are
  /// dropped) into invariant-factor form.
  static AbelianGroupStructure from_cyclic_orders(std::vector<BigInt> orders);

  friend bool operator==(const AbelianGroupStructure&, const AbelianGroupStructure&) = default;
};

std::ostream& operator<<(std::ostream& os, const AbelianGroupStructure& a);

/// Exact sparse integer matrix. Entries are kept per row, sorted by column,
/// with no stored zeros.
class SparseIntMatrix {
public:
  using Entry = std::pair<std::size_t, BigInt>;
  using Row = std::vector<Entry>;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols);

  static SparseIntMatrix from_dense(const std::vector<std::vector<BigInt>>& dense);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  BigInt get(std::size_t r, std::size_t c) const;
  /// Overwrites an entry; setting zero erases it.
  void set(std::size_t r, std::size_t c, const BigInt& v);
  /// Adds `v` to an entry.
  void add(std::size_t r, std::size_t c, const BigInt& v);

  const Row& row(std::size_t r) const { return data_.at(r); }

  std::vector<std::vector<BigInt>> to_dense() const;
  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;
  bool is_zero() const { return nnz() == 0; }

  /// Coordinate text format: a `rows cols nnz` header, then `i j v` triples
  /// with 0-based indices.
  std::string to_coordinate_text() const;
  static SparseIntMatrix from_coordinate_text(const std::string& text);

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

using DenseIntMatrix = std::vector<std::vector<BigInt>>;

struct SmithForm {
  /// Nonzero diagonal entries d_1 | d_2 | ... | d_r, all >= 1.
  std::vector<BigInt> diagonal;
  /// Present only when transforms were requested: U * M * V = D.
  std::optional<DenseIntMatrix> left;
  std::optional<DenseIntMatrix> right;

  std::size_t rank() const { return diagonal.size(); }
};

/// Smith normal form. Without transforms this runs a sparse elimination with
/// Markowitz pivoting; with transforms it runs dense elimination and records
/// the unimodular row and column operations.
SmithForm smith_normal_form(const SparseIntMatrix& m, bool with_transforms = false);

/// Reorders and rebalances arbitrary nonzero diagonal entries into a
/// divisibility chain (gcd/lcm exchange). Signs are dropped.
std::vector<BigInt> normalize_diagonal(std::vector<BigInt> entries);

/// ker(d_k) / im(d_{k+1}). Throws ComplexNotExact when d_k * d_{k+1} != 0.
AbelianGroupStructure homology_of_pair(const SparseIntMatrix& d_k, const SparseIntMatrix& d_k1);

DenseIntMatrix dense_identity(std::size_t n);
DenseIntMatrix dense_multiply(const DenseIntMatrix& a, const DenseIntMatrix& b);
/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt dense_determinant(DenseIntMatrix m);

}  // namespace surfcert
