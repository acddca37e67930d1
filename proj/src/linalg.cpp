#include "surfcert/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "surfcert/error.hpp"

namespace surfcert {

namespace {
int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
}  // namespace

// ---------------------------------------------------------------------------
// AbelianGroupStructure

BigInt AbelianGroupStructure::torsion_order() const {
  BigInt order = 1;
  for (const auto& d : invariant_factors) order *= d;
  return order;
}

bool AbelianGroupStructure::has_p_torsion(const BigInt& p) const {
  return std::any_of(invariant_factors.begin(), invariant_factors.end(),
                     [&](const BigInt& d) { return mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) != 0; });
}

std::string AbelianGroupStructure::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : invariant_factors) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

AbelianGroupStructure AbelianGroupStructure::from_cyclic_orders(std::vector<BigInt> orders) {
  AbelianGroupStructure out;
  std::vector<BigInt> finite;
  for (auto& o : orders) {
    if (o == 0)
      ++out.free_rank;
    else
      finite.push_back(abs(o));
  }
  for (auto& d : normalize_diagonal(std::move(finite)))
    if (d > 1) out.invariant_factors.push_back(d);
  return out;
}

std::ostream& operator<<(std::ostream& os, const AbelianGroupStructure& a) {
  return os << a.to_string();
}

std::vector<BigInt> normalize_diagonal(std::vector<BigInt> entries) {
  std::vector<BigInt> ones, rest;
  for (auto& e : entries) {
    BigInt a = abs(e);
    if (a == 0) fail(ErrorCode::InvalidArgument, "normalize_diagonal: zero entry");
    (a == 1 ? ones : rest).push_back(std::move(a));
  }
  std::sort(rest.begin(), rest.end());
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      if (mpz_divisible_p(rest[j].get_mpz_t(), rest[i].get_mpz_t())) continue;
      BigInt g = gcd(rest[i], rest[j]);
      BigInt l = rest[i] / g * rest[j];
      rest[i] = g;
      rest[j] = l;
    }
  }
  ones.insert(ones.end(), rest.begin(), rest.end());
  return ones;
}

// ---------------------------------------------------------------------------
// SparseIntMatrix

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

SparseIntMatrix SparseIntMatrix::from_dense(const DenseIntMatrix& dense) {
  std::size_t r = dense.size();
  std::size_t c = r ? dense[0].size() : 0;
  SparseIntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (dense[i].size() != c) fail(ErrorCode::InvalidArgument, "from_dense: ragged matrix");
    for (std::size_t j = 0; j < c; ++j)
      if (dense[i][j] != 0) m.data_[i].emplace_back(j, dense[i][j]);
  }
  return m;
}

std::size_t SparseIntMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

BigInt SparseIntMatrix::get(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) fail(ErrorCode::OutOfRange, "SparseIntMatrix::get: index out of range");
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return 0;
}

void SparseIntMatrix::set(std::size_t r, std::size_t c, const BigInt& v) {
  if (r >= rows_ || c >= cols_) fail(ErrorCode::OutOfRange, "SparseIntMatrix::set: index out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.first < col; });
  bool present = it != row.end() && it->first == c;
  if (v == 0) {
    if (present) row.erase(it);
  } else if (present) {
    it->second = v;
  } else {
    row.insert(it, Entry{c, v});
  }
}

void SparseIntMatrix::add(std::size_t r, std::size_t c, const BigInt& v) {
  if (v == 0) return;
  set(r, c, get(r, c) + v);
}

DenseIntMatrix SparseIntMatrix::to_dense() const {
  DenseIntMatrix d(rows_, std::vector<BigInt>(cols_, 0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [c, v] : data_[i]) d[i][c] = v;
  return d;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) fail(ErrorCode::InvalidArgument, "multiply: dimension mismatch");
  SparseIntMatrix out(rows_, rhs.cols_);
  std::map<std::size_t, BigInt> acc;
  for (std::size_t i = 0; i < rows_; ++i) {
    acc.clear();
    for (const auto& [k, a] : data_[i])
      for (const auto& [j, b] : rhs.data_[k]) acc[j] += a * b;
    for (auto& [j, v] : acc)
      if (v != 0) out.data_[i].emplace_back(j, v);
  }
  return out;
}

std::string SparseIntMatrix::to_coordinate_text() const {
  std::ostringstream os;
  os << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [c, v] : data_[i]) os << i << ' ' << c << ' ' << v.get_str() << '\n';
  return os.str();
}

SparseIntMatrix SparseIntMatrix::from_coordinate_text(const std::string& text) {
  std::istringstream is(text);
  std::size_t r = 0, c = 0, n = 0;
  if (!(is >> r >> c >> n)) fail(ErrorCode::Parse, "coordinate matrix: bad header");
  SparseIntMatrix m(r, c);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = 0, j = 0;
    std::string v;
    if (!(is >> i >> j >> v)) fail(ErrorCode::Parse, "coordinate matrix: truncated entry list");
    if (i >= r || j >= c) fail(ErrorCode::Parse, "coordinate matrix: index out of range");
    BigInt value;
    if (value.set_str(v, 10) != 0) fail(ErrorCode::Parse, "coordinate matrix: bad integer '" + v + "'");
    m.add(i, j, value);
  }
  std::string extra;
  if (is >> extra) fail(ErrorCode::Parse, "coordinate matrix: trailing data");
  return m;
}

// ---------------------------------------------------------------------------
// Sparse elimination

namespace {

// Working state for sparse Smith elimination. Rows own their entries; each
// column keeps the exact list of rows that touch it, and columns are bucketed
// by that count so that low-count columns can be found quickly.
class SparseEliminator {
public:
  explicit SparseEliminator(const SparseIntMatrix& m)
      : rows_(m.rows()), col_rows_(m.cols()), bucket_of_(m.cols(), kNone), pos_(m.cols(), 0) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      rows_[r] = m.row(r);
      for (const auto& e : rows_[r]) col_rows_[e.first].push_back(r);
    }
    for (std::size_t c = 0; c < m.cols(); ++c) rebucket(c);
  }

  std::vector<BigInt> run() {
    std::vector<BigInt> diag;
    while (true) {
      auto pivot = choose_pivot();
      if (!pivot) break;
      diag.push_back(eliminate(pivot->first, pivot->second));
    }
    return diag;
  }

private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kSearchColumns = 4;

  using Row = SparseIntMatrix::Row;

  std::vector<Row> rows_;
  std::vector<std::vector<std::size_t>> col_rows_;
  std::vector<std::vector<std::size_t>> buckets_;
  std::vector<std::size_t> bucket_of_;
  std::vector<std::size_t> pos_;

  void rebucket(std::size_t c) {
    std::size_t want = col_rows_[c].size();
    if (bucket_of_[c] == want) return;
    if (bucket_of_[c] != kNone) {
      auto& b = buckets_[bucket_of_[c]];
      std::size_t last = b.back();
      b[pos_[c]] = last;
      pos_[last] = pos_[c];
      b.pop_back();
    }
    if (want >= buckets_.size()) buckets_.resize(want + 1);
    pos_[c] = buckets_[want].size();
    buckets_[want].push_back(c);
    bucket_of_[c] = want;
  }

  static const BigInt* find(const Row& row, std::size_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  void detach(std::size_t r, std::size_t c) {
    auto& list = col_rows_[c];
    auto it = std::find(list.begin(), list.end(), r);
    *it = list.back();
    list.pop_back();
    rebucket(c);
  }

  void attach(std::size_t r, std::size_t c) {
    col_rows_[c].push_back(r);
    rebucket(c);
  }

  // rows_[t] -= q * rows_[s], keeping column lists exact.
  void row_axpy(std::size_t t, const BigInt& q, std::size_t s) {
    const Row& src = rows_[s];
    Row& dst = rows_[t];
    Row out;
    out.reserve(dst.size() + src.size());
    std::vector<std::size_t> gained, lost;
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
        out.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].first < dst[i].first) {
        out.emplace_back(src[j].first, -q * src[j].second);
        gained.push_back(src[j].first);
        ++j;
      } else {
        BigInt v = dst[i].second - q * src[j].second;
        if (v != 0)
          out.emplace_back(dst[i].first, std::move(v));
        else
          lost.push_back(dst[i].first);
        ++i;
        ++j;
      }
    }
    dst = std::move(out);
    for (auto c : lost) detach(t, c);
    for (auto c : gained) attach(t, c);
  }

  std::optional<std::pair<std::size_t, std::size_t>> choose_pivot() {
    // Markowitz search among unit entries in the lowest-count columns.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::size_t best_cost = kNone;
    std::size_t unit_columns = 0;
    for (std::size_t k = 1; k < buckets_.size() && unit_columns < kSearchColumns; ++k) {
      for (std::size_t c : buckets_[k]) {
        bool has_unit = false;
        for (std::size_t r : col_rows_[c]) {
          const BigInt* v = find(rows_[r], c);
          if (abs(*v) != 1) continue;
          has_unit = true;
          std::size_t cost = (rows_[r].size() - 1) * (k - 1);
          if (cost < best_cost) {
            best_cost = cost;
            best = {r, c};
          }
        }
        if (has_unit && ++unit_columns >= kSearchColumns) break;
        if (best_cost == 0) return best;
      }
    }
    if (best) return best;

    // No unit anywhere in the scanned region: smallest magnitude wins, with
    // Markowitz cost as the tiebreak.
    const BigInt* best_val = nullptr;
    for (std::size_t k = 1; k < buckets_.size(); ++k) {
      for (std::size_t c : buckets_[k]) {
        for (std::size_t r : col_rows_[c]) {
          const BigInt* v = find(rows_[r], c);
          std::size_t cost = (rows_[r].size() - 1) * (k - 1);
          int cmp = best_val ? cmpabs(*v, *best_val) : -1;
          if (cmp < 0 || (cmp == 0 && cost < best_cost)) {
            best_val = v;
            best_cost = cost;
            best = {r, c};
          }
        }
      }
    }
    return best;
  }

  // Reduces until row r and column c are zero apart from a single pivot,
  // removes both, and returns |pivot|. The pivot position may move while
  // remainders are smaller than the current pivot.
  BigInt eliminate(std::size_t r, std::size_t c) {
    while (true) {
      // Column phase.
      bool column_clean = false;
      while (!column_clean) {
        BigInt v = *find(rows_[r], c);
        std::vector<std::size_t> others;
        for (std::size_t o : col_rows_[c])
          if (o != r) others.push_back(o);
        for (std::size_t o : others) {
          BigInt q;
          mpz_tdiv_q(q.get_mpz_t(), find(rows_[o], c)->get_mpz_t(), v.get_mpz_t());
          if (q != 0) row_axpy(o, q, r);
        }
        column_clean = col_rows_[c].size() == 1;
        if (!column_clean) {
          for (std::size_t o : col_rows_[c])
            if (cmpabs(*find(rows_[o], c), *find(rows_[r], c)) < 0) r = o;
        }
      }

      // Row phase: column c now meets only row r, so a column operation
      // col_j -= q col_c changes nothing but entry (r, j).
      BigInt v = *find(rows_[r], c);
      Row& row = rows_[r];
      Row kept;
      std::vector<std::size_t> lost;
      std::size_t smallest = kNone;
      for (auto& [j, e] : row) {
        if (j == c) {
          kept.emplace_back(j, e);
          continue;
        }
        BigInt rem;
        mpz_tdiv_r(rem.get_mpz_t(), e.get_mpz_t(), v.get_mpz_t());
        if (rem == 0) {
          lost.push_back(j);
        } else {
          if (smallest == kNone || cmpabs(rem, *find(kept, smallest)) < 0) smallest = j;
          kept.emplace_back(j, std::move(rem));
        }
      }
      row = std::move(kept);
      for (auto j : lost) detach(r, j);
      if (smallest == kNone) {
        detach(r, c);
        row.clear();
        return abs(v);
      }
      c = smallest;
    }
  }
};

// Dense Smith form with recorded transforms.
struct DenseSmith {
  // g = x a + y b with g = gcd(a, b) > 0. When a | b this is plain elimination
  // (y = 0), which keeps an existing pivot in place.
  static void bezout(const BigInt& a, const BigInt& b, BigInt& g, BigInt& x, BigInt& y) {
    if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
      g = abs(a);
      x = sgn(a);
      y = 0;
      return;
    }
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }

  DenseIntMatrix a, u, v;
  std::size_t m, n;

  DenseSmith(DenseIntMatrix input, std::size_t cols) : a(std::move(input)), m(a.size()), n(cols) {
    u = dense_identity(m);
    v = dense_identity(n);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // Rows (s, t) <- [[x, y], [-b/g, a/g]] (s, t) where g = x a + y b is the gcd
  // of the pivot a = a[s][c] and b = a[t][c]. Clears a[t][c] with determinant 1.
  void row_bezout(std::size_t s, std::size_t t, std::size_t c) {
    BigInt g, x, y;
    bezout(a[s][c], a[t][c], g, x, y);
    BigInt p = a[s][c] / g, q = a[t][c] / g;
    auto mix = [&](std::vector<BigInt>& rs, std::vector<BigInt>& rt) {
      for (std::size_t k = 0; k < rs.size(); ++k) {
        BigInt vs = x * rs[k] + y * rt[k];
        rt[k] = p * rt[k] - q * rs[k];
        rs[k] = std::move(vs);
      }
    };
    mix(a[s], a[t]);
    mix(u[s], u[t]);
  }
  // Column analogue of row_bezout: clears a[r][t] against the pivot a[r][s].
  void col_bezout(std::size_t s, std::size_t t, std::size_t r) {
    BigInt g, x, y;
    bezout(a[r][s], a[r][t], g, x, y);
    BigInt p = a[r][s] / g, q = a[r][t] / g;
    auto mix = [&](DenseIntMatrix& mat) {
      for (auto& row : mat) {
        BigInt vs = x * row[s] + y * row[t];
        row[t] = p * row[t] - q * row[s];
        row[s] = std::move(vs);
      }
    };
    mix(a);
    mix(v);
  }
  // row_t += row_s
  void add_row(std::size_t t, std::size_t s) {
    for (std::size_t k = 0; k < n; ++k) a[t][k] += a[s][k];
    for (std::size_t k = 0; k < m; ++k) u[t][k] += u[s][k];
  }

  std::vector<BigInt> run() {
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      // Smallest nonzero entry of the trailing block.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pi == m || cmpabs(a[i][j], a[pi][pj]) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      swap_rows(t, pi);
      swap_cols(t, pj);

      while (true) {
        for (std::size_t i = t + 1; i < m; ++i)
          if (a[i][t] != 0) row_bezout(t, i, t);
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[t][j] != 0) col_bezout(t, j, t);
        bool dirty = false;
        for (std::size_t i = t + 1; i < m && !dirty; ++i) dirty = a[i][t] != 0;
        if (dirty) continue;
        // Pivot must divide the whole trailing block.
        std::size_t bad = m;
        for (std::size_t i = t + 1; i < m && bad == m; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
              bad = i;
              break;
            }
        if (bad == m) break;
        add_row(t, bad);
      }
      if (a[t][t] < 0) {
        for (auto& x : a[t]) x = -x;
        for (auto& x : u[t]) x = -x;
      }
      diag.push_back(a[t][t]);
    }
    return diag;
  }
};

}  // namespace

SmithForm smith_normal_form(const SparseIntMatrix& m, bool with_transforms) {
  SmithForm out;
  if (with_transforms) {
    DenseSmith ds(m.to_dense(), m.cols());
    out.diagonal = ds.run();
    out.left = std::move(ds.u);
    out.right = std::move(ds.v);
    return out;
  }
  SparseEliminator elim(m);
  out.diagonal = normalize_diagonal(elim.run());
  return out;
}

AbelianGroupStructure homology_of_pair(const SparseIntMatrix& d_k, const SparseIntMatrix& d_k1) {
  if (d_k.cols() != d_k1.rows())
    fail(ErrorCode::InvalidArgument, "homology_of_pair: boundary maps are not composable");
  if (!d_k.multiply(d_k1).is_zero())
    fail(ErrorCode::ComplexNotExact, "homology_of_pair: d_k * d_{k+1} != 0");
  std::size_t rank_k = smith_normal_form(d_k).rank();
  SmithForm s = smith_normal_form(d_k1);
  AbelianGroupStructure h;
  h.free_rank = d_k.cols() - rank_k - s.rank();
  for (const auto& d : s.diagonal)
    if (d > 1) h.invariant_factors.push_back(d);
  return h;
}

DenseIntMatrix dense_identity(std::size_t n) {
  DenseIntMatrix id(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

DenseIntMatrix dense_multiply(const DenseIntMatrix& a, const DenseIntMatrix& b) {
  std::size_t m = a.size(), k = b.size(), n = k ? b[0].size() : 0;
  if (m && a[0].size() != k) fail(ErrorCode::InvalidArgument, "dense_multiply: dimension mismatch");
  DenseIntMatrix c(m, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

BigInt dense_determinant(DenseIntMatrix m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace surfcert
