#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "../oracles/snf_oracle.hpp"
#include "surfcert/error.hpp"
#include "surfcert/linalg.hpp"

using namespace surfcert;

namespace {

SparseIntMatrix random_sparse(std::mt19937_64& rng, std::size_t max_dim, double density, int max_abs) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::size_t r = dim(rng), c = dim(rng);
  SparseIntMatrix m(r, c);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> val(-max_abs, max_abs);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) m.set(i, j, val(rng));
  return m;
}

bool divisibility_chain(const std::vector<BigInt>& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 1) return false;
    if (i + 1 < d.size() && !mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t())) return false;
  }
  return true;
}

SparseIntMatrix permuted(const SparseIntMatrix& m, const std::vector<std::size_t>& rp,
                         const std::vector<std::size_t>& cp) {
  SparseIntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) out.set(rp[i], cp[j], v);
  return out;
}

}  // namespace

TEST_CASE("AbelianGroupStructure normalizes cyclic orders") {
  auto a = AbelianGroupStructure::from_cyclic_orders({4, 6, 0, 1});
  CHECK(a.free_rank == 1);
  CHECK(a.invariant_factors == std::vector<BigInt>{2, 12});
  CHECK(a.to_string() == "Z + Z/2 + Z/12");
  CHECK(AbelianGroupStructure{}.to_string() == "0");
  CHECK(a.has_p_torsion(3));
  CHECK_FALSE(a.has_p_torsion(5));
  CHECK(a.torsion_order() == 24);
}

TEST_CASE("normalize_diagonal produces a divisibility chain") {
  CHECK(normalize_diagonal({6, 4}) == std::vector<BigInt>{2, 12});
  CHECK(normalize_diagonal({-3, 1, 5}) == std::vector<BigInt>{1, 1, 15});
  CHECK(normalize_diagonal({}) == std::vector<BigInt>{});
}

TEST_CASE("SNF of small known matrices") {
  auto m = SparseIntMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(smith_normal_form(m).diagonal == std::vector<BigInt>{2, 6, 12});
  CHECK(smith_normal_form(SparseIntMatrix(3, 2)).diagonal.empty());
  auto tref = SparseIntMatrix::from_dense({{1, -1}});
  CHECK(smith_normal_form(tref).diagonal == std::vector<BigInt>{1});
}

TEST_CASE("SNF agrees with determinantal divisors") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    SparseIntMatrix m = random_sparse(rng, 5, 0.6, 9);
    auto expect = oracle::invariant_factors(m.to_dense());
    CHECK(smith_normal_form(m).diagonal == expect);
    CHECK(smith_normal_form(m, true).diagonal == expect);
  }
}

TEST_CASE("SNF transforms are unimodular and diagonalize") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    SparseIntMatrix m = random_sparse(rng, 12, 0.3, 20);
    SmithForm s = smith_normal_form(m, true);
    REQUIRE(s.left);
    REQUIRE(s.right);
    auto d = dense_multiply(dense_multiply(*s.left, m.to_dense()), *s.right);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        BigInt expect = (i == j && i < s.diagonal.size()) ? s.diagonal[i] : BigInt(0);
        CHECK(d[i][j] == expect);
      }
    CHECK(abs(dense_determinant(*s.left)) == 1);
    CHECK(abs(dense_determinant(*s.right)) == 1);
    CHECK(divisibility_chain(s.diagonal));
  }
}

TEST_CASE("SNF chain and permutation invariance on random sparse matrices") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    SparseIntMatrix m = random_sparse(rng, 50, 0.1, 30);
    auto d = smith_normal_form(m).diagonal;
    CHECK(divisibility_chain(d));
    std::vector<std::size_t> rp(m.rows()), cp(m.cols());
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    CHECK(smith_normal_form(permuted(m, rp, cp)).diagonal == d);
  }
}

TEST_CASE("SNF survives coefficient growth") {
  // Consecutive Fibonacci-like rows force large intermediate entries.
  DenseIntMatrix dense(8, std::vector<BigInt>(8, 0));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) dense[i][j] = BigInt(static_cast<long>((i + 1) * (j + 3) * (i + j + 7))) * 1000003;
  auto m = SparseIntMatrix::from_dense(dense);
  CHECK(smith_normal_form(m).diagonal == oracle::invariant_factors(dense));
}

TEST_CASE("homology_of_pair") {
  // Circle: d1 = 0 on one vertex and one edge.
  CHECK(homology_of_pair(SparseIntMatrix(1, 1), SparseIntMatrix(1, 0)).free_rank == 1);
  // RP^2 cellular chain: d2 = [2], d1 = 0.
  auto h1 = homology_of_pair(SparseIntMatrix(1, 1), SparseIntMatrix::from_dense({{2}}));
  CHECK(h1 == AbelianGroupStructure::from_cyclic_orders({2}));
  CHECK_THROWS_AS(homology_of_pair(SparseIntMatrix::from_dense({{1}}), SparseIntMatrix::from_dense({{1}})), Error);
}

TEST_CASE("coordinate text round trip") {
  auto m = SparseIntMatrix::from_dense({{0, 5, 0}, {-123456789012345678, 0, 1}});
  std::string text = m.to_coordinate_text();
  CHECK(text.rfind("2 3 3\n", 0) == 0);
  CHECK(SparseIntMatrix::from_coordinate_text(text) == m);
  CHECK_THROWS_AS(SparseIntMatrix::from_coordinate_text("2 2 1\n5 0 1\n"), Error);
}

TEST_CASE("set and add keep no stored zeros") {
  SparseIntMatrix m(2, 2);
  m.add(0, 1, 3);
  m.add(0, 1, -3);
  CHECK(m.nnz() == 0);
  m.set(1, 1, 7);
  m.set(1, 1, 0);
  CHECK(m.is_zero());
  CHECK_THROWS_AS(m.set(2, 0, 1), Error);
}
