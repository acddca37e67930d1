#include <doctest.h>

#include <random>
#include <variant>

#include "../oracles/naive_closure.hpp"
#include "surfcert/constructions.hpp"
#include "surfcert/error.hpp"
#include "surfcert/perm_group.hpp"

using namespace surfcert;

namespace {

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(im);
}

std::vector<oracle::Perm> raw(const std::vector<Permutation>& v) {
  std::vector<oracle::Perm> out;
  for (const auto& p : v) out.push_back(p.images());
  return out;
}

std::string data_dir() { return SURFCERT_TEST_DATA_DIR; }

}  // namespace

TEST_CASE("permutation arithmetic") {
  auto a = Permutation::parse_cycles(5, "(1,2,3)");
  auto b = Permutation::parse_cycles(5, "(3,4)");
  // Right action: a first, then b. 1 -> 2, 2 -> 3 -> 4, 3 -> 1, 4 -> 3.
  CHECK((a * b).to_cycle_string() == "(1,2,4,3)");
  CHECK(oracle::compose(a.images(), b.images()) == (a * b).images());
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.pow(3).is_identity());
  CHECK(a.pow(-1) == a.inverse());
  CHECK(element_order(a * b) == 4);
  CHECK(element_order(Permutation::parse_cycles(7, "(1,2)(3,4,5)")) == 6);
  CHECK(Permutation(5).to_cycle_string() == "()");
  CHECK(a.first_moved_point() == 0);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0}), Error);
  CHECK_THROWS_AS(Permutation::parse_cycles(3, "(1,4)"), Error);
}

TEST_CASE("Schreier-Sims order and membership match naive closure") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> ngens(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Permutation> gens;
    int k = ngens(rng);
    for (int i = 0; i < k; ++i) {
      // Mix in sparse generators so that proper subgroups are common.
      Permutation g = random_perm(rng, 7);
      if (i > 0 && trial % 2 == 0) g = Permutation::from_cycles(7, {{static_cast<Point>(i), static_cast<Point>(i + 2)}});
      gens.push_back(g);
    }
    PermGroup G(7, gens);
    auto naive = oracle::closure(7, raw(gens));
    CHECK(G.order() == naive.size());
    for (int j = 0; j < 30; ++j) {
      Permutation x = random_perm(rng, 7);
      CHECK(G.contains(x) == naive.contains(x.images()));
    }
    for (const auto& g : naive) CHECK(G.contains(Permutation(g)));
  }
}

TEST_CASE("element indexing is a bijection") {
  PermGroup s4(4, {Permutation::parse_cycles(4, "(1,2,3,4)"), Permutation::parse_cycles(4, "(1,2)")});
  auto el = s4.elements();
  CHECK(el.size() == 24);
  for (std::uint64_t i = 0; i < el.size(); ++i) {
    CHECK(s4.element_at(i) == el[i]);
    CHECK(s4.element_index(el[i]) == i);
  }
  CHECK_THROWS_AS(s4.elements(10), Error);
}

TEST_CASE("parity subgroup") {
  PermGroup a5(5, {Permutation::parse_cycles(5, "(1,2,3)"), Permutation::parse_cycles(5, "(1,2,3,4,5)")});
  CHECK(a5.order() == 60);
  CHECK(a5.contains(Permutation::parse_cycles(5, "(1,2)(3,4)")));
  CHECK_FALSE(a5.contains(Permutation::parse_cycles(5, "(1,2)")));
  CHECK_THROWS_AS(a5.contains(Permutation(4)), Error);
}

TEST_CASE("normal closures in S4 match the oracle") {
  PermGroup s4(4, {Permutation::parse_cycles(4, "(1,2,3,4)"), Permutation::parse_cycles(4, "(1,2)")});
  for (const auto& g : s4.elements()) {
    auto n = normal_closure(s4, g);
    auto naive = oracle::normal_closure(4, raw(s4.generators()), {g.images()});
    CHECK(n.order() == naive.size());
  }
  CHECK(normal_closure(s4, Permutation::parse_cycles(4, "(1,2)(3,4)")).order() == 4);
  CHECK(normal_closure(s4, Permutation::parse_cycles(4, "(1,2,3)")).order() == 12);
  CHECK_THROWS_AS(normal_closure(PermGroup(4, {Permutation::parse_cycles(4, "(1,2)")}),
                                 Permutation::parse_cycles(4, "(3,4)")),
                  Error);
  CHECK(derived_subgroup(s4).order() == 12);
}

TEST_CASE("simplicity") {
  CHECK_FALSE(is_simple(cyclic_group(6)));
  CHECK(is_simple(cyclic_group(7)));
  PermGroup a5(5, {Permutation::parse_cycles(5, "(1,2,3)"), Permutation::parse_cycles(5, "(1,2,3,4,5)")});
  CHECK(is_simple(a5));
  auto rep = simplicity_report(he3_mod_p(3).group);
  CHECK_FALSE(rep.simple);
  REQUIRE(rep.witness);
  CHECK(rep.witness_closure_order > 1);
  CHECK(rep.witness_closure_order < 27);
  CHECK(is_simple(psl2(7).group));
  CHECK_THROWS_AS(simplicity_report(a5, 10), Error);
}

TEST_CASE("He3(2) has six elements of order at most 2") {
  // He3(2) is dihedral of order 8: the identity and five involutions.
  auto h = he3_mod_p(2);
  int small = 0;
  for (const auto& g : h.group.elements()) small += element_order(g) <= 2;
  CHECK(small == 6);
}

TEST_CASE("Heisenberg search") {
  SUBCASE("He3(3) contains itself") {
    auto h = he3_mod_p(3);
    auto r = find_heisenberg_subgroup(h.group, 3);
    REQUIRE(std::holds_alternative<HeisenbergWitness>(r));
    CHECK(verify_witness(h.group, std::get<HeisenbergWitness>(r)).ok());
  }
  SUBCASE("Lagrange exclusion") {
    auto r = find_heisenberg_subgroup(psl2(7).group, 3);
    CHECK(std::holds_alternative<HeisenbergExcluded>(r));
  }
  SUBCASE("M11 at p = 2 and p = 3") {
    PermGroup m11 = load_mathieu("M11", data_dir());
    auto r2 = find_heisenberg_subgroup(m11, 2);
    REQUIRE(std::holds_alternative<HeisenbergWitness>(r2));
    auto w = std::get<HeisenbergWitness>(r2);
    CHECK(verify_witness(m11, w).ok());
    CHECK(element_order(w.center()) == 2);
    CHECK(std::holds_alternative<HeisenbergExcluded>(find_heisenberg_subgroup(m11, 3)));
  }
  SUBCASE("a bad witness is rejected") {
    auto h = he3_mod_p(3);
    HeisenbergWitness w{h.a(), h.z(), 3};
    auto c = verify_witness(h.group, w);
    CHECK_FALSE(c.ok());
    CHECK_FALSE(c.z_order_p);
  }
  SUBCASE("search is seeded") {
    PermGroup m11 = load_mathieu("M11", data_dir());
    auto a = std::get<HeisenbergWitness>(find_heisenberg_subgroup(m11, 2, 99));
    auto b = std::get<HeisenbergWitness>(find_heisenberg_subgroup(m11, 2, 99));
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
  }
}
