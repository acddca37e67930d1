#pragma once

// Finite groups given by permutation generators.
//
// Permutations act on the right: x^(gh) = (x^g)^h, so the product g * h
// applies g first. Word evaluation multiplies left to right, which makes the
// two conventions agree.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "surfcert/linalg.hpp"

namespace surfcert {

using Point = std::uint32_t;

class Permutation {
public:
  Permutation() = default;
  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);
  /// Throws InvalidArgument unless `images` is a bijection of {0..n-1}.
  explicit Permutation(std::vector<Point> images);

  /// Builds from disjoint or overlapping cycles (applied left to right).
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);
  /// Parses "(1,4,7)(2,5)" with 1-based points; "()" is the identity.
  static Permutation parse_cycles(std::size_t degree, const std::string& text);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation pow(std::int64_t e) const;
  /// Smallest moved point, or degree() for the identity.
  Point first_moved_point() const;
  /// 1-based disjoint cycle notation; "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<Point> images_;
};

inline Permutation inverse(const Permutation& p) { return p.inverse(); }

/// lcm of the cycle lengths.
std::uint64_t element_order(const Permutation& g);

/// Seeded generator with platform-independent bounded draws.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

/// One level of a stabilizer chain: the orbit of `base_point` under the
/// strong generators fixing all earlier base points, with a transversal.
struct StabilizerLevel {
  Point base_point = 0;
  std::vector<Permutation> strong_generators;
  std::vector<Point> orbit;
  /// Position of each point in `orbit`, or -1.
  std::vector<std::int64_t> orbit_position;
  /// transversal[k] maps base_point to orbit[k].
  std::vector<Permutation> transversal;
  std::vector<Permutation> transversal_inverse;
};

struct Bsgs {
  std::vector<StabilizerLevel> levels;

  std::vector<Point> base() const;
  BigInt order() const;
};

/// Schreier-Sims with base points chosen as the first point moved by the
/// generator that forces a new level. Deterministic in the generator order.
Bsgs schreier_sims(std::size_t degree, std::span<const Permutation> generators);

class PermGroup {
public:
  PermGroup() : PermGroup(0, {}) {}
  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name = {});

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::string& name() const { return name_; }
  Permutation identity() const { return Permutation(degree_); }

  /// Lazily built and cached; safe to call concurrently.
  const Bsgs& bsgs() const;
  BigInt order() const { return bsgs().order(); }
  /// Throws InvalidArgument on degree mismatch.
  bool contains(const Permutation& g) const;
  bool is_abelian() const;

  /// Elements are numbered by their transversal coordinates; requires
  /// |G| < 2^64.
  std::uint64_t element_index(const Permutation& g) const;
  Permutation element_at(std::uint64_t index) const;
  std::uint64_t order_u64() const;
  Permutation random_element(Rng& rng) const;
  /// All elements in index order. Throws SizeCapExceeded above `limit`.
  std::vector<Permutation> elements(std::uint64_t limit = 1'000'000) const;

  PermGroup with_generators(const std::vector<Permutation>& extra) const;

private:
  struct Cache {
    std::once_flag once;
    Bsgs bsgs;
  };

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::string name_;
  std::shared_ptr<Cache> cache_;
};

/// Smallest normal subgroup of G containing g. Random conjugates seed the
/// generating set, then conjugates of every generator by every generator of
/// G are added until closed. Throws InvalidArgument when g is not in G.
PermGroup normal_closure(const PermGroup& g_group, const Permutation& g, std::uint64_t seed = 0xC0FFEE);

/// Subgroup generated by commutators of generators, closed under conjugation.
PermGroup derived_subgroup(const PermGroup& g);

inline constexpr std::uint64_t kDefaultSimplicityBound = 10'000'000;

struct SimplicityReport {
  bool simple = false;
  std::size_t classes_examined = 0;
  /// Set when a proper non-trivial normal subgroup was found.
  std::optional<Permutation> witness;
  BigInt witness_closure_order = 0;
};

/// Normal closure of one representative per conjugacy class. Classes are
/// found by seeded random sampling, then a deterministic sweep over element
/// indices, until the class sizes add up to |G|. Throws SizeCapExceeded when
/// |G| > bound.
SimplicityReport simplicity_report(const PermGroup& g, std::uint64_t bound = kDefaultSimplicityBound,
                                   std::uint64_t seed = 0xC0FFEE);
bool is_simple(const PermGroup& g, std::uint64_t bound = kDefaultSimplicityBound, std::uint64_t seed = 0xC0FFEE);

/// Generators a, b of a copy of He_3(p) inside some permutation group.
struct HeisenbergWitness {
  Permutation a;
  Permutation b;
  std::uint64_t p = 0;

  Permutation center() const;  // [a, b]
};

struct WitnessCheck {
  bool a_order_p = false;
  bool b_order_p = false;
  bool z_order_p = false;
  bool a_commutes_with_z = false;
  bool b_commutes_with_z = false;
  bool subgroup_order_p3 = false;
  bool in_group = false;

  bool ok() const {
    return a_order_p && b_order_p && z_order_p && a_commutes_with_z && b_commutes_with_z && subgroup_order_p3 &&
           in_group;
  }
};

WitnessCheck verify_witness(const PermGroup& g, const HeisenbergWitness& w);

struct HeisenbergExcluded {
  std::string reason;
};
struct HeisenbergNotFound {
  std::uint64_t trials = 0;
};
using HeisenbergSearch = std::variant<HeisenbergWitness, HeisenbergNotFound, HeisenbergExcluded>;

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000;

/// Lagrange exclusion when p^3 does not divide |G|; otherwise a seeded search
/// over pairs of order-p elements. NotFound is inconclusive.
HeisenbergSearch find_heisenberg_subgroup(const PermGroup& g, std::uint64_t p, std::uint64_t seed = 0xC0FFEE,
                                          std::uint64_t budget = kDefaultSearchBudget);

}  // namespace surfcert
