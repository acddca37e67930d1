#pragma once

// Groups, presentations and homomorphisms used by the certificate routes.

#include <cstdint>
#include <string>
#include <vector>

#include "surfcert/homology.hpp"
#include "surfcert/perm_group.hpp"
#include "surfcert/presentation.hpp"

namespace surfcert {

// --- Circle bundles ----------------------------------------------------------

/// Circle bundle of Euler number n over the closed orientable surface of
/// genus g.
struct CircleBundleSpec {
  std::uint32_t genus = 0;
  std::int64_t euler_number = 1;

  void validate() const;
};

/// Which orientation of the fibre is called the meridian.
enum class MeridianConvention { Z, ZInverse };

std::string to_string(MeridianConvention c);

/// Generators a1, b1, ..., ag, bg, z; relators [a_j, z], [b_j, z] and
/// [a1,b1]...[ag,bg] z^-n; mark "mu" = z (or z^-1).
Presentation circle_bundle_pi1(const CircleBundleSpec& spec, MeridianConvention mu = MeridianConvention::Z);

// --- Heisenberg groups -------------------------------------------------------

/// Upper uni-triangular 3x3 integer matrix with superdiagonal (x, y) and
/// corner t. Product: (x1,y1,t1)(x2,y2,t2) = (x1+x2, y1+y2, t1+t2+x1 y2).
struct He3Element {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t t = 0;

  He3Element operator*(const He3Element& o) const { return {x + o.x, y + o.y, t + o.t + x * o.y}; }
  He3Element inverse() const { return {-x, -y, -t + x * y}; }
  /// Coordinates reduced into [0, p).
  He3Element reduce(std::uint64_t p) const;

  friend bool operator==(const He3Element&, const He3Element&) = default;
};

inline He3Element inverse(const He3Element& e) { return e.inverse(); }

/// <a, b, z | [a,b] z^-1, [a,z], [b,z]>.
Presentation he3_integer_presentation();
/// The integer presentation plus a^p, b^p, z^p.
Presentation he3_mod_p_presentation(std::uint64_t p);

/// Images of a1, b1, ..., z in He_3(Z): a1 -> (1,0,0), b1 -> (0,1,0), other
/// surface generators -> 1, z -> (0,0,n). Requires n = +-1 and g >= 1.
std::vector<He3Element> heisenberg_surjection(const CircleBundleSpec& spec);

/// He_3(p) acting on itself by right multiplication (degree p^3).
struct He3ModP {
  std::uint64_t p = 0;
  PermGroup group;

  /// Point index of the reduced element (x, y, t): x + p y + p^2 t.
  Point point_of(const He3Element& e) const;
  /// Right multiplication by the reduction of e.
  Permutation element(const He3Element& e) const;
  Permutation a() const { return element({1, 0, 0}); }
  Permutation b() const { return element({0, 1, 0}); }
  Permutation z() const { return element({0, 0, 1}); }
};

He3ModP he3_mod_p(std::uint64_t p);

// --- Cyclic groups -----------------------------------------------------------

/// Residue v modulo n, written multiplicatively for word evaluation.
struct ZmodElement {
  std::uint64_t n = 1;
  std::uint64_t v = 0;

  ZmodElement operator*(const ZmodElement& o) const { return {n, (v + o.v) % n}; }
  ZmodElement inverse() const { return {n, (n - v) % n}; }

  friend bool operator==(const ZmodElement&, const ZmodElement&) = default;
};

inline ZmodElement inverse(const ZmodElement& e) { return e.inverse(); }

/// Z/n acting regularly on n points.
PermGroup cyclic_group(std::uint64_t n);

/// pi_1(Y) -> Z/n with surface generators -> 0 and z -> 1. Requires
/// |euler_number| = n.
std::vector<ZmodElement> cyclic_quotient(const CircleBundleSpec& spec, std::uint64_t n);

// --- PSL_2(p) ----------------------------------------------------------------

/// PSL_2(p) on the projective line {0, ..., p-1, oo}, oo = point p.
struct Psl2 {
  std::uint64_t p = 0;
  PermGroup group;
  /// x -> x + 1.
  Permutation unipotent;
  /// x -> w^2 x for the smallest primitive root w.
  Permutation torus;
  /// x -> -1/x.
  Permutation inversion;
};

/// Requires p >= 5 prime.
Psl2 psl2(std::uint64_t p);

/// The unit c with torus^-1 * unipotent * torus = unipotent^c, read off the
/// constructed permutations.
WeylAction psl2_weyl_action(const Psl2& g);

// --- Permutation group data files --------------------------------------------

struct PermGroupFile {
  std::string name;
  std::size_t degree = 0;
  BigInt declared_order;
  std::vector<Permutation> generators;
};

/// Header lines `name`, `degree`, `order`, then one generator per line in
/// 1-based cycle notation. '#' starts a comment line.
PermGroupFile parse_perm_group_file(const std::string& text);

/// Loads `<data_dir>/mathieu/<name>.perm` and verifies the declared order.
/// Throws DataMissing or DataCorrupt.
PermGroup load_mathieu(const std::string& name, const std::string& data_dir);
std::string mathieu_path(const std::string& name, const std::string& data_dir);

// --- Knots -------------------------------------------------------------------

struct KnotSpec {
  std::string name;
  /// Carries the meridian as mark "mu".
  Presentation presentation;
};

/// Checks the abelianization is Z with mu a generator.
KnotSpec make_knot(std::string name, Presentation presentation);

/// <x, y | x^p = y^q> with meridian y^v x^u where u q + v p = 1.
KnotSpec torus_knot_group(std::int64_t p, std::int64_t q);

/// "unknot", "trefoil", "cinquefoil", or "torus:p,q".
KnotSpec builtin_knot(const std::string& name);

/// pi_1(S^3 - K) / <<mu^d>>.
Presentation twist_spin_quotient(const KnotSpec& k, std::int64_t d);

}  // namespace surfcert
