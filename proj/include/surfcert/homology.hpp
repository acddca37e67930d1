#pragma once

// Integral homology of finite groups in low degrees.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>

#include "surfcert/external_table.hpp"
#include "surfcert/linalg.hpp"
#include "surfcert/perm_group.hpp"

namespace surfcert {

enum class HomologyMethod { Periodic, Bar, SwanWeyl, ExternalTable };

std::string to_string(HomologyMethod m);

struct HomologyResult {
  std::string group_id;
  int degree = 0;
  AbelianGroupStructure structure;
  HomologyMethod method = HomologyMethod::Periodic;
  bool certified = false;
  /// Required (non-empty) when method is ExternalTable.
  std::string citation;
};

/// H_k(Z/n; Z) from the 2-periodic resolution: Z in degree 0, Z/n in odd
/// degrees, 0 in positive even degrees.
AbelianGroupStructure homology_cyclic(std::uint64_t n, int k);

inline constexpr std::uint64_t kDefaultBarSizeCap = 16;

/// Boundary map d_j : C_j -> C_{j-1} of the normalized bar complex with
/// trivial Z coefficients. Basis of C_j: j-tuples of non-identity elements in
/// mixed radix order, first entry most significant. Rows index C_{j-1}.
SparseIntMatrix bar_boundary(const PermGroup& g, int j, std::uint64_t size_cap = kDefaultBarSizeCap);

/// H_k(G; Z) for k <= 3 via the normalized bar complex. Throws
/// SizeCapExceeded when |G| > size_cap.
HomologyResult bar_homology(const PermGroup& g, int k, std::uint64_t size_cap = kDefaultBarSizeCap,
                            const std::string& group_id = {});

/// Exponent bound p^3 for H_3(He_3(p); Z).
BigInt he3_annihilation_bound(std::uint64_t p);

/// The normalizer of a Sylow p-subgroup of PSL_2(p) acts on H^2(Z/p) = Z/p
/// through multiplication by `unit`.
struct WeylAction {
  std::uint64_t p = 0;
  std::uint64_t unit = 1;
};

/// Fixed points of multiplication by unit^ell on H^{2 ell}(Z/p) = Z/p.
AbelianGroupStructure weyl_fixed_points(const WeylAction& action, std::uint64_t ell);

bool is_prime(std::uint64_t n);
/// Smallest primitive root modulo a prime p.
std::uint64_t primitive_root(std::uint64_t p);
/// Square of the smallest primitive root; generates the quadratic residues.
std::uint64_t quadratic_residue_generator(std::uint64_t p);
/// Multiplicative order of a modulo p.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p);

/// Cohomological degrees 2 <= k <= k_max with p-torsion in H^k(PSL_2(p); Z),
/// from the closed form: k = 2 ell with (p-1)/2 | ell.
std::set<int> psl2_torsion_degrees_formula(std::uint64_t p, int k_max);
/// Same set, degree by degree from the fixed points of a Weyl action.
std::set<int> psl2_torsion_degrees_weyl(const WeylAction& action, int k_max);
/// Both of the above with the quadratic-residue action; throws if they
/// disagree. Requires p >= 5 prime.
std::set<int> psl2_p_torsion_degrees(std::uint64_t p, int k_max);

/// For finite groups the torsion of H^{k+1}(G; Z) matches that of H_k(G; Z)
/// by universal coefficients (H_k is finite for k >= 1).
int homological_degree_from_cohomological(int k);
int cohomological_degree_from_homological(int k);

// --- No-p-torsion evidence --------------------------------------------------

struct ComputedH3 {
  HomologyResult h3;
};
struct Psl2Formula {
  /// The q of PSL_2(q).
  std::uint64_t q = 0;
};
struct TableEntry {
  ExternalRecord record;
};
using H3Evidence = std::variant<ComputedH3, Psl2Formula, TableEntry>;

enum class ProvenanceKind { Computed, Formula, CitedBound, ExternalTable };
std::string to_string(ProvenanceKind k);

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::Computed;
  std::string text;
};

struct TorsionVerdict {
  bool no_p_torsion = false;
  Provenance provenance;
};

/// Throws EvidenceInapplicable when the evidence does not speak to
/// H_3(group; Z) at p.
TorsionVerdict h3_has_no_p_torsion(const std::string& group_id, std::uint64_t p, const H3Evidence& evidence);

/// A homomorphism from an abelian group of exponent dividing `exponent` into
/// `target` is zero whenever the exponent is a power of p and the target has
/// no p-torsion.
bool p_power_torsion_maps_to_zero(const BigInt& exponent, std::uint64_t p, const AbelianGroupStructure& target);
/// True iff n is a power of p (including p^0 = 1).
bool is_power_of(const BigInt& n, std::uint64_t p);

}  // namespace surfcert
