#pragma once

// Certificates for the group-theoretic hypotheses of the complement
// construction, and the desk-scale table reproduction.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surfcert/constructions.hpp"
#include "surfcert/external_table.hpp"
#include "surfcert/homology.hpp"
#include "surfcert/perm_group.hpp"

namespace surfcert {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;
inline constexpr int kCertificateSchema = 1;

enum class CheckStatus { Pass, Fail, Inconclusive, External };
enum class Verdict { Pass, Fail, Inconclusive, ExternalOnly };
enum class Route { Heisenberg, Cyclic, TwistSpin };

std::string to_string(CheckStatus s);
std::string to_string(Verdict v);
std::string to_string(Route r);
Route parse_route(const std::string& s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Inconclusive;
  ProvenanceKind provenance = ProvenanceKind::Computed;
  std::string detail;
  /// Citation, set when provenance is ExternalTable.
  std::string citation;
};

enum class SpinStatus { Eligible, Ineligible, Inconclusive, NotApplicable };
std::string to_string(SpinStatus s);

struct SpinVerdict {
  SpinStatus status = SpinStatus::NotApplicable;
  std::string detail;
};

struct Certificate {
  Route route = Route::Heisenberg;
  std::uint32_t genus = 0;
  std::int64_t euler_number = 0;
  std::string target;
  std::uint64_t prime = 0;
  MeridianConvention mu = MeridianConvention::Z;
  std::string knot;
  std::int64_t d = 0;
  std::int64_t m = 0;

  std::vector<Check> checks;
  Verdict verdict = Verdict::Inconclusive;
  bool certified = false;
  std::vector<std::string> conditional_on;
  std::optional<SpinVerdict> spin;

  std::uint64_t seed = kDefaultSeed;
  /// Data file (path relative to the data directory) -> SHA-256 hex digest.
  std::map<std::string, std::string> data_files;
  /// Replay data: permutation images in 1-based cycle notation, keyed by
  /// source generator name, plus "degree".
  std::map<std::string, std::string> witness;

  const Check* find(const std::string& name) const;
};

/// Fail beats Inconclusive beats ExternalOnly beats Pass. ExternalOnly means
/// one of hom-well-defined, mu-nontrivial or normal-generation rests on cited
/// data only. External checks elsewhere leave a Pass conditional.
Verdict combine_verdict(const std::vector<Check>& checks);
/// Sets verdict, certified and conditional_on from the checks.
void finalize(Certificate& c);

/// Canonical JSON: sorted keys, two-space indent, trailing newline.
std::string to_json(const Certificate& c);
std::string to_text(const Certificate& c);

// --- Routes ----------------------------------------------------------------

/// pi_1(Y) -> He_3(Z) -> He_3(p) -> P through a Heisenberg witness in P.
/// Requires genus >= 1 and n = +-1. Missing evidence leaves the torsion
/// check inconclusive.
Certificate verify_heisenberg_route(const CircleBundleSpec& spec, MeridianConvention mu, const PermGroup& target,
                                    const std::string& target_id, const HeisenbergWitness& witness,
                                    const std::optional<H3Evidence>& evidence);

/// pi_1(Y) -> Z/n -> Z/p -> PSL_2(p) with mu -> the unipotent. Throws
/// InvalidArgument unless p is prime, p | n and p >= 7; smaller primes go
/// through verify_cyclic_route_into with a sporadic target.
Certificate verify_cyclic_route(const CircleBundleSpec& spec, std::uint64_t p,
                                MeridianConvention mu = MeridianConvention::Z);

struct TwistSpinOptions {
  std::size_t coset_budget = 200'000;
  std::uint64_t seed = kDefaultSeed;
  /// Random homomorphism trials per symmetric group degree 3..8 when
  /// enumeration overflows.
  std::uint64_t search_trials = 2000;
};

/// pi_1(S^3 - K) / <<mu^d>> with n = d^2 m.
Certificate verify_twist_spin_route(const KnotSpec& knot, std::int64_t d, std::int64_t m,
                                    const TwistSpinOptions& options = {});

struct SpinEvidence {
  std::optional<bool> perfect;
  std::string perfect_source;
  std::optional<AbelianGroupStructure> h2;
  std::string h2_source;
};

/// Eligible iff n is even, H_1 = 0 and H_2 = 0.
SpinVerdict spin_eligibility(const std::string& group_id, std::int64_t n, const SpinEvidence& evidence);

/// Perfectness from the derived subgroup of `group` (when given) and H_2 from
/// the table record (when given).
SpinEvidence spin_evidence(const PermGroup* group, const ExternalRecord* record);

/// pi_1(Y) -> Z/n -> Z/p -> P with mu -> `generator`, an element of order p
/// in `target`. Same checks as the PSL_2 route; the spin verdict uses `spin`
/// when n is even.
Certificate verify_cyclic_route_into(const CircleBundleSpec& spec, std::uint64_t p, MeridianConvention mu,
                                     const PermGroup& target, const std::string& target_id,
                                     const Permutation& generator, const std::optional<H3Evidence>& evidence,
                                     const SpinEvidence& spin);

// --- Requests as issued by the command line ---------------------------------

struct VerifyRequest {
  Route route = Route::Heisenberg;
  std::uint32_t genus = 1;
  std::int64_t euler_number = 1;
  std::string target;
  std::uint64_t prime = 0;
  MeridianConvention mu = MeridianConvention::Z;
  /// Built-in knot name; ignored when knot_file is set.
  std::string knot = "trefoil";
  std::string knot_file;
  std::int64_t d = 2;
  std::int64_t m = 1;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t search_budget = kDefaultSearchBudget;
  std::size_t coset_budget = 200'000;
  std::string data_dir;
};

/// Loads targets and evidence, searches for witnesses and records data file
/// hashes. Heisenberg targets: M11, M12, M22, M23, He3 (He_3(p) itself), or
/// any group named in the external table. Cyclic targets: PSL2 (the default),
/// a Mathieu group, or a table group.
Certificate certify(const VerifyRequest& request);

struct ReplayResult {
  bool ok = false;
  std::string detail;
};

/// Rebuilds the target from the data files, checks their hashes, and
/// re-evaluates the stored homomorphism, phi(mu) and its normal closure.
ReplayResult replay_certificate(const std::string& json, const std::string& data_dir);

// --- Table -------------------------------------------------------------------

enum class CellStatus { Confirmed, ConfirmedAbsent, Inconclusive, ExternalOnly, Mismatch };
std::string to_string(CellStatus s);

struct TableCell {
  std::string column;
  CellStatus status = CellStatus::Inconclusive;
  std::string value;
};

struct TableRow {
  std::string group;
  std::string order;
  std::string h2;
  std::string h3;
  std::string claimed_primes;
  std::vector<TableCell> cells;
  std::string note;
};

struct TableReport {
  std::vector<TableRow> rows;
  std::uint64_t seed = kDefaultSeed;
  std::map<std::string, std::string> data_files;
};

inline const std::vector<std::uint64_t> kTablePrimes{2, 3, 5, 7, 11};

/// Mathieu rows M11, M12, M22, M23 with Lagrange exclusion and witness search
/// per prime; PSL_2(p) rows for primes 7..31; one external row per remaining
/// table record.
TableReport reproduce_table(const std::string& data_dir, std::uint64_t seed = kDefaultSeed,
                            std::uint64_t search_budget = kDefaultSearchBudget);
/// One row. Also accepts "Monster" for M and "PSL2(p)".
TableReport reproduce_table_row(const std::string& group, const std::string& data_dir,
                                std::uint64_t seed = kDefaultSeed, std::uint64_t search_budget = kDefaultSearchBudget);

std::string to_json(const TableReport& r);
std::string to_text(const TableReport& r);

// --- Data files --------------------------------------------------------------

/// SURFACE_CERT_DATA when set, else the directory configured at build time.
std::string default_data_dir();
std::string sha256_file(const std::string& path);
std::string external_table_path(const std::string& data_dir);

}  // namespace surfcert
