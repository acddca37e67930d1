#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfcert/linalg.hpp"

namespace surfcert {

/// Cited low-degree homology of a group that is not computed here.
struct ExternalRecord {
  std::string name;
  std::optional<AbelianGroupStructure> h2;
  /// Empty when the group is not known; see h3_constraint.
  std::optional<AbelianGroupStructure> h3;
  std::string h3_constraint;
  /// Primes p for which the source lists an He_3(p) subgroup.
  std::vector<std::uint64_t> he3_primes;
  std::string citation;
};

/// Pipe-separated records after a `version 1` line:
///
///     name | H2 | H3 | He3 primes | citation
///
/// A homology field is `0`, a cyclic order like `12`, a sum like `2+2`,
/// `unknown`, or `constraint: <text>`. Primes are comma separated or `-`.
class ExternalTable {
public:
  static ExternalTable parse(const std::string& text);
  static ExternalTable load(const std::string& path);

  int version() const { return version_; }
  const std::vector<ExternalRecord>& records() const { return records_; }
  /// nullptr when absent.
  const ExternalRecord* find(const std::string& name) const;

private:
  int version_ = 0;
  std::vector<ExternalRecord> records_;
};

/// Parses `0`, `12`, `2+2` into invariant-factor form.
AbelianGroupStructure parse_cyclic_sum(const std::string& text);

}  // namespace surfcert
