#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "surfcert/presentation.hpp"

namespace surfcert {

/// Complete coset table over the trivial subgroup. Column 2g is generator g,
/// column 2g+1 its inverse; coset 0 is the subgroup itself.
struct CosetTable {
  std::size_t num_cosets = 0;
  std::size_t num_columns = 0;
  std::vector<std::uint32_t> entries;

  std::uint32_t act(std::uint32_t coset, std::uint32_t gen, bool inverse = false) const {
    return entries[coset * num_columns + 2 * gen + (inverse ? 1 : 0)];
  }
};

struct ToddCoxeterResult {
  enum class Status { Complete, Overflow };

  Status status = Status::Overflow;
  /// |G| when complete; zero on overflow.
  std::uint64_t order = 0;
  /// Filled only when complete.
  CosetTable table;
  /// Cosets ever defined, and the peak number simultaneously alive.
  std::uint64_t total_defined = 0;
  std::uint64_t peak_live = 0;

  bool complete() const { return status == Status::Complete; }
};

inline constexpr std::size_t kDefaultCosetBudget = 1'000'000;

/// HLT coset enumeration with lookahead over the trivial subgroup. Cosets are
/// processed in definition order and generators in index order, so the
/// result is deterministic. Overflow means the table could not be completed
/// within `max_cosets` live cosets; it says nothing about infinitude.
ToddCoxeterResult todd_coxeter(const Presentation& p, std::size_t max_cosets = kDefaultCosetBudget);

}  // namespace surfcert
