#pragma once

// Words in free groups, finite presentations and the operations that only
// need the presentation itself: relator evaluation, homomorphism checking and
// abelianization.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "surfcert/error.hpp"
#include "surfcert/linalg.hpp"

namespace surfcert {

struct Letter {
  std::uint32_t gen = 0;
  std::int64_t exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A sequence of generator powers. Words built through the public
/// constructors are not reduced automatically; use free_reduce.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word generator(std::uint32_t g, std::int64_t exp = 1) { return Word({Letter{g, exp}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  /// Number of letters counted with multiplicity (|a^3 b^-1| = 4).
  std::uint64_t length() const;
  bool is_reduced() const;
  /// Largest generator index used, plus one.
  std::uint32_t generator_bound() const;

  Word inverse() const;
  Word pow(std::int64_t e) const;
  Word operator*(const Word& rhs) const;

  friend bool operator==(const Word&, const Word&) = default;

private:
  std::vector<Letter> letters_;
};

/// Cancels adjacent inverse pairs and merges adjacent powers of the same
/// generator. No cyclic reduction.
Word free_reduce(const Word& w);

/// [a, b] = a b a^-1 b^-1.
Word commutator(const Word& a, const Word& b);

class Presentation {
public:
  Presentation() = default;
  /// Relators and marks are freely reduced; every generator index is range
  /// checked. Empty `names` gets x0, x1, ...
  Presentation(std::uint32_t num_generators, std::vector<Word> relators,
               std::map<std::string, Word> marks = {}, std::vector<std::string> names = {});

  std::uint32_t num_generators() const { return num_generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  const std::map<std::string, Word>& marks() const { return marks_; }
  const std::vector<std::string>& names() const { return names_; }

  const Word& mark(const std::string& name) const;
  bool has_mark(const std::string& name) const { return marks_.contains(name); }

  Presentation with_relator(const Word& w) const;
  Presentation with_mark(const std::string& name, const Word& w) const;

  std::string format_word(const Word& w) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

private:
  std::uint32_t num_generators_ = 0;
  std::vector<Word> relators_;
  std::map<std::string, Word> marks_;
  std::vector<std::string> names_;
};

/// Text format:
///
///     gens 3 a1 b1 z
///     a1 b1 a1^-1 b1^-1 z^-1
///     a1 z a1^-1 z^-1
///     mark mu = z
///
/// The generator names after the count are optional; without them, names are
/// bound in order of first appearance and any remaining generators get x<i>.
/// Blank lines and lines starting with '#' are ignored. A relator line "1"
/// denotes the empty word.
Presentation parse_presentation(const std::string& text);
std::string serialize_presentation(const Presentation& p);

/// Parses a word in letter syntax against a presentation's generator names.
Word parse_word(const std::string& text, const std::vector<std::string>& names);

// --- Evaluation ------------------------------------------------------------

template <class T>
T power(const T& x, std::int64_t e, const T& identity) {
  T base = e < 0 ? inverse(x) : x;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  T acc = identity;
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

/// Product of the images with exponents, in left-to-right word order. The
/// element type needs operator* and an ADL-visible inverse().
template <class T>
T evaluate(const Word& w, std::span<const T> images, const T& identity) {
  T acc = identity;
  for (const auto& l : w.letters()) {
    if (l.gen >= images.size())
      fail(ErrorCode::OutOfRange, "evaluate: generator index " + std::to_string(l.gen) + " has no image");
    acc = acc * power(images[l.gen], l.exp, identity);
  }
  return acc;
}

struct HomCheck {
  bool ok = true;
  std::vector<std::size_t> failing_relators;
};

/// True iff every relator evaluates to the identity.
template <class T>
HomCheck check_hom(const Presentation& p, std::span<const T> images, const T& identity) {
  if (images.size() != p.num_generators())
    fail(ErrorCode::InvalidArgument, "check_hom: need one image per generator");
  HomCheck out;
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    if (!(evaluate(p.relators()[i], images, identity) == identity)) {
      out.ok = false;
      out.failing_relators.push_back(i);
    }
  }
  return out;
}

// --- Abelianization --------------------------------------------------------

/// Coordinates of an element of a finitely generated abelian group in its
/// canonical decomposition: one residue per invariant factor, then the free
/// coordinates.
struct AbelianElement {
  std::vector<BigInt> torsion;
  std::vector<BigInt> free;

  /// 0 when the element has infinite order.
  BigInt order(const AbelianGroupStructure& g) const;
};

struct Abelianization {
  AbelianGroupStructure group;
  std::map<std::string, AbelianElement> marked;
  /// Image of each generator.
  std::vector<AbelianElement> generator_images;
};

/// Smith normal form of the relator exponent-sum matrix.
Abelianization abelianization(const Presentation& p);

/// True iff the group is cyclic and generated by `x`.
bool generates_group(const AbelianGroupStructure& g, const AbelianElement& x);
/// True iff x has zero free part, the torsion subgroup is cyclic, and x
/// generates it.
bool generates_torsion(const AbelianGroupStructure& g, const AbelianElement& x);

}  // namespace surfcert
