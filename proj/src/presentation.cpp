#include "surfcert/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace surfcert {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_)
    if (l.exp == 0) fail(ErrorCode::InvalidArgument, "Word: zero exponent");
}

std::uint64_t Word::length() const {
  std::uint64_t n = 0;
  for (const auto& l : letters_) n += static_cast<std::uint64_t>(l.exp < 0 ? -l.exp : l.exp);
  return n;
}

bool Word::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (letters_[i].gen == letters_[i - 1].gen) return false;
  return true;
}

std::uint32_t Word::generator_bound() const {
  std::uint32_t b = 0;
  for (const auto& l : letters_) b = std::max(b, l.gen + 1);
  return b;
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->gen, -it->exp});
  return Word(std::move(out));
}

Word Word::pow(std::int64_t e) const {
  Word base = e < 0 ? inverse() : *this;
  std::vector<Letter> out;
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i)
    out.insert(out.end(), base.letters_.begin(), base.letters_.end());
  return free_reduce(Word(std::move(out)));
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  for (const auto& l : w.letters()) {
    if (!stack.empty() && stack.back().gen == l.gen) {
      stack.back().exp += l.exp;
      if (stack.back().exp == 0) stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

Word commutator(const Word& a, const Word& b) {
  return free_reduce(a * b * a.inverse() * b.inverse());
}

// ---------------------------------------------------------------------------

Presentation::Presentation(std::uint32_t num_generators, std::vector<Word> relators,
                           std::map<std::string, Word> marks, std::vector<std::string> names)
    : num_generators_(num_generators), marks_(std::move(marks)), names_(std::move(names)) {
  for (auto& r : relators) {
    if (r.generator_bound() > num_generators_)
      fail(ErrorCode::OutOfRange, "Presentation: relator uses a generator index out of range");
    relators_.push_back(free_reduce(r));
  }
  for (auto& [name, w] : marks_) {
    if (w.generator_bound() > num_generators_)
      fail(ErrorCode::OutOfRange, "Presentation: mark '" + name + "' uses a generator index out of range");
    w = free_reduce(w);
  }
  if (names_.empty()) {
    for (std::uint32_t i = 0; i < num_generators_; ++i) names_.push_back("x" + std::to_string(i));
  }
  if (names_.size() != num_generators_)
    fail(ErrorCode::InvalidArgument, "Presentation: need one name per generator");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    bool ok = !n.empty() && std::isalpha(static_cast<unsigned char>(n[0]));
    for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) fail(ErrorCode::InvalidArgument, "Presentation: bad generator name '" + n + "'");
    if (std::find(names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(i), n) !=
        names_.begin() + static_cast<std::ptrdiff_t>(i))
      fail(ErrorCode::InvalidArgument, "Presentation: duplicate generator name '" + n + "'");
  }
}

const Word& Presentation::mark(const std::string& name) const {
  auto it = marks_.find(name);
  if (it == marks_.end()) fail(ErrorCode::InvalidArgument, "Presentation: no marked element '" + name + "'");
  return it->second;
}

Presentation Presentation::with_relator(const Word& w) const {
  auto rels = relators_;
  rels.push_back(w);
  return Presentation(num_generators_, std::move(rels), marks_, names_);
}

Presentation Presentation::with_mark(const std::string& name, const Word& w) const {
  auto m = marks_;
  m[name] = w;
  return Presentation(num_generators_, relators_, std::move(m), names_);
}

std::string Presentation::format_word(const Word& w) const {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) os << ' ';
    first = false;
    os << names_.at(l.gen);
    if (l.exp != 1) os << '^' << l.exp;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits "name^exp" into its parts.
std::pair<std::string, std::int64_t> split_token(const std::string& tok) {
  auto caret = tok.find('^');
  std::string name = tok.substr(0, caret);
  std::int64_t e = 1;
  if (caret != std::string::npos) {
    std::string es = tok.substr(caret + 1);
    auto [ptr, ec] = std::from_chars(es.data(), es.data() + es.size(), e);
    if (ec != std::errc() || ptr != es.data() + es.size() || e == 0)
      fail(ErrorCode::Parse, "bad exponent in '" + tok + "'");
  }
  if (name.empty()) fail(ErrorCode::Parse, "missing generator name in '" + tok + "'");
  return {name, e};
}

// Binds names lazily when `names` is still growing.
struct NameTable {
  std::vector<std::string> names;
  std::uint32_t declared = 0;
  bool fixed = false;

  std::uint32_t lookup(const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<std::uint32_t>(it - names.begin());
    if (fixed || names.size() >= declared) fail(ErrorCode::Parse, "unknown generator '" + name + "'");
    names.push_back(name);
    return static_cast<std::uint32_t>(names.size() - 1);
  }
};

Word parse_tokens(const std::vector<std::string>& toks, NameTable& table) {
  if (toks.size() == 1 && toks[0] == "1") return Word();
  std::vector<Letter> letters;
  for (const auto& t : toks) {
    auto [name, e] = split_token(t);
    letters.push_back({table.lookup(name), e});
  }
  return Word(std::move(letters));
}

}  // namespace

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  NameTable table{names, static_cast<std::uint32_t>(names.size()), true};
  return parse_tokens(split_ws(text), table);
}

Presentation parse_presentation(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  NameTable table;
  bool have_header = false;
  std::vector<Word> relators;
  std::map<std::string, Word> marks;
  std::size_t lineno = 0;
  try {
    while (std::getline(is, line)) {
      ++lineno;
      std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      auto toks = split_ws(t);
      if (!have_header) {
        if (toks[0] != "gens" || toks.size() < 2) fail(ErrorCode::Parse, "expected 'gens N' header");
        std::int64_t n = 0;
        auto [ptr, ec] = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), n);
        if (ec != std::errc() || ptr != toks[1].data() + toks[1].size() || n < 0)
          fail(ErrorCode::Parse, "bad generator count '" + toks[1] + "'");
        table.declared = static_cast<std::uint32_t>(n);
        if (toks.size() > 2) {
          if (toks.size() != 2 + static_cast<std::size_t>(n))
            fail(ErrorCode::Parse, "header names " + std::to_string(toks.size() - 2) + " generators, expected " +
                                       std::to_string(n));
          table.names.assign(toks.begin() + 2, toks.end());
          table.fixed = true;
        }
        have_header = true;
        continue;
      }
      if (toks[0] == "mark") {
        if (toks.size() < 4 || toks[2] != "=") fail(ErrorCode::Parse, "expected 'mark NAME = WORD'");
        marks[toks[1]] = parse_tokens({toks.begin() + 3, toks.end()}, table);
        continue;
      }
      relators.push_back(parse_tokens(toks, table));
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Parse) throw;
    fail(ErrorCode::Parse, "presentation line " + std::to_string(lineno) + ": " + e.what());
  }
  if (!have_header) fail(ErrorCode::Parse, "presentation: missing 'gens N' header");
  for (std::uint32_t i = static_cast<std::uint32_t>(table.names.size()); i < table.declared; ++i) {
    std::string fallback = "x" + std::to_string(i);
    if (std::find(table.names.begin(), table.names.end(), fallback) != table.names.end())
      fail(ErrorCode::Parse, "presentation: cannot name unused generator " + std::to_string(i));
    table.names.push_back(fallback);
  }
  return Presentation(table.declared, std::move(relators), std::move(marks), std::move(table.names));
}

std::string serialize_presentation(const Presentation& p) {
  std::ostringstream os;
  os << "gens " << p.num_generators();
  for (const auto& n : p.names()) os << ' ' << n;
  os << '\n';
  for (const auto& r : p.relators()) os << p.format_word(r) << '\n';
  for (const auto& [name, w] : p.marks()) os << "mark " << name << " = " << p.format_word(w) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Abelianization

BigInt AbelianElement::order(const AbelianGroupStructure& g) const {
  for (const auto& f : free)
    if (f != 0) return 0;
  BigInt acc = 1;
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    const BigInt& d = g.invariant_factors[i];
    BigInt o = d / gcd(torsion[i], d);
    acc = lcm(acc, o);
  }
  return acc;
}

bool generates_group(const AbelianGroupStructure& g, const AbelianElement& x) {
  if (g.free_rank + g.invariant_factors.size() > 1) return false;
  if (g.free_rank == 1) return abs(x.free[0]) == 1;
  if (g.invariant_factors.empty()) return true;
  return gcd(x.torsion[0], g.invariant_factors[0]) == 1;
}

bool generates_torsion(const AbelianGroupStructure& g, const AbelianElement& x) {
  for (const auto& f : x.free)
    if (f != 0) return false;
  if (g.invariant_factors.size() > 1) return false;
  if (g.invariant_factors.empty()) return true;
  return gcd(x.torsion[0], g.invariant_factors[0]) == 1;
}

Abelianization abelianization(const Presentation& p) {
  std::size_t n = p.num_generators();
  SparseIntMatrix rel(p.relators().size(), n);
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    for (const auto& l : p.relators()[i].letters()) rel.add(i, l.gen, BigInt(static_cast<long>(l.exp)));

  SmithForm s = smith_normal_form(rel, true);
  const DenseIntMatrix& v = *s.right;

  // In the basis given by the columns of V the relations read y_i = 0 mod d_i.
  // A row vector x of exponent sums has coordinates y = x V.
  Abelianization out;
  std::vector<std::size_t> torsion_idx, free_idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < s.diagonal.size()) {
      if (s.diagonal[i] > 1) {
        torsion_idx.push_back(i);
        out.group.invariant_factors.push_back(s.diagonal[i]);
      }
    } else {
      free_idx.push_back(i);
    }
  }
  out.group.free_rank = free_idx.size();

  auto image_of = [&](const Word& w) {
    std::vector<BigInt> x(n, 0);
    for (const auto& l : w.letters()) x[l.gen] += static_cast<long>(l.exp);
    std::vector<BigInt> y(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (x[k] != 0) y[j] += x[k] * v[k][j];
    AbelianElement e;
    for (std::size_t t = 0; t < torsion_idx.size(); ++t) {
      BigInt r;
      mpz_fdiv_r(r.get_mpz_t(), y[torsion_idx[t]].get_mpz_t(), s.diagonal[torsion_idx[t]].get_mpz_t());
      e.torsion.push_back(r);
    }
    for (auto f : free_idx) e.free.push_back(y[f]);
    return e;
  };

  for (const auto& [name, w] : p.marks()) out.marked[name] = image_of(w);
  for (std::uint32_t g = 0; g < n; ++g) out.generator_images.push_back(image_of(Word::generator(g)));
  return out;
}

}  // namespace surfcert
