#include "surfcert/perm_group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "surfcert/error.hpp"

namespace surfcert {

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) fail(ErrorCode::InvalidArgument, "Permutation: images are not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  Permutation acc(degree);
  for (const auto& cyc : cycles) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<bool> seen(degree, false);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cyc[i] >= degree) fail(ErrorCode::InvalidArgument, "from_cycles: point out of range");
      if (seen[cyc[i]]) fail(ErrorCode::InvalidArgument, "from_cycles: repeated point in a cycle");
      seen[cyc[i]] = true;
      img[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
    acc = acc * Permutation(std::move(img));
  }
  return acc;
}

Permutation Permutation::parse_cycles(std::size_t degree, const std::string& text) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') fail(ErrorCode::Parse, "cycle notation: expected '(' in \"" + text + "\"");
    ++i;
    std::vector<Point> cyc;
    while (true) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) fail(ErrorCode::Parse, "cycle notation: expected a point in \"" + text + "\"");
      unsigned long v = std::stoul(text.substr(start, i - start));
      if (v < 1 || v > degree) fail(ErrorCode::Parse, "cycle notation: point " + std::to_string(v) + " out of range");
      cyc.push_back(static_cast<Point>(v - 1));
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  try {
    return from_cycles(degree, cycles);
  } catch (const Error& e) {
    fail(ErrorCode::Parse, std::string("cycle notation: ") + e.what());
  }
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.degree() != degree()) fail(ErrorCode::InvalidArgument, "Permutation: degree mismatch in product");
  std::vector<Point> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = rhs.images_[images_[i]];
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<Point> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[images_[i]] = static_cast<Point>(i);
  Permutation p;
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::pow(std::int64_t e) const {
  Permutation base = e < 0 ? inverse() : *this;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Permutation acc(degree());
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

Point Permutation::first_moved_point() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return static_cast<Point>(i);
  return static_cast<Point>(images_.size());
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    os << '(';
    Point x = static_cast<Point>(i);
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) os << ',';
      os << x + 1;
      first = false;
      x = images_[x];
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

std::uint64_t element_order(const Permutation& g) {
  std::vector<bool> seen(g.degree(), false);
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < g.degree(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (Point x = static_cast<Point>(i); !seen[x]; x = g[x]) {
      seen[x] = true;
      ++len;
    }
    acc = std::lcm(acc, len);
  }
  return acc;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "Rng::below: empty range");
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  while (true) {
    std::uint64_t x = engine_();
    if (x < limit) return x % n;
  }
}

// ---------------------------------------------------------------------------
// Schreier-Sims

std::vector<Point> Bsgs::base() const {
  std::vector<Point> b;
  for (const auto& l : levels) b.push_back(l.base_point);
  return b;
}

BigInt Bsgs::order() const {
  BigInt o = 1;
  for (const auto& l : levels) o *= static_cast<unsigned long>(l.orbit.size());
  return o;
}

namespace {

void rebuild_orbit(StabilizerLevel& lvl, std::size_t degree) {
  lvl.orbit.assign(1, lvl.base_point);
  lvl.orbit_position.assign(degree, -1);
  lvl.orbit_position[lvl.base_point] = 0;
  lvl.transversal.assign(1, Permutation(degree));
  for (std::size_t k = 0; k < lvl.orbit.size(); ++k) {
    for (const auto& s : lvl.strong_generators) {
      Point y = s[lvl.orbit[k]];
      if (lvl.orbit_position[y] >= 0) continue;
      lvl.orbit_position[y] = static_cast<std::int64_t>(lvl.orbit.size());
      lvl.orbit.push_back(y);
      lvl.transversal.push_back(lvl.transversal[k] * s);
    }
  }
  lvl.transversal_inverse.clear();
  for (const auto& u : lvl.transversal) lvl.transversal_inverse.push_back(u.inverse());
}

// Sifts g through levels [from, end). Returns the residue and the level at
// which sifting stopped (levels.size() when it went all the way through).
std::pair<Permutation, std::size_t> strip(const std::vector<StabilizerLevel>& levels, Permutation g,
                                          std::size_t from) {
  for (std::size_t l = from; l < levels.size(); ++l) {
    Point beta = g[levels[l].base_point];
    std::int64_t pos = levels[l].orbit_position[beta];
    if (pos < 0) return {std::move(g), l};
    g = g * levels[l].transversal_inverse[static_cast<std::size_t>(pos)];
  }
  return {std::move(g), levels.size()};
}

}  // namespace

Bsgs schreier_sims(std::size_t degree, std::span<const Permutation> generators) {
  Bsgs out;
  auto& levels = out.levels;

  std::vector<Permutation> gens;
  for (const auto& g : generators) {
    if (g.degree() != degree) fail(ErrorCode::InvalidArgument, "schreier_sims: generator degree mismatch");
    if (!g.is_identity()) gens.push_back(g);
  }
  if (gens.empty()) return out;

  // Initial base: no generator may fix every base point.
  for (const auto& g : gens) {
    bool fixes_all = std::all_of(levels.begin(), levels.end(),
                                 [&](const StabilizerLevel& l) { return g[l.base_point] == l.base_point; });
    if (fixes_all) {
      StabilizerLevel lvl;
      lvl.base_point = g.first_moved_point();
      levels.push_back(std::move(lvl));
    }
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (const auto& g : gens) {
      bool fixes_prefix = true;
      for (std::size_t j = 0; j < i; ++j) fixes_prefix = fixes_prefix && g[levels[j].base_point] == levels[j].base_point;
      if (fixes_prefix) levels[i].strong_generators.push_back(g);
    }
    rebuild_orbit(levels[i], degree);
  }

  std::size_t i = levels.size();
  while (i > 0) {
    std::size_t lvl_idx = i - 1;
    bool restarted = false;
    for (std::size_t k = 0; !restarted && k < levels[lvl_idx].orbit.size(); ++k) {
      for (std::size_t si = 0; !restarted && si < levels[lvl_idx].strong_generators.size(); ++si) {
        const StabilizerLevel& cur = levels[lvl_idx];
        const Permutation& s = cur.strong_generators[si];
        Point image = s[cur.orbit[k]];
        Permutation schreier =
            cur.transversal[k] * s *
            cur.transversal_inverse[static_cast<std::size_t>(cur.orbit_position[image])];
        if (schreier.is_identity()) continue;
        auto [h, j] = strip(levels, std::move(schreier), lvl_idx + 1);
        if (j < levels.size() || !h.is_identity()) {
          if (j == levels.size()) {
            StabilizerLevel fresh;
            fresh.base_point = h.first_moved_point();
            levels.push_back(std::move(fresh));
          }
          for (std::size_t l = lvl_idx + 1; l <= j; ++l) {
            levels[l].strong_generators.push_back(h);
            rebuild_orbit(levels[l], degree);
          }
          i = j + 1;
          restarted = true;
        }
      }
    }
    if (!restarted) --i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name)
    : degree_(degree), generators_(std::move(generators)), name_(std::move(name)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : generators_)
    if (g.degree() != degree_) fail(ErrorCode::InvalidArgument, "PermGroup: generator degree mismatch");
}

const Bsgs& PermGroup::bsgs() const {
  std::call_once(cache_->once, [this] { cache_->bsgs = schreier_sims(degree_, generators_); });
  return cache_->bsgs;
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) fail(ErrorCode::InvalidArgument, "membership: degree mismatch");
  auto [h, j] = strip(bsgs().levels, g, 0);
  return j == bsgs().levels.size() && h.is_identity();
}

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (!(generators_[i] * generators_[j] == generators_[j] * generators_[i])) return false;
  return true;
}

std::uint64_t PermGroup::order_u64() const {
  BigInt o = order();
  if (!o.fits_ulong_p()) fail(ErrorCode::SizeCapExceeded, "group order does not fit in 64 bits");
  return o.get_ui();
}

std::uint64_t PermGroup::element_index(const Permutation& g) const {
  const auto& levels = bsgs().levels;
  std::uint64_t idx = 0;
  Permutation h = g;
  for (const auto& l : levels) {
    std::int64_t pos = l.orbit_position[h[l.base_point]];
    if (pos < 0) fail(ErrorCode::InvalidArgument, "element_index: element not in group");
    idx = idx * l.orbit.size() + static_cast<std::uint64_t>(pos);
    h = h * l.transversal_inverse[static_cast<std::size_t>(pos)];
  }
  if (!h.is_identity()) fail(ErrorCode::InvalidArgument, "element_index: element not in group");
  return idx;
}

Permutation PermGroup::element_at(std::uint64_t index) const {
  const auto& levels = bsgs().levels;
  std::vector<std::size_t> pos(levels.size());
  for (std::size_t l = levels.size(); l-- > 0;) {
    pos[l] = index % levels[l].orbit.size();
    index /= levels[l].orbit.size();
  }
  if (index != 0) fail(ErrorCode::OutOfRange, "element_at: index out of range");
  Permutation g(degree_);
  for (std::size_t l = levels.size(); l-- > 0;) g = g * levels[l].transversal[pos[l]];
  return g;
}

Permutation PermGroup::random_element(Rng& rng) const {
  const auto& levels = bsgs().levels;
  Permutation g(degree_);
  for (std::size_t l = levels.size(); l-- > 0;) g = g * levels[l].transversal[rng.below(levels[l].orbit.size())];
  return g;
}

std::vector<Permutation> PermGroup::elements(std::uint64_t limit) const {
  BigInt o = order();
  if (o > limit) fail(ErrorCode::SizeCapExceeded, "elements: group order " + o.get_str() + " exceeds limit");
  std::vector<Permutation> out;
  for (std::uint64_t i = 0; i < o.get_ui(); ++i) out.push_back(element_at(i));
  return out;
}

PermGroup PermGroup::with_generators(const std::vector<Permutation>& extra) const {
  auto gens = generators_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return PermGroup(degree_, std::move(gens), name_);
}

// ---------------------------------------------------------------------------
// Normal structure

namespace {

PermGroup close_under_conjugation(const PermGroup& g_group, std::vector<Permutation> gens) {
  PermGroup n(g_group.degree(), gens);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& s : g_group.generators()) {
      Permutation c = s.inverse() * gens[i] * s;
      if (!n.contains(c)) {
        gens.push_back(std::move(c));
        n = PermGroup(g_group.degree(), gens);
      }
    }
  }
  return n;
}

}  // namespace

PermGroup normal_closure(const PermGroup& g_group, const Permutation& g, std::uint64_t seed) {
  if (!g_group.contains(g)) fail(ErrorCode::InvalidArgument, "normal_closure: element is not in the group");
  if (g.is_identity()) return PermGroup(g_group.degree(), {});

  std::vector<Permutation> gens{g};
  Rng rng(seed);
  constexpr int kRandomConjugates = 8;
  for (int t = 0; t < kRandomConjugates; ++t) {
    Permutation r = g_group.random_element(rng);
    gens.push_back(r.inverse() * g * r);
  }
  return close_under_conjugation(g_group, std::move(gens));
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> gens;
  const auto& s = g.generators();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      Permutation c = s[i] * s[j] * s[i].inverse() * s[j].inverse();
      if (!c.is_identity()) gens.push_back(std::move(c));
    }
  if (gens.empty()) return PermGroup(g.degree(), {});
  return close_under_conjugation(g, std::move(gens));
}

SimplicityReport simplicity_report(const PermGroup& g, std::uint64_t bound, std::uint64_t seed) {
  BigInt order = g.order();
  if (order > bound)
    fail(ErrorCode::SizeCapExceeded,
         "is_simple: |G| = " + order.get_str() + " exceeds the bound " + std::to_string(bound));
  SimplicityReport rep;
  std::uint64_t n = order.get_ui();
  if (n == 1) return rep;

  std::vector<bool> covered(n, false);
  std::uint64_t covered_count = 1;
  covered[g.element_index(g.identity())] = true;

  // Returns false if the class of x exposes a proper normal subgroup.
  auto process_class = [&](std::uint64_t start) {
    std::vector<std::uint64_t> queue{start};
    covered[start] = true;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      Permutation y = g.element_at(queue[k]);
      for (const auto& s : g.generators()) {
        std::uint64_t idx = g.element_index(s.inverse() * y * s);
        if (!covered[idx]) {
          covered[idx] = true;
          queue.push_back(idx);
        }
      }
    }
    covered_count += queue.size();
    ++rep.classes_examined;
    Permutation x = g.element_at(start);
    PermGroup closure = normal_closure(g, x, seed);
    if (closure.order() != order) {
      rep.witness = x;
      rep.witness_closure_order = closure.order();
      return false;
    }
    return true;
  };

  Rng rng(seed);
  constexpr int kRandomSamples = 256;
  for (int t = 0; t < kRandomSamples && covered_count < n; ++t) {
    std::uint64_t idx = g.element_index(g.random_element(rng));
    if (!covered[idx] && !process_class(idx)) return rep;
  }
  for (std::uint64_t idx = 0; idx < n && covered_count < n; ++idx)
    if (!covered[idx] && !process_class(idx)) return rep;
  rep.simple = true;
  return rep;
}

bool is_simple(const PermGroup& g, std::uint64_t bound, std::uint64_t seed) {
  return simplicity_report(g, bound, seed).simple;
}

// ---------------------------------------------------------------------------
// Heisenberg subgroups

Permutation HeisenbergWitness::center() const { return a * b * a.inverse() * b.inverse(); }

WitnessCheck verify_witness(const PermGroup& g, const HeisenbergWitness& w) {
  WitnessCheck c;
  Permutation z = w.center();
  c.a_order_p = element_order(w.a) == w.p;
  c.b_order_p = element_order(w.b) == w.p;
  c.z_order_p = element_order(z) == w.p;
  c.a_commutes_with_z = w.a * z == z * w.a;
  c.b_commutes_with_z = w.b * z == z * w.b;
  c.in_group = g.contains(w.a) && g.contains(w.b);
  PermGroup sub(g.degree(), {w.a, w.b});
  BigInt p = static_cast<unsigned long>(w.p);
  c.subgroup_order_p3 = sub.order() == p * p * p;
  return c;
}

namespace {

std::optional<Permutation> random_p_element(const PermGroup& g, std::uint64_t p, Rng& rng) {
  Permutation x = g.random_element(rng);
  std::uint64_t o = element_order(x);
  if (o % p != 0) return std::nullopt;
  return x.pow(static_cast<std::int64_t>(o / p));
}

}  // namespace

HeisenbergSearch find_heisenberg_subgroup(const PermGroup& g, std::uint64_t p, std::uint64_t seed,
                                          std::uint64_t budget) {
  if (p < 2) fail(ErrorCode::InvalidArgument, "find_heisenberg_subgroup: p must be prime");
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) fail(ErrorCode::InvalidArgument, "find_heisenberg_subgroup: p must be prime");

  BigInt order = g.order();
  BigInt p3 = BigInt(static_cast<unsigned long>(p)) * p * p;
  if (!mpz_divisible_p(order.get_mpz_t(), p3.get_mpz_t()))
    return HeisenbergExcluded{std::to_string(p) + "^3 = " + p3.get_str() + " does not divide |G| = " +
                              order.get_str()};

  Rng rng(seed);
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    auto a = random_p_element(g, p, rng);
    auto b = random_p_element(g, p, rng);
    if (!a || !b) continue;
    Permutation z = *a * *b * a->inverse() * b->inverse();
    if (z.is_identity() || element_order(z) != p) continue;
    if (!(*a * z == z * *a) || !(*b * z == z * *b)) continue;
    HeisenbergWitness w{*a, *b, p};
    if (PermGroup(g.degree(), {w.a, w.b}).order() == p3) return w;
  }
  return HeisenbergNotFound{budget};
}

}  // namespace surfcert
