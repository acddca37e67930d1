#include "surfcert/homology.hpp"

#include <algorithm>

#include "surfcert/error.hpp"

namespace surfcert {

std::string to_string(HomologyMethod m) {
  switch (m) {
    case HomologyMethod::Periodic: return "periodic";
    case HomologyMethod::Bar: return "bar";
    case HomologyMethod::SwanWeyl: return "swan-weyl";
    case HomologyMethod::ExternalTable: return "external-table";
  }
  return "?";
}

std::string to_string(ProvenanceKind k) {
  switch (k) {
    case ProvenanceKind::Computed: return "computed";
    case ProvenanceKind::Formula: return "formula";
    case ProvenanceKind::CitedBound: return "cited-bound";
    case ProvenanceKind::ExternalTable: return "external-table";
  }
  return "?";
}

AbelianGroupStructure homology_cyclic(std::uint64_t n, int k) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "homology_cyclic: negative degree");
  if (n < 1) fail(ErrorCode::InvalidArgument, "homology_cyclic: n must be positive");
  AbelianGroupStructure h;
  if (k == 0) {
    h.free_rank = 1;
  } else if (k % 2 == 1 && n > 1) {
    h.invariant_factors.push_back(static_cast<unsigned long>(n));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Normalized bar complex

namespace {

struct GroupTable {
  std::uint64_t n = 0;
  std::uint64_t identity = 0;
  std::vector<std::uint64_t> mult;        // n x n
  std::vector<std::int64_t> nonid_pos;    // element -> position among non-identity elements
  std::vector<std::uint64_t> nonid_elem;  // inverse of nonid_pos

  std::uint64_t product(std::uint64_t a, std::uint64_t b) const { return mult[a * n + b]; }
};

GroupTable make_table(const PermGroup& g, std::uint64_t size_cap) {
  BigInt order = g.order();
  if (order > size_cap)
    fail(ErrorCode::SizeCapExceeded,
         "bar complex: |G| = " + order.get_str() + " exceeds the size cap " + std::to_string(size_cap));
  GroupTable t;
  t.n = order.get_ui();
  auto elems = g.elements(size_cap);
  t.identity = g.element_index(g.identity());
  t.mult.resize(t.n * t.n);
  for (std::uint64_t a = 0; a < t.n; ++a)
    for (std::uint64_t b = 0; b < t.n; ++b) t.mult[a * t.n + b] = g.element_index(elems[a] * elems[b]);
  t.nonid_pos.assign(t.n, -1);
  for (std::uint64_t a = 0; a < t.n; ++a)
    if (a != t.identity) {
      t.nonid_pos[a] = static_cast<std::int64_t>(t.nonid_elem.size());
      t.nonid_elem.push_back(a);
    }
  return t;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

SparseIntMatrix boundary(const GroupTable& t, int j) {
  const std::uint64_t m = t.n - 1;
  const std::uint64_t cols = ipow(m, j);
  const std::uint64_t rows = j == 0 ? 0 : ipow(m, j - 1);
  SparseIntMatrix d(rows, cols);
  if (j <= 1) return d;  // d_1(g) = [] - [] = 0

  std::vector<std::uint64_t> tuple(static_cast<std::size_t>(j));
  std::vector<std::uint64_t> face;
  // Encodes positions (not elements) of a face into a row index.
  auto encode = [m](const std::vector<std::uint64_t>& pos) {
    std::uint64_t idx = 0;
    for (auto p : pos) idx = idx * m + p;
    return idx;
  };
  for (std::uint64_t c = 0; c < cols; ++c) {
    std::uint64_t rest = c;
    for (int i = j - 1; i >= 0; --i) {
      tuple[static_cast<std::size_t>(i)] = t.nonid_elem[rest % m];
      rest /= m;
    }
    for (int i = 0; i <= j; ++i) {
      face.clear();
      bool degenerate = false;
      for (int s = 0; s < j; ++s) {
        if ((i == 0 && s == 0) || (i == j && s == j - 1)) continue;
        if (i > 0 && i < j && s == i - 1) {
          std::uint64_t prod = t.product(tuple[static_cast<std::size_t>(s)], tuple[static_cast<std::size_t>(s + 1)]);
          if (prod == t.identity) {
            degenerate = true;
            break;
          }
          face.push_back(static_cast<std::uint64_t>(t.nonid_pos[prod]));
          ++s;
          continue;
        }
        face.push_back(static_cast<std::uint64_t>(t.nonid_pos[tuple[static_cast<std::size_t>(s)]]));
      }
      if (degenerate) continue;
      d.add(encode(face), c, BigInt(i % 2 == 0 ? 1 : -1));
    }
  }
  return d;
}

}  // namespace

SparseIntMatrix bar_boundary(const PermGroup& g, int j, std::uint64_t size_cap) {
  if (j < 0) fail(ErrorCode::InvalidArgument, "bar_boundary: negative degree");
  return boundary(make_table(g, size_cap), j);
}

HomologyResult bar_homology(const PermGroup& g, int k, std::uint64_t size_cap, const std::string& group_id) {
  if (k < 0 || k > 3) fail(ErrorCode::InvalidArgument, "bar_homology: degree must be in 0..3");
  GroupTable t = make_table(g, size_cap);
  HomologyResult r;
  r.group_id = group_id.empty() ? g.name() : group_id;
  r.degree = k;
  r.method = HomologyMethod::Bar;
  r.certified = true;
  r.structure = homology_of_pair(boundary(t, k), boundary(t, k + 1));
  return r;
}

BigInt he3_annihilation_bound(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "he3_annihilation_bound: p must be prime");
  BigInt b = static_cast<unsigned long>(p);
  return b * b * b;
}

// ---------------------------------------------------------------------------
// Swan / Weyl

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) fail(ErrorCode::InvalidArgument, "multiplicative_order: a is not a unit");
  std::uint64_t o = 1, x = a;
  while (x != 1) {
    x = mulmod(x, a, p);
    ++o;
  }
  return o;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "primitive_root: p must be prime");
  if (p == 2) return 1;
  for (std::uint64_t g = 2; g < p; ++g)
    if (multiplicative_order(g, p) == p - 1) return g;
  fail(ErrorCode::InvalidArgument, "primitive_root: none found");
}

std::uint64_t quadratic_residue_generator(std::uint64_t p) {
  std::uint64_t w = primitive_root(p);
  return mulmod(w, w, p);
}

AbelianGroupStructure weyl_fixed_points(const WeylAction& action, std::uint64_t ell) {
  if (!is_prime(action.p)) fail(ErrorCode::InvalidArgument, "weyl_fixed_points: p must be prime");
  if (ell < 1) fail(ErrorCode::InvalidArgument, "weyl_fixed_points: ell must be >= 1");
  if (action.unit % action.p == 0) fail(ErrorCode::InvalidArgument, "weyl_fixed_points: unit must be nonzero mod p");
  AbelianGroupStructure out;
  if (powmod(action.unit, ell, action.p) == 1) out.invariant_factors.push_back(static_cast<unsigned long>(action.p));
  return out;
}

std::set<int> psl2_torsion_degrees_formula(std::uint64_t p, int k_max) {
  std::set<int> out;
  const std::uint64_t half = (p - 1) / 2;
  for (int k = 2; k <= k_max; k += 2)
    if (static_cast<std::uint64_t>(k / 2) % half == 0) out.insert(k);
  return out;
}

std::set<int> psl2_torsion_degrees_weyl(const WeylAction& action, int k_max) {
  std::set<int> out;
  for (int k = 2; k <= k_max; k += 2)
    if (!weyl_fixed_points(action, static_cast<std::uint64_t>(k / 2)).is_trivial()) out.insert(k);
  return out;
}

std::set<int> psl2_p_torsion_degrees(std::uint64_t p, int k_max) {
  if (p < 5 || !is_prime(p)) fail(ErrorCode::InvalidArgument, "psl2_p_torsion_degrees: p must be a prime >= 5");
  auto closed = psl2_torsion_degrees_formula(p, k_max);
  auto fixed = psl2_torsion_degrees_weyl({p, quadratic_residue_generator(p)}, k_max);
  if (closed != fixed)
    throw std::logic_error("psl2_p_torsion_degrees: closed form and Weyl fixed points disagree at p = " +
                           std::to_string(p));
  return closed;
}

int homological_degree_from_cohomological(int k) {
  if (k < 2) fail(ErrorCode::InvalidArgument, "degree shift needs cohomological degree >= 2");
  return k - 1;
}

int cohomological_degree_from_homological(int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "degree shift needs homological degree >= 1");
  return k + 1;
}

// ---------------------------------------------------------------------------

TorsionVerdict h3_has_no_p_torsion(const std::string& group_id, std::uint64_t p, const H3Evidence& evidence) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "h3_has_no_p_torsion: p must be prime");
  const BigInt bp = static_cast<unsigned long>(p);
  TorsionVerdict v;
  if (const auto* c = std::get_if<ComputedH3>(&evidence)) {
    if (c->h3.degree != 3 || c->h3.method == HomologyMethod::ExternalTable)
      fail(ErrorCode::EvidenceInapplicable, "computed evidence must be a computed H_3");
    v.no_p_torsion = !c->h3.structure.has_p_torsion(bp);
    v.provenance = {ProvenanceKind::Computed,
                    "H_3(" + group_id + ") = " + c->h3.structure.to_string() + " via " + to_string(c->h3.method)};
  } else if (const auto* f = std::get_if<Psl2Formula>(&evidence)) {
    if (f->q != p)
      fail(ErrorCode::EvidenceInapplicable, "PSL_2(q) formula only describes q-torsion; got q = " +
                                                std::to_string(f->q) + ", p = " + std::to_string(p));
    int cohom = cohomological_degree_from_homological(3);
    auto degrees = psl2_p_torsion_degrees(p, cohom);
    v.no_p_torsion = !degrees.contains(cohom);
    std::string set;
    for (int d : degrees) set += (set.empty() ? "" : ",") + std::to_string(d);
    v.provenance = {ProvenanceKind::Formula,
                    "p-torsion degrees of H^*(" + group_id + ") up to 4: {" + set +
                        "}; H^4 torsion matches H_3 torsion by universal coefficients"};
  } else {
    const auto& rec = std::get<TableEntry>(evidence).record;
    if (!rec.h3)
      fail(ErrorCode::EvidenceInapplicable,
           "H_3(" + rec.name + ") is not known" + (rec.h3_constraint.empty() ? "" : " (" + rec.h3_constraint + ")"));
    v.no_p_torsion = !rec.h3->has_p_torsion(bp);
    v.provenance = {ProvenanceKind::ExternalTable,
                    "H_3(" + rec.name + ") = " + rec.h3->to_string() + " [" + rec.citation + "]"};
  }
  return v;
}

bool is_power_of(const BigInt& n, std::uint64_t p) {
  if (n < 1) return false;
  BigInt m = n;
  const BigInt bp = static_cast<unsigned long>(p);
  while (m > 1) {
    if (!mpz_divisible_p(m.get_mpz_t(), bp.get_mpz_t())) return false;
    m /= bp;
  }
  return true;
}

bool p_power_torsion_maps_to_zero(const BigInt& exponent, std::uint64_t p, const AbelianGroupStructure& target) {
  return is_power_of(exponent, p) && !target.has_p_torsion(static_cast<unsigned long>(p));
}

}  // namespace surfcert
