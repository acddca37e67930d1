#include "surfcert/constructions.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "surfcert/error.hpp"

namespace surfcert {

void CircleBundleSpec::validate() const {
  if (euler_number == 0) fail(ErrorCode::InvalidArgument, "circle bundle: Euler number must be non-zero");
}

std::string to_string(MeridianConvention c) { return c == MeridianConvention::Z ? "z" : "z^-1"; }

Presentation circle_bundle_pi1(const CircleBundleSpec& spec, MeridianConvention mu) {
  spec.validate();
  const std::uint32_t g = spec.genus;
  const std::uint32_t z = 2 * g;
  std::vector<std::string> names;
  for (std::uint32_t i = 1; i <= g; ++i) {
    names.push_back("a" + std::to_string(i));
    names.push_back("b" + std::to_string(i));
  }
  names.push_back("z");

  std::vector<Word> rels;
  Word surface;
  for (std::uint32_t i = 0; i < g; ++i) {
    Word a = Word::generator(2 * i), b = Word::generator(2 * i + 1);
    surface = surface * commutator(a, b);
  }
  rels.push_back(free_reduce(surface * Word::generator(z, -spec.euler_number)));
  for (std::uint32_t i = 0; i < g; ++i) {
    rels.push_back(commutator(Word::generator(2 * i), Word::generator(z)));
    rels.push_back(commutator(Word::generator(2 * i + 1), Word::generator(z)));
  }
  std::map<std::string, Word> marks{{"mu", Word::generator(z, mu == MeridianConvention::Z ? 1 : -1)}};
  return Presentation(z + 1, std::move(rels), std::move(marks), std::move(names));
}

// ---------------------------------------------------------------------------

He3Element He3Element::reduce(std::uint64_t p) const {
  auto r = [p](std::int64_t v) {
    auto m = static_cast<std::int64_t>(p);
    return ((v % m) + m) % m;
  };
  return {r(x), r(y), r(t)};
}

Presentation he3_integer_presentation() {
  Word a = Word::generator(0), b = Word::generator(1), z = Word::generator(2);
  return Presentation(3, {free_reduce(commutator(a, b) * z.inverse()), commutator(a, z), commutator(b, z)}, {},
                      {"a", "b", "z"});
}

Presentation he3_mod_p_presentation(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "he3_mod_p_presentation: p must be prime");
  auto e = static_cast<std::int64_t>(p);
  return he3_integer_presentation()
      .with_relator(Word::generator(0, e))
      .with_relator(Word::generator(1, e))
      .with_relator(Word::generator(2, e));
}

std::vector<He3Element> heisenberg_surjection(const CircleBundleSpec& spec) {
  spec.validate();
  if (spec.genus == 0) fail(ErrorCode::InvalidArgument, "heisenberg_surjection: genus 0 has no a1, b1");
  if (spec.euler_number != 1 && spec.euler_number != -1)
    fail(ErrorCode::InvalidArgument, "heisenberg_surjection: Euler number must be +-1");
  std::vector<He3Element> images(2 * spec.genus + 1);
  images[0] = {1, 0, 0};
  images[1] = {0, 1, 0};
  // [a, b] = (0,0,1), and the surface relator forces z^n = [a1, b1].
  images.back() = {0, 0, spec.euler_number};
  return images;
}

Point He3ModP::point_of(const He3Element& e) const {
  He3Element r = e.reduce(p);
  return static_cast<Point>(r.x + static_cast<std::int64_t>(p) * (r.y + static_cast<std::int64_t>(p) * r.t));
}

Permutation He3ModP::element(const He3Element& e) const {
  const auto ip = static_cast<std::int64_t>(p);
  std::vector<Point> img(p * p * p);
  for (std::int64_t t = 0; t < ip; ++t)
    for (std::int64_t y = 0; y < ip; ++y)
      for (std::int64_t x = 0; x < ip; ++x) {
        He3Element h{x, y, t};
        img[point_of(h)] = point_of(h * e);
      }
  return Permutation(std::move(img));
}

He3ModP he3_mod_p(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "he3_mod_p: p must be prime");
  He3ModP h;
  h.p = p;
  h.group = PermGroup(p * p * p, {}, "He3(" + std::to_string(p) + ")");
  h.group = PermGroup(p * p * p, {h.a(), h.b()}, "He3(" + std::to_string(p) + ")");
  return h;
}

// ---------------------------------------------------------------------------

PermGroup cyclic_group(std::uint64_t n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "cyclic_group: n must be positive");
  std::vector<Point> img(n);
  for (std::uint64_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
  return PermGroup(n, {Permutation(std::move(img))}, "Z/" + std::to_string(n));
}

std::vector<ZmodElement> cyclic_quotient(const CircleBundleSpec& spec, std::uint64_t n) {
  spec.validate();
  std::uint64_t abs_n = static_cast<std::uint64_t>(spec.euler_number < 0 ? -spec.euler_number : spec.euler_number);
  if (abs_n != n)
    fail(ErrorCode::InvalidArgument, "cyclic_quotient: target Z/" + std::to_string(n) +
                                         " does not match Euler number " + std::to_string(spec.euler_number));
  std::vector<ZmodElement> images(2 * spec.genus + 1, ZmodElement{n, 0});
  images.back() = ZmodElement{n, 1 % n};
  return images;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // p is prime and small.
  for (std::uint64_t x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  fail(ErrorCode::InvalidArgument, "inv_mod: not invertible");
}

}  // namespace

Psl2 psl2(std::uint64_t p) {
  if (p < 5 || !is_prime(p)) fail(ErrorCode::InvalidArgument, "psl2: p must be a prime >= 5");
  const std::uint64_t inf = p;
  std::vector<Point> u(p + 1), t(p + 1), s(p + 1);
  const std::uint64_t w2 = quadratic_residue_generator(p);
  for (std::uint64_t x = 0; x < p; ++x) {
    u[x] = static_cast<Point>((x + 1) % p);
    t[x] = static_cast<Point>(w2 * x % p);
    s[x] = static_cast<Point>(x == 0 ? inf : (p - inv_mod(x, p)) % p);
  }
  u[inf] = static_cast<Point>(inf);
  t[inf] = static_cast<Point>(inf);
  s[inf] = 0;
  Psl2 g;
  g.p = p;
  g.unipotent = Permutation(std::move(u));
  g.torus = Permutation(std::move(t));
  g.inversion = Permutation(std::move(s));
  g.group = PermGroup(p + 1, {g.unipotent, g.torus, g.inversion}, "PSL2(" + std::to_string(p) + ")");
  return g;
}

WeylAction psl2_weyl_action(const Psl2& g) {
  Permutation conj = g.torus.inverse() * g.unipotent * g.torus;
  std::uint64_t c = conj[0];
  if (!(g.unipotent.pow(static_cast<std::int64_t>(c)) == conj))
    throw std::logic_error("psl2_weyl_action: torus does not normalize the unipotent subgroup");
  return {g.p, c};
}

// ---------------------------------------------------------------------------

PermGroupFile parse_perm_group_file(const std::string& text) {
  PermGroupFile f;
  bool have_order = false;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    line = line.substr(b);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.rfind("name ", 0) == 0) {
      f.name = line.substr(5);
    } else if (line.rfind("degree ", 0) == 0) {
      f.degree = std::stoul(line.substr(7));
    } else if (line.rfind("order ", 0) == 0) {
      if (f.declared_order.set_str(line.substr(6), 10) != 0) fail(ErrorCode::Parse, "bad order line: " + line);
      have_order = true;
    } else if (line[0] == '(') {
      if (f.degree == 0) fail(ErrorCode::Parse, "generator before 'degree' line");
      f.generators.push_back(Permutation::parse_cycles(f.degree, line));
    } else {
      fail(ErrorCode::Parse, "unrecognized line: " + line);
    }
  }
  if (f.name.empty() || f.degree == 0 || !have_order) fail(ErrorCode::Parse, "missing name, degree or order header");
  return f;
}

std::string mathieu_path(const std::string& name, const std::string& data_dir) {
  return data_dir + "/mathieu/" + name + ".perm";
}

PermGroup load_mathieu(const std::string& name, const std::string& data_dir) {
  static const std::vector<std::string> known{"M11", "M12", "M22", "M23"};
  if (std::find(known.begin(), known.end(), name) == known.end())
    fail(ErrorCode::InvalidArgument, "load_mathieu: unknown group '" + name + "'");
  std::string path = mathieu_path(name, data_dir);
  std::ifstream in(path);
  if (!in) fail(ErrorCode::DataMissing, "load_mathieu: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  PermGroupFile f;
  try {
    f = parse_perm_group_file(ss.str());
  } catch (const Error& e) {
    fail(ErrorCode::DataCorrupt, path + ": " + e.what());
  }
  if (f.name != name) fail(ErrorCode::DataCorrupt, path + ": file declares group '" + f.name + "'");
  PermGroup g(f.degree, f.generators, f.name);
  if (g.order() != f.declared_order)
    fail(ErrorCode::DataCorrupt, path + ": generators give order " + g.order().get_str() + ", file declares " +
                                     f.declared_order.get_str());
  return g;
}

// ---------------------------------------------------------------------------

KnotSpec make_knot(std::string name, Presentation presentation) {
  if (!presentation.has_mark("mu")) fail(ErrorCode::InvalidArgument, "knot '" + name + "': no marked meridian 'mu'");
  Abelianization ab = abelianization(presentation);
  if (!(ab.group.free_rank == 1 && ab.group.invariant_factors.empty()) ||
      !generates_group(ab.group, ab.marked.at("mu")))
    fail(ErrorCode::InvalidArgument,
         "knot '" + name + "': abelianization is " + ab.group.to_string() + ", expected Z generated by mu");
  return {std::move(name), std::move(presentation)};
}

KnotSpec torus_knot_group(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1) fail(ErrorCode::InvalidArgument, "torus_knot_group: p, q must be positive");
  if (std::gcd(p, q) != 1) fail(ErrorCode::InvalidArgument, "torus_knot_group: p and q must be coprime");
  // Find u, v with u q + v p = 1.
  std::int64_t u = 0, v = 0;
  for (std::int64_t cand = 0; cand < p; ++cand) {
    if ((cand * q - 1) % p == 0) {
      u = cand;
      v = (1 - cand * q) / p;
      break;
    }
  }
  if (p == 1) {
    u = 0;
    v = 1;
  }
  Word x = Word::generator(0), y = Word::generator(1);
  Presentation pres(2, {free_reduce(x.pow(p) * y.pow(-q))}, {{"mu", free_reduce(y.pow(v) * x.pow(u))}}, {"x", "y"});
  return make_knot("T(" + std::to_string(p) + "," + std::to_string(q) + ")", std::move(pres));
}

KnotSpec builtin_knot(const std::string& name) {
  if (name == "unknot") {
    return make_knot("unknot", Presentation(1, {}, {{"mu", Word::generator(0)}}, {"x"}));
  }
  if (name == "trefoil") {
    KnotSpec k = torus_knot_group(2, 3);
    k.name = "trefoil";
    return k;
  }
  if (name == "cinquefoil") {
    KnotSpec k = torus_knot_group(2, 5);
    k.name = "cinquefoil";
    return k;
  }
  if (name.rfind("torus:", 0) == 0) {
    auto comma = name.find(',');
    if (comma == std::string::npos) fail(ErrorCode::InvalidArgument, "expected torus:p,q");
    try {
      return torus_knot_group(std::stoll(name.substr(6, comma - 6)), std::stoll(name.substr(comma + 1)));
    } catch (const std::logic_error&) {
      fail(ErrorCode::InvalidArgument, "expected torus:p,q with integers p, q");
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown knot '" + name + "'");
}

Presentation twist_spin_quotient(const KnotSpec& k, std::int64_t d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "twist_spin_quotient: d must be >= 2");
  return k.presentation.with_relator(k.presentation.mark("mu").pow(d));
}

}  // namespace surfcert
