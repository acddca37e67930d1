#include "surfcert/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "surfcert/error.hpp"
#include "surfcert/todd_coxeter.hpp"

namespace surfcert {

using nlohmann::json;

namespace {

const char* const kHomWellDefined = "hom-well-defined";
const char* const kMuNontrivial = "mu-nontrivial";
const char* const kNormalGeneration = "normal-generation";
const char* const kTorsion = "h3-no-p-torsion";
const char* const kVanishing = "h3-vanishing";

Check make_check(std::string name, bool ok, ProvenanceKind prov, std::string detail) {
  return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, prov, std::move(detail), {}};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& s : parts) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string primes_to_string(const std::vector<std::uint64_t>& ps) {
  if (ps.empty()) return "-";
  std::vector<std::string> s;
  for (auto p : ps) s.push_back(std::to_string(p));
  return join(s, ",");
}

std::string failing_list(const Presentation& p, const HomCheck& h) {
  std::vector<std::string> out;
  for (auto i : h.failing_relators) out.push_back(p.format_word(p.relators()[i]));
  return join(out, "; ");
}

// The torsion check for a target H_3, from whatever evidence is at hand.
Check torsion_check(const std::string& id, std::uint64_t p, const std::optional<H3Evidence>& evidence) {
  Check c{kTorsion, CheckStatus::Inconclusive, ProvenanceKind::Computed, {}, {}};
  if (!evidence) {
    c.detail = "no H_3 evidence available for " + id;
    return c;
  }
  try {
    TorsionVerdict v = h3_has_no_p_torsion(id, p, *evidence);
    c.provenance = v.provenance.kind;
    c.detail = v.provenance.text;
    if (!v.no_p_torsion)
      c.status = CheckStatus::Fail;
    else
      c.status = v.provenance.kind == ProvenanceKind::ExternalTable ? CheckStatus::External : CheckStatus::Pass;
    if (const auto* t = std::get_if<TableEntry>(&*evidence)) c.citation = t->record.citation;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EvidenceInapplicable) throw;
    c.detail = e.what();
    if (const auto* t = std::get_if<TableEntry>(&*evidence)) {
      c.provenance = ProvenanceKind::ExternalTable;
      c.citation = t->record.citation;
    }
  }
  return c;
}

std::optional<AbelianGroupStructure> known_h3(const std::optional<H3Evidence>& evidence) {
  if (!evidence) return std::nullopt;
  if (const auto* c = std::get_if<ComputedH3>(&*evidence)) return c->h3.structure;
  if (const auto* t = std::get_if<TableEntry>(&*evidence)) return t->record.h3;
  return std::nullopt;
}

// Image of a class of p-power exponent in a group without p-torsion is zero.
Check vanishing_check(const BigInt& exponent, std::uint64_t p, const Check& torsion,
                      const std::optional<AbelianGroupStructure>& target_h3) {
  Check c{kVanishing, CheckStatus::Inconclusive, torsion.provenance, {}, torsion.citation};
  if (torsion.status == CheckStatus::Fail) {
    c.status = CheckStatus::Fail;
    c.detail = "target H_3 has " + std::to_string(p) + "-torsion";
    return c;
  }
  if (torsion.status == CheckStatus::Inconclusive) {
    c.detail = "depends on " + std::string(kTorsion);
    return c;
  }
  bool ok = target_h3 ? p_power_torsion_maps_to_zero(exponent, p, *target_h3) : is_power_of(exponent, p);
  c.status = !ok ? CheckStatus::Fail : torsion.status;
  c.detail = "source class killed by " + exponent.get_str() + ", a power of " + std::to_string(p) +
             "; target H_3 has no " + std::to_string(p) + "-torsion";
  return c;
}

void record_images(Certificate& c, const Presentation& src, const std::vector<Permutation>& images,
                   const Permutation& mu) {
  c.witness["degree"] = std::to_string(mu.degree());
  for (std::size_t i = 0; i < images.size(); ++i) c.witness["image." + src.names()[i]] = images[i].to_cycle_string();
  c.witness["mu"] = mu.to_cycle_string();
}

// The three checks every route into a permutation group shares.
Permutation add_hom_checks(Certificate& c, const Presentation& src, const PermGroup& target,
                           const std::vector<Permutation>& images, std::uint64_t seed) {
  const Permutation id = target.identity();
  HomCheck h = check_hom<Permutation>(src, images, id);
  c.checks.push_back(make_check(kHomWellDefined, h.ok, ProvenanceKind::Computed,
                                h.ok ? "all " + std::to_string(src.relators().size()) + " relators map to 1"
                                     : "relators not killed: " + failing_list(src, h)));
  Permutation mu = evaluate<Permutation>(src.mark("mu"), images, id);
  c.checks.push_back(make_check(kMuNontrivial, !mu.is_identity(), ProvenanceKind::Computed,
                                "phi(mu) has order " + std::to_string(element_order(mu))));
  PermGroup closure = normal_closure(target, mu, seed);
  bool whole = closure.order() == target.order();
  c.checks.push_back(make_check(kNormalGeneration, whole, ProvenanceKind::Computed,
                                "normal closure of phi(mu) has order " + closure.order().get_str() + " of " +
                                    target.order().get_str()));
  record_images(c, src, images, mu);
  return mu;
}

std::string resolve_data_dir(const std::string& d) { return d.empty() ? default_data_dir() : d; }

std::string hex(const unsigned char* p, unsigned n) {
  std::ostringstream os;
  for (unsigned i = 0; i < n; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(p[i]);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::DataMissing, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_mathieu(const std::string& t) { return t == "M11" || t == "M12" || t == "M22" || t == "M23"; }

std::string canonical_group_name(const std::string& name) { return name == "Monster" ? "M" : name; }

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::External: return "external";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::ExternalOnly: return "external-only";
  }
  return "?";
}

std::string to_string(Route r) {
  switch (r) {
    case Route::Heisenberg: return "heisenberg";
    case Route::Cyclic: return "cyclic";
    case Route::TwistSpin: return "twist-spin";
  }
  return "?";
}

Route parse_route(const std::string& s) {
  if (s == "heisenberg") return Route::Heisenberg;
  if (s == "cyclic") return Route::Cyclic;
  if (s == "twist-spin") return Route::TwistSpin;
  fail(ErrorCode::InvalidArgument, "unknown route '" + s + "' (expected heisenberg, cyclic or twist-spin)");
}

std::string to_string(SpinStatus s) {
  switch (s) {
    case SpinStatus::Eligible: return "eligible";
    case SpinStatus::Ineligible: return "ineligible";
    case SpinStatus::Inconclusive: return "inconclusive";
    case SpinStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Confirmed: return "confirmed";
    case CellStatus::ConfirmedAbsent: return "confirmed-absent";
    case CellStatus::Inconclusive: return "inconclusive";
    case CellStatus::ExternalOnly: return "external-only";
    case CellStatus::Mismatch: return "mismatch";
  }
  return "?";
}

const Check* Certificate::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Verdict combine_verdict(const std::vector<Check>& checks) {
  if (checks.empty()) return Verdict::Inconclusive;
  auto any = [&](auto pred) { return std::any_of(checks.begin(), checks.end(), pred); };
  if (any([](const Check& c) { return c.status == CheckStatus::Fail; })) return Verdict::Fail;
  if (any([](const Check& c) { return c.status == CheckStatus::Inconclusive; })) return Verdict::Inconclusive;
  if (any([](const Check& c) {
        return c.status == CheckStatus::External &&
               (c.name == kHomWellDefined || c.name == kMuNontrivial || c.name == kNormalGeneration);
      }))
    return Verdict::ExternalOnly;
  return Verdict::Pass;
}

void finalize(Certificate& c) {
  c.verdict = combine_verdict(c.checks);
  std::set<std::string> cites;
  bool external = false;
  for (const auto& ch : c.checks) {
    if (ch.provenance == ProvenanceKind::ExternalTable) external = true;
    if (ch.status == CheckStatus::External && !ch.citation.empty()) cites.insert(ch.citation);
  }
  c.certified = c.verdict == Verdict::Pass && !external;
  c.conditional_on.assign(cites.begin(), cites.end());
}

// --- Serialization -----------------------------------------------------------

std::string to_json(const Certificate& c) {
  json input = {{"route", to_string(c.route)}, {"euler_number", c.euler_number}};
  if (c.route == Route::TwistSpin) {
    input["knot"] = c.knot;
    input["d"] = c.d;
    input["m"] = c.m;
  } else {
    input["genus"] = c.genus;
    input["target"] = c.target;
    input["prime"] = c.prime;
    input["mu"] = to_string(c.mu);
  }
  json checks = json::array();
  for (const auto& ch : c.checks) {
    json j = {{"name", ch.name},
              {"status", to_string(ch.status)},
              {"provenance", to_string(ch.provenance)},
              {"detail", ch.detail}};
    if (!ch.citation.empty()) j["citation"] = ch.citation;
    checks.push_back(std::move(j));
  }
  json out = {{"schema", kCertificateSchema},
              {"input", input},
              {"checks", checks},
              {"verdict", to_string(c.verdict)},
              {"certified", c.certified},
              {"conditional_on", c.conditional_on},
              {"seed", c.seed},
              {"data_files", c.data_files},
              {"witness", c.witness}};
  out["spin"] = c.spin ? json{{"status", to_string(c.spin->status)}, {"detail", c.spin->detail}} : json(nullptr);
  return out.dump(2) + "\n";
}

std::string to_text(const Certificate& c) {
  std::ostringstream os;
  os << "route " << to_string(c.route);
  if (c.route == Route::TwistSpin)
    os << ", knot " << c.knot << ", d = " << c.d << ", m = " << c.m << ", n = d^2 m = " << c.euler_number << "\n";
  else
    os << ", genus " << c.genus << ", n = " << c.euler_number << ", target " << c.target << ", p = " << c.prime
       << ", mu = " << to_string(c.mu) << "\n";
  for (const auto& ch : c.checks)
    os << "  [" << to_string(ch.status) << "] " << ch.name << " (" << to_string(ch.provenance) << "): " << ch.detail
       << "\n";
  if (c.spin) os << "spin: " << to_string(c.spin->status) << " (" << c.spin->detail << ")\n";
  os << "verdict: " << to_string(c.verdict) << (c.certified ? ", certified" : ", not certified") << "\n";
  for (const auto& cite : c.conditional_on) os << "  conditional on: " << cite << "\n";
  return os.str();
}

// --- Routes ------------------------------------------------------------------

Certificate verify_heisenberg_route(const CircleBundleSpec& spec, MeridianConvention mu, const PermGroup& target,
                                    const std::string& target_id, const HeisenbergWitness& w,
                                    const std::optional<H3Evidence>& evidence) {
  auto he = heisenberg_surjection(spec);
  WitnessCheck wc = verify_witness(target, w);
  if (!wc.ok()) fail(ErrorCode::InvalidArgument, "Heisenberg witness does not generate He_3(p) in " + target_id);
  const std::uint64_t p = w.p;

  Certificate c;
  c.route = Route::Heisenberg;
  c.genus = spec.genus;
  c.euler_number = spec.euler_number;
  c.target = target_id;
  c.prime = p;
  c.mu = mu;

  c.checks.push_back(make_check("heisenberg-witness", true, ProvenanceKind::Computed,
                                "a, b of order " + std::to_string(p) + ", [a,b] central of order " +
                                    std::to_string(p) + ", |<a,b>| = " + std::to_string(p * p * p)));

  Presentation src = circle_bundle_pi1(spec, mu);
  HomCheck h1 = check_hom<He3Element>(src, he, He3Element{});
  c.checks.push_back(make_check("heisenberg-stage", h1.ok, ProvenanceKind::Computed,
                                h1.ok ? "pi_1(Y) -> He_3(Z) kills every relator" : failing_list(src, h1)));

  const Permutation z = w.center();
  const Permutation id = target.identity();
  std::vector<Permutation> he3_images{w.a, w.b, z};
  Presentation he3p = he3_mod_p_presentation(p);
  HomCheck h2 = check_hom<Permutation>(he3p, he3_images, id);
  c.checks.push_back(make_check("reduction-stage", h2.ok, ProvenanceKind::Computed,
                                h2.ok ? "He_3(" + std::to_string(p) + ") -> " + target_id + " kills every relator"
                                      : failing_list(he3p, h2)));

  // (x, y, t) -> a^x b^y z^(t - xy) in the target.
  std::vector<Permutation> images;
  for (const auto& e : he) {
    He3Element r = e.reduce(p);
    images.push_back(w.a.pow(r.x) * w.b.pow(r.y) * z.pow(r.t - r.x * r.y));
  }
  add_hom_checks(c, src, target, images, 0xC0FFEE);

  BigInt bound = he3_annihilation_bound(p);
  if (p == 2) {
    HomologyResult h3 = bar_homology(he3_mod_p(2).group, 3, kDefaultBarSizeCap, "He3(2)");
    bool divides = std::all_of(h3.structure.invariant_factors.begin(), h3.structure.invariant_factors.end(),
                               [&](const BigInt& d) { return mpz_divisible_p(bound.get_mpz_t(), d.get_mpz_t()); });
    c.checks.push_back(make_check("he3-annihilation", divides, ProvenanceKind::Computed,
                                  "H_3(He_3(2)) = " + h3.structure.to_string() + " via bar complex; each factor divides " +
                                      bound.get_str()));
  } else {
    c.checks.push_back(make_check("he3-annihilation", true, ProvenanceKind::Formula,
                                  "|He_3(" + std::to_string(p) + ")| = " + bound.get_str() +
                                      " annihilates positive-degree homology"));
  }
  Check torsion = torsion_check(target_id, p, evidence);
  Check vanish = vanishing_check(bound, p, torsion, known_h3(evidence));
  c.checks.push_back(torsion);
  c.checks.push_back(vanish);
  c.witness["heisenberg.a"] = w.a.to_cycle_string();
  c.witness["heisenberg.b"] = w.b.to_cycle_string();
  c.spin = spin_eligibility(target_id, spec.euler_number, {});
  finalize(c);
  return c;
}

namespace {

std::uint64_t cyclic_order(const CircleBundleSpec& spec, std::uint64_t p) {
  spec.validate();
  const std::uint64_t n =
      static_cast<std::uint64_t>(spec.euler_number < 0 ? -spec.euler_number : spec.euler_number);
  if (n < 2) fail(ErrorCode::InvalidArgument, "cyclic route needs |n| > 1; use the heisenberg route for n = +-1");
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "cyclic route: p = " + std::to_string(p) + " is not prime");
  if (n % p != 0)
    fail(ErrorCode::InvalidArgument,
         "cyclic route: p = " + std::to_string(p) + " does not divide n = " + std::to_string(n));
  return n;
}

}  // namespace

Certificate verify_cyclic_route_into(const CircleBundleSpec& spec, std::uint64_t p, MeridianConvention mu,
                                     const PermGroup& target, const std::string& target_id,
                                     const Permutation& generator, const std::optional<H3Evidence>& evidence,
                                     const SpinEvidence& spin) {
  const std::uint64_t n = cyclic_order(spec, p);
  if (!target.contains(generator) || element_order(generator) != p)
    fail(ErrorCode::InvalidArgument, "cyclic route: generator is not an element of order " + std::to_string(p) +
                                         " in " + target_id);

  Certificate c;
  c.route = Route::Cyclic;
  c.genus = spec.genus;
  c.euler_number = spec.euler_number;
  c.target = target_id;
  c.prime = p;
  c.mu = mu;

  Presentation src = circle_bundle_pi1(spec, mu);
  auto zn = cyclic_quotient(spec, n);
  HomCheck h1 = check_hom<ZmodElement>(src, zn, ZmodElement{n, 0});
  c.checks.push_back(make_check("cyclic-stage", h1.ok, ProvenanceKind::Computed,
                                h1.ok ? "pi_1(Y) -> Z/" + std::to_string(n) + " kills every relator"
                                      : failing_list(src, h1)));

  Presentation cyc(1, {Word::generator(0, static_cast<std::int64_t>(n))}, {}, {"t"});
  std::vector<Permutation> tu{generator};
  HomCheck h2 = check_hom<Permutation>(cyc, tu, target.identity());
  c.checks.push_back(make_check("reduction-stage", h2.ok, ProvenanceKind::Computed,
                                "Z/" + std::to_string(n) + " -> Z/" + std::to_string(p) + " = <t> in " + target_id +
                                    ", t of order " + std::to_string(p)));

  std::vector<Permutation> images;
  for (const auto& e : zn) images.push_back(generator.pow(static_cast<std::int64_t>(e.v % p)));
  add_hom_checks(c, src, target, images, 0xC0FFEE);
  c.witness["cyclic.t"] = generator.to_cycle_string();

  AbelianGroupStructure src_h3 = homology_cyclic(p, 3);
  BigInt exponent = src_h3.invariant_factors.back();
  c.checks.push_back(make_check("source-exponent", is_power_of(exponent, p), ProvenanceKind::Computed,
                                "H_3(Z/" + std::to_string(p) + ") = " + src_h3.to_string() + " (periodic resolution)"));
  Check torsion = torsion_check(target_id, p, evidence);
  c.checks.push_back(torsion);
  c.checks.push_back(vanishing_check(exponent, p, torsion, known_h3(evidence)));

  c.spin = spin_eligibility(target_id, spec.euler_number, n % 2 == 0 ? spin : SpinEvidence{});
  finalize(c);
  return c;
}

Certificate verify_cyclic_route(const CircleBundleSpec& spec, std::uint64_t p, MeridianConvention mu) {
  cyclic_order(spec, p);
  if (p < 7) {
    std::string why = "cyclic route into PSL2(p) needs p >= 7";
    if (p == 5) {
      std::vector<std::string> ds;
      for (int d : psl2_p_torsion_degrees(5, 4)) ds.push_back(std::to_string(d));
      why += ": 5-torsion degrees of H^*(PSL2(5)) up to 4 are {" + join(ds, ",") +
             "}, so H_3(PSL2(5)) has 5-torsion";
    } else {
      why += ": PSL2(" + std::to_string(p) + ") is not simple";
    }
    fail(ErrorCode::InvalidArgument, why + "; give a sporadic --target instead");
  }
  Psl2 g = psl2(p);
  const std::string id = "PSL2(" + std::to_string(p) + ")";
  return verify_cyclic_route_into(spec, p, mu, g.group, id, g.unipotent, H3Evidence{Psl2Formula{p}},
                                  spin_evidence(&g.group, nullptr));
}

namespace {

Permutation random_permutation(std::size_t k, Rng& rng) {
  std::vector<Point> img(k);
  for (std::size_t i = 0; i < k; ++i) img[i] = static_cast<Point>(i);
  for (std::size_t i = k; i > 1; --i) std::swap(img[i - 1], img[rng.below(i)]);
  return Permutation(std::move(img));
}

bool pairwise_commute(const std::vector<Permutation>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!(xs[i] * xs[j] == xs[j] * xs[i])) return false;
  return true;
}

}  // namespace

Certificate verify_twist_spin_route(const KnotSpec& knot, std::int64_t d, std::int64_t m,
                                    const TwistSpinOptions& options) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "twist-spin route: m must be >= 1");
  Presentation q = twist_spin_quotient(knot, d);

  Certificate c;
  c.route = Route::TwistSpin;
  c.knot = knot.name;
  c.d = d;
  c.m = m;
  c.euler_number = d * d * m;
  c.seed = options.seed;

  c.checks.push_back(make_check("self-intersection", true, ProvenanceKind::Formula,
                                "n = d^2 m = " + std::to_string(c.euler_number)));
  c.checks.push_back(make_check("knot-abelianization", true, ProvenanceKind::Computed,
                                "H_1 of the knot group is Z generated by mu"));

  Abelianization ab = abelianization(q);
  AbelianGroupStructure zd = AbelianGroupStructure::from_cyclic_orders({BigInt(static_cast<long>(d))});
  bool ab_ok = ab.group == zd && generates_group(ab.group, ab.marked.at("mu"));
  c.checks.push_back(make_check("quotient-abelianization", ab_ok, ProvenanceKind::Computed,
                                "abelianization " + ab.group.to_string() + ", expected " + zd.to_string() +
                                    " generated by mu"));

  ToddCoxeterResult tc = todd_coxeter(q, options.coset_budget);
  Check na{"non-abelian", CheckStatus::Inconclusive, ProvenanceKind::Computed, {}, {}};
  if (tc.complete()) {
    c.witness["order"] = std::to_string(tc.order);
    BigInt ab_order = ab.group.is_finite() ? ab.group.torsion_order() : BigInt(0);
    na.status = BigInt(static_cast<unsigned long>(tc.order)) > ab_order ? CheckStatus::Pass : CheckStatus::Fail;
    na.detail = "coset enumeration: order " + std::to_string(tc.order) +
                (na.status == CheckStatus::Pass ? " > " : " = ") + ab_order.get_str() + " = |abelianization|";
  } else {
    Rng rng(options.seed);
    bool found = false;
    for (std::size_t k = 3; k <= 8 && !found; ++k) {
      for (std::uint64_t t = 0; t < options.search_trials && !found; ++t) {
        std::vector<Permutation> imgs;
        for (std::uint32_t g = 0; g < q.num_generators(); ++g) imgs.push_back(random_permutation(k, rng));
        if (!check_hom<Permutation>(q, imgs, Permutation(k)).ok || pairwise_commute(imgs)) continue;
        found = true;
        na.status = CheckStatus::Pass;
        na.detail = "coset enumeration overflowed at " + std::to_string(options.coset_budget) +
                    "; non-abelian image in S_" + std::to_string(k);
        for (std::size_t i = 0; i < imgs.size(); ++i)
          c.witness["image." + q.names()[i]] = imgs[i].to_cycle_string();
        c.witness["degree"] = std::to_string(k);
      }
    }
    if (!found)
      na.detail = "coset enumeration overflowed at " + std::to_string(options.coset_budget) +
                  " and no non-abelian image in S_3..S_8 was found";
  }
  c.checks.push_back(na);
  finalize(c);
  return c;
}

SpinVerdict spin_eligibility(const std::string& group_id, std::int64_t n, const SpinEvidence& ev) {
  if (n % 2 != 0) return {SpinStatus::NotApplicable, "n = " + std::to_string(n) + " is odd"};
  std::vector<std::string> notes;
  bool unknown = false;
  bool bad = false;
  if (!ev.perfect) {
    unknown = true;
    notes.push_back("H_1(" + group_id + ") unknown");
  } else {
    bad |= !*ev.perfect;
    notes.push_back(std::string("H_1(") + group_id + ") " + (*ev.perfect ? "= 0" : "!= 0") + " [" +
                    ev.perfect_source + "]");
  }
  if (!ev.h2) {
    unknown = true;
    notes.push_back("H_2(" + group_id + ") unknown");
  } else {
    bad |= !ev.h2->is_trivial();
    notes.push_back("H_2(" + group_id + ") = " + ev.h2->to_string() + " [" + ev.h2_source + "]");
  }
  SpinStatus s = bad ? SpinStatus::Ineligible : unknown ? SpinStatus::Inconclusive : SpinStatus::Eligible;
  return {s, join(notes, "; ")};
}

SpinEvidence spin_evidence(const PermGroup* group, const ExternalRecord* record) {
  SpinEvidence ev;
  if (group) {
    ev.perfect = derived_subgroup(*group).order() == group->order();
    ev.perfect_source = "derived subgroup";
  }
  if (record && record->h2) {
    ev.h2 = record->h2;
    ev.h2_source = record->citation;
  }
  return ev;
}

// --- Requests ----------------------------------------------------------------

std::string default_data_dir() {
  if (const char* env = std::getenv("SURFACE_CERT_DATA"); env && *env) return env;
#ifdef SURFCERT_DATA_DIR
  return SURFCERT_DATA_DIR;
#else
  return "data";
#endif
}

std::string external_table_path(const std::string& data_dir) { return data_dir + "/sporadic_homology.txt"; }

std::string sha256_file(const std::string& path) {
  std::string data = read_file(path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorCode::DataCorrupt, "SHA-256 failed for '" + path + "'");
  return hex(md, len);
}

namespace {

// Certificate for a group known only through the table. He_3(p) <= P also
// supplies the element of order p the cyclic route needs.
Certificate external_certificate(Route route, const CircleBundleSpec& spec, MeridianConvention mu,
                                 const ExternalRecord& rec, std::uint64_t p) {
  if (route == Route::Cyclic)
    cyclic_order(spec, p);
  else
    heisenberg_surjection(spec);
  Certificate c;
  c.route = route;
  c.genus = spec.genus;
  c.euler_number = spec.euler_number;
  c.target = rec.name;
  c.prime = p;
  c.mu = mu;
  const std::string ps = std::to_string(p);
  const std::string witness = route == Route::Cyclic ? "cyclic-witness" : "heisenberg-witness";
  bool listed = std::find(rec.he3_primes.begin(), rec.he3_primes.end(), p) != rec.he3_primes.end();
  auto ext = [&](std::string name, std::string detail) {
    return Check{std::move(name), CheckStatus::External, ProvenanceKind::ExternalTable, std::move(detail),
                 rec.citation};
  };
  if (listed) {
    c.checks.push_back(ext(witness, "table lists He_3(" + ps + ") <= " + rec.name));
  } else {
    c.checks.push_back({witness, CheckStatus::Inconclusive, ProvenanceKind::ExternalTable,
                        "table lists no He_3(" + ps + ") in " + rec.name + " (primes " +
                            primes_to_string(rec.he3_primes) + ")",
                        rec.citation});
  }
  c.checks.push_back(ext(kHomWellDefined, rec.name + " is not constructed; the homomorphism is not evaluated"));
  c.checks.push_back(ext(kMuNontrivial, route == Route::Cyclic
                                            ? "phi(mu) is an element of order " + ps
                                            : "phi(mu) = [a,b]^n is the centre of He_3(p), non-trivial if it embeds"));
  c.checks.push_back(ext(kNormalGeneration, rec.name + " is simple, so any non-trivial phi(mu) normally generates"));
  BigInt bound;
  if (route == Route::Cyclic) {
    AbelianGroupStructure src_h3 = homology_cyclic(p, 3);
    bound = src_h3.invariant_factors.back();
    c.checks.push_back(make_check("source-exponent", is_power_of(bound, p), ProvenanceKind::Computed,
                                  "H_3(Z/" + ps + ") = " + src_h3.to_string() + " (periodic resolution)"));
  } else {
    bound = he3_annihilation_bound(p);
    c.checks.push_back(make_check("he3-annihilation", true, ProvenanceKind::Formula,
                                  "|He_3(" + ps + ")| = " + bound.get_str() + " annihilates positive-degree homology"));
  }
  std::optional<H3Evidence> ev = H3Evidence{TableEntry{rec}};
  Check torsion = torsion_check(rec.name, p, ev);
  c.checks.push_back(torsion);
  c.checks.push_back(vanishing_check(bound, p, torsion, rec.h3));
  c.spin = spin_eligibility(rec.name, spec.euler_number, spin_evidence(nullptr, &rec));
  finalize(c);
  return c;
}

// Seeded search for an element of order exactly p.
std::optional<Permutation> element_of_order(const PermGroup& g, std::uint64_t p, std::uint64_t seed,
                                            std::uint64_t budget) {
  if (!mpz_divisible_ui_p(g.order().get_mpz_t(), p)) return std::nullopt;
  Rng rng(seed);
  for (std::uint64_t i = 0; i < budget; ++i) {
    Permutation x = g.random_element(rng);
    std::uint64_t o = element_order(x);
    if (o % p == 0) return x.pow(static_cast<std::int64_t>(o / p));
  }
  return std::nullopt;
}

}  // namespace

Certificate certify(const VerifyRequest& r) {
  const std::string data_dir = resolve_data_dir(r.data_dir);
  Certificate c;
  std::map<std::string, std::string> files;

  if (r.route == Route::TwistSpin) {
    KnotSpec k;
    if (!r.knot_file.empty()) {
      std::string text = read_file(r.knot_file);
      std::string stem = std::filesystem::path(r.knot_file).stem().string();
      k = make_knot(stem, parse_presentation(text));
      files["knot/" + std::filesystem::path(r.knot_file).filename().string()] = sha256_file(r.knot_file);
    } else {
      k = builtin_knot(r.knot);
    }
    c = verify_twist_spin_route(k, r.d, r.m, {r.coset_budget, r.seed, 2000});
  } else {
    CircleBundleSpec spec{r.genus, r.euler_number};
    spec.validate();
    const std::string cyc_target = canonical_group_name(r.target);
    if (r.route == Route::Cyclic && !cyc_target.empty() && cyc_target.rfind("PSL2", 0) != 0) {
      const std::uint64_t p = r.prime;
      const std::string path = external_table_path(data_dir);
      ExternalTable table = ExternalTable::load(path);
      files["sporadic_homology.txt"] = sha256_file(path);
      const ExternalRecord* rec = table.find(cyc_target);
      if (is_mathieu(cyc_target)) {
        cyclic_order(spec, p);
        PermGroup g = load_mathieu(cyc_target, data_dir);
        files["mathieu/" + cyc_target + ".perm"] = sha256_file(mathieu_path(cyc_target, data_dir));
        std::optional<H3Evidence> ev;
        if (rec) ev = H3Evidence{TableEntry{*rec}};
        if (auto t = element_of_order(g, p, r.seed, r.search_budget)) {
          c = verify_cyclic_route_into(spec, p, r.mu, g, cyc_target, *t, ev, spin_evidence(&g, rec));
        } else {
          c.route = Route::Cyclic;
          c.genus = spec.genus;
          c.euler_number = spec.euler_number;
          c.target = cyc_target;
          c.prime = p;
          c.mu = r.mu;
          if (!mpz_divisible_ui_p(g.order().get_mpz_t(), p))
            c.checks.push_back(make_check("cyclic-witness", false, ProvenanceKind::Computed,
                                          std::to_string(p) + " does not divide |" + cyc_target +
                                              "| = " + g.order().get_str()));
          else
            c.checks.push_back({"cyclic-witness", CheckStatus::Inconclusive, ProvenanceKind::Computed,
                                "no element of order " + std::to_string(p) + " after " +
                                    std::to_string(r.search_budget) + " trials",
                                {}});
          finalize(c);
        }
      } else if (rec) {
        c = external_certificate(Route::Cyclic, spec, r.mu, *rec, p);
      } else {
        fail(ErrorCode::InvalidArgument, "unknown target '" + r.target + "'");
      }
    } else if (r.route == Route::Cyclic) {
      std::uint64_t p = r.prime;
      if (p == 0) {
        std::uint64_t n = static_cast<std::uint64_t>(r.euler_number < 0 ? -r.euler_number : r.euler_number);
        for (std::uint64_t q = 7; q <= n && p == 0; ++q)
          if (n % q == 0 && is_prime(q)) p = q;
        if (p == 0) fail(ErrorCode::InvalidArgument, "cyclic route: n has no prime factor >= 7");
      }
      c = verify_cyclic_route(spec, p, r.mu);
    } else {
      const std::uint64_t p = r.prime;
      if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "heisenberg route needs --prime p with p prime");
      const std::string target = canonical_group_name(r.target);
      std::optional<ExternalTable> table;
      auto load_table = [&]() -> const ExternalTable& {
        if (!table) {
          const std::string path = external_table_path(data_dir);
          table = ExternalTable::load(path);
          files["sporadic_homology.txt"] = sha256_file(path);
        }
        return *table;
      };
      if (is_mathieu(target)) {
        PermGroup g = load_mathieu(target, data_dir);
        files["mathieu/" + target + ".perm"] = sha256_file(mathieu_path(target, data_dir));
        const ExternalRecord* rec = load_table().find(target);
        std::optional<H3Evidence> ev;
        if (rec) ev = H3Evidence{TableEntry{*rec}};
        HeisenbergSearch s = find_heisenberg_subgroup(g, p, r.seed, r.search_budget);
        if (const auto* w = std::get_if<HeisenbergWitness>(&s)) {
          c = verify_heisenberg_route(spec, r.mu, g, target, *w, ev);
        } else {
          heisenberg_surjection(spec);
          c.route = Route::Heisenberg;
          c.genus = spec.genus;
          c.euler_number = spec.euler_number;
          c.target = target;
          c.prime = p;
          c.mu = r.mu;
          if (const auto* ex = std::get_if<HeisenbergExcluded>(&s))
            c.checks.push_back(make_check("heisenberg-witness", false, ProvenanceKind::Computed, ex->reason));
          else
            c.checks.push_back({"heisenberg-witness", CheckStatus::Inconclusive, ProvenanceKind::Computed,
                                "no witness after " + std::to_string(std::get<HeisenbergNotFound>(s).trials) +
                                    " trials",
                                {}});
          finalize(c);
        }
      } else if (target == "He3") {
        He3ModP h = he3_mod_p(p);
        std::optional<H3Evidence> ev;
        if (p * p * p <= kDefaultBarSizeCap) ev = H3Evidence{ComputedH3{bar_homology(h.group, 3, kDefaultBarSizeCap, "He3")}};
        c = verify_heisenberg_route(spec, r.mu, h.group, "He3(" + std::to_string(p) + ")",
                                    HeisenbergWitness{h.a(), h.b(), p}, ev);
      } else if (const ExternalRecord* rec = load_table().find(target)) {
        c = external_certificate(Route::Heisenberg, spec, r.mu, *rec, p);
      } else {
        fail(ErrorCode::InvalidArgument, "unknown target '" + r.target + "'");
      }
    }
  }
  c.seed = r.seed;
  c.data_files = std::move(files);
  return c;
}

// --- Replay ------------------------------------------------------------------

ReplayResult replay_certificate(const std::string& text, const std::string& data_dir_in) {
  const std::string data_dir = resolve_data_dir(data_dir_in);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("certificate: ") + e.what());
  }
  if (j.value("schema", 0) != kCertificateSchema) fail(ErrorCode::Parse, "certificate: unsupported schema");
  for (const auto& [rel, digest] : j.at("data_files").items()) {
    if (rel.rfind("knot/", 0) == 0) continue;
    if (sha256_file(data_dir + "/" + rel) != digest.get<std::string>())
      return {false, "data file " + rel + " differs from the certified copy"};
  }
  const json& in = j.at("input");
  Route route = parse_route(in.at("route").get<std::string>());
  const std::string verdict = j.at("verdict").get<std::string>();

  if (route == Route::TwistSpin) {
    KnotSpec k = builtin_knot(in.at("knot").get<std::string>());
    Certificate again = verify_twist_spin_route(k, in.at("d").get<std::int64_t>(), in.at("m").get<std::int64_t>(),
                                                {200'000, j.at("seed").get<std::uint64_t>(), 2000});
    bool ok = to_string(again.verdict) == verdict;
    return {ok, "recomputed verdict " + to_string(again.verdict)};
  }

  CircleBundleSpec spec{in.at("genus").get<std::uint32_t>(), in.at("euler_number").get<std::int64_t>()};
  MeridianConvention mu = in.at("mu").get<std::string>() == "z" ? MeridianConvention::Z : MeridianConvention::ZInverse;
  const std::string target = in.at("target").get<std::string>();
  const std::uint64_t p = in.at("prime").get<std::uint64_t>();
  PermGroup g;
  if (is_mathieu(target)) {
    g = load_mathieu(target, data_dir);
  } else if (route == Route::Cyclic && target.rfind("PSL2", 0) == 0) {
    g = psl2(p).group;
  } else if (target.rfind("He3(", 0) == 0) {
    g = he3_mod_p(p).group;
  } else {
    return {false, "target " + target + " is not constructed; nothing to replay"};
  }
  const json& w = j.at("witness");
  if (!w.contains("mu")) return {false, "certificate carries no homomorphism"};
  Presentation src = circle_bundle_pi1(spec, mu);
  std::vector<Permutation> images;
  for (const auto& name : src.names()) {
    auto key = "image." + name;
    if (!w.contains(key)) return {false, "missing image of " + name};
    Permutation x = Permutation::parse_cycles(g.degree(), w.at(key).get<std::string>());
    if (!g.contains(x)) return {false, "image of " + name + " is not in " + target};
    images.push_back(std::move(x));
  }
  HomCheck h = check_hom<Permutation>(src, images, g.identity());
  Permutation m = evaluate<Permutation>(src.mark("mu"), images, g.identity());
  if (m.to_cycle_string() != w.at("mu").get<std::string>()) return {false, "phi(mu) differs from the stored image"};
  bool whole = normal_closure(g, m).order() == g.order();

  std::map<std::string, bool> recomputed{
      {kHomWellDefined, h.ok}, {kMuNontrivial, !m.is_identity()}, {kNormalGeneration, whole}};
  std::vector<std::string> notes;
  bool ok = true;
  for (const auto& ch : j.at("checks")) {
    auto it = recomputed.find(ch.at("name").get<std::string>());
    if (it == recomputed.end()) continue;
    const std::string stored = ch.at("status").get<std::string>();
    const std::string now = it->second ? "pass" : "fail";
    ok &= stored == now;
    notes.push_back(it->first + " " + now + (stored == now ? "" : " (certificate says " + stored + ")"));
    recomputed.erase(it);
  }
  if (!recomputed.empty()) return {false, "certificate lacks the homomorphism checks"};
  return {ok, join(notes, ", ")};
}

// --- Table -------------------------------------------------------------------

namespace {

TableRow mathieu_row(const std::string& name, const std::string& data_dir, const ExternalTable& table,
                     std::uint64_t seed, std::uint64_t budget) {
  PermGroup g = load_mathieu(name, data_dir);
  TableRow row;
  row.group = name;
  row.order = g.order().get_str();
  const ExternalRecord* rec = table.find(name);
  row.h2 = rec && rec->h2 ? rec->h2->to_string() : "-";
  row.h3 = rec && rec->h3 ? rec->h3->to_string() : "-";
  row.claimed_primes = rec ? primes_to_string(rec->he3_primes) : "-";
  std::vector<std::string> present, absent;
  for (std::uint64_t p : kTablePrimes) {
    TableCell cell{"p=" + std::to_string(p), CellStatus::Inconclusive, {}};
    HeisenbergSearch s = find_heisenberg_subgroup(g, p, seed, budget);
    bool listed = rec && std::find(rec->he3_primes.begin(), rec->he3_primes.end(), p) != rec->he3_primes.end();
    if (std::holds_alternative<HeisenbergWitness>(s)) {
      present.push_back(std::to_string(p));
      cell.value = "present (witness)";
      bool expect_listed = rec && rec->h3 && !rec->h3->has_p_torsion(static_cast<unsigned long>(p));
      cell.status = !rec || !rec->h3 || listed == expect_listed ? CellStatus::Confirmed : CellStatus::Mismatch;
    } else if (const auto* ex = std::get_if<HeisenbergExcluded>(&s)) {
      absent.push_back(std::to_string(p));
      cell.value = "absent (Lagrange)";
      cell.status = listed ? CellStatus::Mismatch : CellStatus::ConfirmedAbsent;
      (void)ex;
    } else {
      cell.value = "not found";
    }
    row.cells.push_back(cell);
  }
  if (!rec) {
    row.note = "not in the table; He_3(p) present for p in {" + join(present, ",") + "}, absent by Lagrange for p in {" +
               join(absent, ",") + "}; the omission holds iff every present p divides |H_3(" + name +
               ")|, which is not in the shipped data";
  } else {
    row.note = "He_3(p) present for p in {" + join(present, ",") + "}; table lists " + row.claimed_primes;
  }
  return row;
}

TableRow psl2_row(std::uint64_t p) {
  Psl2 g = psl2(p);
  TableRow row;
  row.group = "PSL2(" + std::to_string(p) + ")";
  row.order = g.group.order().get_str();
  row.h2 = "-";
  row.h3 = "-";
  row.claimed_primes = std::to_string(p);
  BigInt expect = BigInt(static_cast<unsigned long>(p)) * (p * p - 1) / 2;
  row.cells.push_back({"order", g.group.order() == expect ? CellStatus::Confirmed : CellStatus::Mismatch,
                       "p(p^2-1)/2 = " + expect.get_str()});
  bool simple = is_simple(g.group);
  row.cells.push_back({"simple", simple ? CellStatus::Confirmed : CellStatus::Mismatch, simple ? "yes" : "no"});
  auto degs = psl2_p_torsion_degrees(p, 4);
  row.cells.push_back({"no-p-torsion-H3", degs.contains(4) ? CellStatus::Mismatch : CellStatus::Confirmed,
                       degs.empty() ? "no p-torsion in H^k, k <= 4" : "p-torsion in H^4"});
  row.note = "Swan/Weyl formula; first p-torsion degree " + std::to_string(p - 1);
  return row;
}

TableRow external_row(const ExternalRecord& rec) {
  TableRow row;
  row.group = rec.name;
  row.order = "-";
  row.h2 = rec.h2 ? rec.h2->to_string() : "unknown";
  row.h3 = rec.h3 ? rec.h3->to_string() : "unknown";
  row.claimed_primes = primes_to_string(rec.he3_primes);
  for (auto p : rec.he3_primes)
    row.cells.push_back({"p=" + std::to_string(p), CellStatus::ExternalOnly, "cited"});
  row.note = "not constructed [" + rec.citation + "]";
  if (!rec.h3_constraint.empty()) row.note += "; H_3 " + rec.h3_constraint + ", unusable as evidence";
  return row;
}

std::vector<std::uint64_t> table_psl2_primes() {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 7; p <= 31; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

CellStatus row_status(const TableRow& r) {
  auto has = [&](CellStatus s) {
    return std::any_of(r.cells.begin(), r.cells.end(), [&](const TableCell& c) { return c.status == s; });
  };
  if (has(CellStatus::Mismatch)) return CellStatus::Mismatch;
  if (has(CellStatus::Inconclusive)) return CellStatus::Inconclusive;
  if (has(CellStatus::ExternalOnly) || r.cells.empty()) return CellStatus::ExternalOnly;
  return CellStatus::Confirmed;
}

}  // namespace

TableReport reproduce_table(const std::string& data_dir_in, std::uint64_t seed, std::uint64_t budget) {
  const std::string data_dir = resolve_data_dir(data_dir_in);
  TableReport rep;
  rep.seed = seed;
  ExternalTable table = ExternalTable::load(external_table_path(data_dir));
  rep.data_files["sporadic_homology.txt"] = sha256_file(external_table_path(data_dir));
  for (const char* name : {"M11", "M12", "M22", "M23"}) {
    rep.rows.push_back(mathieu_row(name, data_dir, table, seed, budget));
    rep.data_files[std::string("mathieu/") + name + ".perm"] = sha256_file(mathieu_path(name, data_dir));
  }
  for (auto p : table_psl2_primes()) rep.rows.push_back(psl2_row(p));
  for (const auto& rec : table.records())
    if (!is_mathieu(rec.name)) rep.rows.push_back(external_row(rec));
  return rep;
}

TableReport reproduce_table_row(const std::string& group_in, const std::string& data_dir_in, std::uint64_t seed,
                                std::uint64_t budget) {
  const std::string data_dir = resolve_data_dir(data_dir_in);
  const std::string group = canonical_group_name(group_in);
  TableReport rep;
  rep.seed = seed;
  if (group.rfind("PSL2(", 0) == 0 && group.back() == ')') {
    std::uint64_t p = 0;
    try {
      p = std::stoull(group.substr(5, group.size() - 6));
    } catch (const std::logic_error&) {
      fail(ErrorCode::InvalidArgument, "expected PSL2(p)");
    }
    if (p < 7 || !is_prime(p)) fail(ErrorCode::InvalidArgument, "table rows exist for PSL2(p) with p >= 7 prime");
    rep.rows.push_back(psl2_row(p));
    return rep;
  }
  ExternalTable table = ExternalTable::load(external_table_path(data_dir));
  rep.data_files["sporadic_homology.txt"] = sha256_file(external_table_path(data_dir));
  if (is_mathieu(group)) {
    rep.rows.push_back(mathieu_row(group, data_dir, table, seed, budget));
    rep.data_files["mathieu/" + group + ".perm"] = sha256_file(mathieu_path(group, data_dir));
  } else if (const ExternalRecord* rec = table.find(group)) {
    rep.rows.push_back(external_row(*rec));
  } else {
    fail(ErrorCode::InvalidArgument, "no table row for '" + group_in + "'");
  }
  return rep;
}

std::string to_json(const TableReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json cells = json::array();
    for (const auto& c : row.cells) cells.push_back({{"column", c.column}, {"status", to_string(c.status)}, {"value", c.value}});
    rows.push_back({{"group", row.group},
                    {"order", row.order},
                    {"h2", row.h2},
                    {"h3", row.h3},
                    {"he3_primes_claimed", row.claimed_primes},
                    {"cells", cells},
                    {"status", to_string(row_status(row))},
                    {"note", row.note}});
  }
  json out = {{"schema", kCertificateSchema}, {"seed", r.seed}, {"data_files", r.data_files}, {"rows", rows}};
  return out.dump(2) + "\n";
}

std::string to_text(const TableReport& r) {
  // Groups as columns, quantities as rows.
  std::vector<const TableRow*> sporadic, linear;
  for (const auto& row : r.rows) (row.group.rfind("PSL2(", 0) == 0 ? linear : sporadic).push_back(&row);
  std::ostringstream os;
  auto grid = [&](const std::vector<const TableRow*>& rows, const std::vector<std::string>& labels,
                  const std::vector<std::vector<std::string>>& values) {
    std::size_t lw = 0;
    for (const auto& l : labels) lw = std::max(lw, l.size());
    std::vector<std::size_t> cw(rows.size());
    for (std::size_t c = 0; c < rows.size(); ++c) {
      cw[c] = rows[c]->group.size();
      for (const auto& v : values) cw[c] = std::max(cw[c], v[c].size());
    }
    os << std::left << std::setw(static_cast<int>(lw)) << "" << " |";
    for (std::size_t c = 0; c < rows.size(); ++c) os << " " << std::setw(static_cast<int>(cw[c])) << rows[c]->group;
    os << "\n" << std::string(lw + 2, '-');
    for (auto w : cw) os << std::string(w + 1, '-');
    os << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      os << std::setw(static_cast<int>(lw)) << labels[i] << " |";
      for (std::size_t c = 0; c < rows.size(); ++c) os << " " << std::setw(static_cast<int>(cw[c])) << values[i][c];
      os << "\n";
    }
    os << "\n";
  };
  if (!sporadic.empty()) {
    std::vector<std::vector<std::string>> v(5);
    for (const auto* row : sporadic) {
      std::vector<std::string> found;
      for (const auto& c : row->cells)
        if (c.status == CellStatus::Confirmed && c.column.rfind("p=", 0) == 0) found.push_back(c.column.substr(2));
      v[0].push_back(row->h2);
      v[1].push_back(row->h3);
      v[2].push_back(row->claimed_primes);
      v[3].push_back(row->order == "-" ? "n/a" : found.empty() ? "-" : join(found, ","));
      v[4].push_back(to_string(row_status(*row)));
    }
    grid(sporadic, {"H_2(G;Z)", "H_3(G;Z)", "He_3(p) (table)", "He_3(p) (found)", "status"}, v);
  }
  if (!linear.empty()) {
    std::vector<std::vector<std::string>> v(4);
    for (const auto* row : linear) {
      v[0].push_back(row->order);
      for (std::size_t i = 0; i < 3 && i < row->cells.size(); ++i) v[i + 1].push_back(to_string(row->cells[i].status));
    }
    grid(linear, {"order", "order formula", "simple", "no p-torsion in H_3"}, v);
  }
  for (const auto& row : r.rows) {
    os << row.group << ":";
    for (const auto& c : row.cells) os << " " << c.column << " " << to_string(c.status) << " (" << c.value << ");";
    os << "\n  " << row.note << "\n";
  }
  return os.str();
}

}  // namespace surfcert
