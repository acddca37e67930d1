#include "surfcert/surfcert.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "surfcert/constructions.hpp"
#include "surfcert/error.hpp"
#include "surfcert/pipeline.hpp"
#include "surfcert/todd_coxeter.hpp"

using namespace surfcert;
using nlohmann::json;

struct sc_certificate {
  Certificate cert;
};
struct sc_group {
  PermGroup group;
};
struct sc_presentation {
  Presentation pres;
};

namespace {

thread_local std::string g_last_error;

sc_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return SC_ERR_INVALID_ARGUMENT;
    case ErrorCode::OutOfRange: return SC_ERR_OUT_OF_RANGE;
    case ErrorCode::Parse: return SC_ERR_PARSE;
    case ErrorCode::DataMissing: return SC_ERR_DATA_MISSING;
    case ErrorCode::DataCorrupt: return SC_ERR_DATA_CORRUPT;
    case ErrorCode::SizeCapExceeded: return SC_ERR_SIZE_CAP;
    case ErrorCode::NotAHomomorphism: return SC_ERR_NOT_A_HOMOMORPHISM;
    case ErrorCode::ComplexNotExact: return SC_ERR_COMPLEX_NOT_EXACT;
    case ErrorCode::EvidenceInapplicable: return SC_ERR_EVIDENCE_INAPPLICABLE;
  }
  return SC_ERR_INTERNAL;
}

template <class F>
sc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return SC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SC_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

std::string str(const char* s) { return s ? s : ""; }

json big(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json structure_json(const AbelianGroupStructure& a) {
  json f = json::array();
  for (const auto& d : a.invariant_factors) f.push_back(big(d));
  return {{"structure", a.to_string()}, {"free_rank", a.free_rank}, {"invariant_factors", f}};
}

json homology_json(const HomologyResult& r) {
  json j = structure_json(r.structure);
  j["group"] = r.group_id;
  j["degree"] = r.degree;
  j["method"] = to_string(r.method);
  j["certified"] = r.certified;
  j["citation"] = r.citation;
  return j;
}

std::uint64_t parse_suffix(const std::string& name, const std::string& prefix) {
  std::string rest = name.substr(prefix.size());
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::InvalidArgument, "bad group name '" + name + "'");
  return std::stoull(rest);
}

PermGroup named_group(const std::string& name, const std::string& data_dir) {
  if (name.rfind("he3_", 0) == 0) return he3_mod_p(parse_suffix(name, "he3_")).group;
  if (name.rfind("cyclic_", 0) == 0) return cyclic_group(parse_suffix(name, "cyclic_"));
  if (name.rfind("psl2_", 0) == 0) return psl2(parse_suffix(name, "psl2_")).group;
  std::string m = name.rfind("mathieu_", 0) == 0 ? name.substr(8) : name;
  if (m == "M11" || m == "M12" || m == "M22" || m == "M23")
    return load_mathieu(m, data_dir.empty() ? default_data_dir() : data_dir);
  fail(ErrorCode::InvalidArgument, "unknown group '" + name + "' (expected he3_<p>, cyclic_<n>, psl2_<p> or M11..M23)");
}

}  // namespace

extern "C" {

const char* sc_version(void) { return "1.0.0"; }

const char* sc_last_error(void) { return g_last_error.c_str(); }

void sc_string_free(char* s) { std::free(s); }

sc_status sc_default_data_dir(char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup(default_data_dir());
  });
}

void sc_verify_config_init(sc_verify_config* c) {
  if (!c) return;
  *c = sc_verify_config{};
  VerifyRequest r;
  c->route = SC_ROUTE_HEISENBERG;
  c->genus = r.genus;
  c->euler_number = r.euler_number;
  c->d = r.d;
  c->m = r.m;
  c->seed = r.seed;
  c->search_budget = r.search_budget;
  c->coset_budget = r.coset_budget;
}

sc_status sc_verify(const sc_verify_config* c, sc_certificate** out) {
  return guarded([&] {
    require(c, "config");
    require(out, "out");
    *out = nullptr;
    VerifyRequest r;
    switch (c->route) {
      case SC_ROUTE_HEISENBERG: r.route = Route::Heisenberg; break;
      case SC_ROUTE_CYCLIC: r.route = Route::Cyclic; break;
      case SC_ROUTE_TWIST_SPIN: r.route = Route::TwistSpin; break;
      default: fail(ErrorCode::InvalidArgument, "unknown route");
    }
    if (c->search_budget == 0 || c->coset_budget == 0) fail(ErrorCode::InvalidArgument, "budgets must be positive");
    r.genus = c->genus;
    r.euler_number = c->euler_number;
    r.target = str(c->target);
    r.prime = c->prime;
    r.mu = c->mu_inverse ? MeridianConvention::ZInverse : MeridianConvention::Z;
    if (c->knot) r.knot = c->knot;
    r.knot_file = str(c->knot_file);
    r.d = c->d;
    r.m = c->m;
    r.seed = c->seed;
    r.search_budget = c->search_budget;
    r.coset_budget = c->coset_budget;
    r.data_dir = str(c->data_dir);
    *out = new sc_certificate{certify(r)};
  });
}

void sc_certificate_free(sc_certificate* c) { delete c; }

sc_verdict sc_certificate_verdict(const sc_certificate* c) {
  if (!c) return SC_VERDICT_INCONCLUSIVE;
  switch (c->cert.verdict) {
    case Verdict::Pass: return SC_VERDICT_PASS;
    case Verdict::Fail: return SC_VERDICT_FAIL;
    case Verdict::Inconclusive: return SC_VERDICT_INCONCLUSIVE;
    case Verdict::ExternalOnly: return SC_VERDICT_EXTERNAL_ONLY;
  }
  return SC_VERDICT_INCONCLUSIVE;
}

int sc_certificate_certified(const sc_certificate* c) { return c && c->cert.certified ? 1 : 0; }

sc_status sc_certificate_render(const sc_certificate* c, sc_format format, char** out) {
  return guarded([&] {
    require(c, "certificate");
    require(out, "out");
    *out = dup(format == SC_FORMAT_TEXT ? to_text(c->cert) : to_json(c->cert));
  });
}

sc_status sc_certificate_replay(const char* text, const char* data_dir, int* ok, char** detail) {
  return guarded([&] {
    require(text, "json");
    require(ok, "ok");
    ReplayResult r = replay_certificate(text, str(data_dir));
    *ok = r.ok ? 1 : 0;
    if (detail) *detail = dup(r.detail);
  });
}

sc_status sc_homology_cyclic(uint64_t n, int degree, char** out) {
  return guarded([&] {
    require(out, "out");
    HomologyResult r{"Z/" + std::to_string(n), degree, homology_cyclic(n, degree), HomologyMethod::Periodic, true, {}};
    *out = dup(homology_json(r).dump(2) + "\n");
  });
}

sc_status sc_homology_bar(const char* group, int degree, uint64_t size_cap, const char* data_dir, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    PermGroup g = named_group(group, str(data_dir));
    if (size_cap == 0) size_cap = kDefaultBarSizeCap;
    *out = dup(homology_json(bar_homology(g, degree, size_cap, group)).dump(2) + "\n");
  });
}

sc_status sc_psl2_torsion_degrees(uint64_t p, int k_max, char** out) {
  return guarded([&] {
    require(out, "out");
    json j = psl2_p_torsion_degrees(p, k_max);
    *out = dup(j.dump() + "\n");
  });
}

sc_status sc_table(const char* group, const char* data_dir, uint64_t seed, sc_format format, char** out) {
  return guarded([&] {
    require(out, "out");
    TableReport r = group ? reproduce_table_row(group, str(data_dir), seed) : reproduce_table(str(data_dir), seed);
    *out = dup(format == SC_FORMAT_TEXT ? to_text(r) : to_json(r));
  });
}

sc_status sc_group_create(const char* name, const char* data_dir, sc_group** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new sc_group{named_group(name, str(data_dir))};
  });
}

void sc_group_free(sc_group* g) { delete g; }

sc_status sc_group_order(const sc_group* g, char** out) {
  return guarded([&] {
    require(g, "group");
    require(out, "out");
    *out = dup(g->group.order().get_str());
  });
}

sc_status sc_group_degree(const sc_group* g, size_t* out) {
  return guarded([&] {
    require(g, "group");
    require(out, "out");
    *out = g->group.degree();
  });
}

sc_status sc_group_is_simple(const sc_group* g, int* out) {
  return guarded([&] {
    require(g, "group");
    require(out, "out");
    *out = is_simple(g->group) ? 1 : 0;
  });
}

sc_status sc_group_find_heisenberg(const sc_group* g, uint64_t p, uint64_t seed, uint64_t budget, int* found,
                                   char** description) {
  return guarded([&] {
    require(g, "group");
    require(found, "found");
    HeisenbergSearch s = find_heisenberg_subgroup(g->group, p, seed, budget);
    std::string d;
    if (const auto* w = std::get_if<HeisenbergWitness>(&s)) {
      *found = 1;
      d = "a = " + w->a.to_cycle_string() + ", b = " + w->b.to_cycle_string();
    } else if (const auto* e = std::get_if<HeisenbergExcluded>(&s)) {
      *found = -1;
      d = e->reason;
    } else {
      *found = 0;
      d = "not found after " + std::to_string(std::get<HeisenbergNotFound>(s).trials) + " trials";
    }
    if (description) *description = dup(d);
  });
}

sc_status sc_presentation_parse(const char* text, sc_presentation** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new sc_presentation{parse_presentation(text)};
  });
}

sc_status sc_presentation_circle_bundle(uint32_t genus, int64_t euler_number, int mu_inverse, sc_presentation** out) {
  return guarded([&] {
    require(out, "out");
    *out = new sc_presentation{circle_bundle_pi1(
        {genus, euler_number}, mu_inverse ? MeridianConvention::ZInverse : MeridianConvention::Z)};
  });
}

void sc_presentation_free(sc_presentation* p) { delete p; }

sc_status sc_presentation_serialize(const sc_presentation* p, char** out) {
  return guarded([&] {
    require(p, "presentation");
    require(out, "out");
    *out = dup(serialize_presentation(p->pres));
  });
}

sc_status sc_presentation_abelianization(const sc_presentation* p, char** out) {
  return guarded([&] {
    require(p, "presentation");
    require(out, "out");
    Abelianization ab = abelianization(p->pres);
    json j = structure_json(ab.group);
    json marks = json::object();
    for (const auto& [name, e] : ab.marked) {
      json t = json::array(), f = json::array();
      for (const auto& v : e.torsion) t.push_back(big(v));
      for (const auto& v : e.free) f.push_back(big(v));
      marks[name] = {{"torsion", t}, {"free", f}, {"order", big(e.order(ab.group))},
                     {"generates_torsion", generates_torsion(ab.group, e)}};
    }
    j["marks"] = marks;
    *out = dup(j.dump(2) + "\n");
  });
}

sc_status sc_presentation_order(const sc_presentation* p, uint64_t max_cosets, int* complete, uint64_t* order) {
  return guarded([&] {
    require(p, "presentation");
    require(complete, "complete");
    require(order, "order");
    if (max_cosets == 0) fail(ErrorCode::InvalidArgument, "max_cosets must be positive");
    ToddCoxeterResult r = todd_coxeter(p->pres, max_cosets);
    *complete = r.complete() ? 1 : 0;
    *order = r.order;
  });
}

}  // extern "C"
