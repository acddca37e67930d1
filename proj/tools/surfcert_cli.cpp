// surfcert: command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "surfcert/surfcert.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;
constexpr int kExitSizeCap = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitSoftware = 70;

struct Owned {
  char* s = nullptr;
  ~Owned() { sc_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

int exit_for(sc_status s) {
  std::cerr << "error: " << sc_last_error() << "\n";
  switch (s) {
    case SC_ERR_INVALID_ARGUMENT:
    case SC_ERR_OUT_OF_RANGE:
    case SC_ERR_PARSE: return kExitUsage;
    case SC_ERR_SIZE_CAP: return kExitSizeCap;
    case SC_ERR_DATA_MISSING:
    case SC_ERR_DATA_CORRUPT: return kExitNoInput;
    default: return kExitSoftware;
  }
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

bool emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

sc_format parse_format(const std::string& f) { return f == "text" ? SC_FORMAT_TEXT : SC_FORMAT_JSON; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-theoretic certificates for surface complements"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sc_version()));

  std::string data_dir;
  std::string output;
  std::string format;
  std::uint64_t seed = 0xC0FFEE;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--data-dir", data_dir, "Data directory (overrides SURFACE_CERT_DATA)");
    sub->add_option("-o,--output", output, "Write the report here instead of stdout");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", seed, "Seed for every randomized search");
  };

  // verify
  auto* verify = app.add_subcommand("verify", "Build and check a certificate");
  sc_verify_config cfg;
  sc_verify_config_init(&cfg);
  std::string route = "heisenberg", target, knot, knot_file, mu = "z";
  verify->add_option("--route", route, "heisenberg, cyclic or twist-spin")
      ->check(CLI::IsMember({"heisenberg", "cyclic", "twist-spin"}));
  verify->add_option("--genus", cfg.genus, "Genus of the surface");
  verify->add_option("--euler", cfg.euler_number, "Self-intersection n");
  verify->add_option("--target", target, "M11, M12, M22, M23, He3 or a table group; cyclic route: PSL2 (default) or a sporadic group");
  verify->add_option("--prime", cfg.prime, "The prime p");
  verify->add_option("--mu", mu, "Meridian convention")->check(CLI::IsMember({"z", "z^-1"}));
  verify->add_option("--knot", knot, "unknot, trefoil, cinquefoil or torus:p,q");
  verify->add_option("--knot-file", knot_file, "Presentation file with 'mark mu = ...'");
  verify->add_option("-d", cfg.d, "Twist-spin divisor d >= 2");
  verify->add_option("-m", cfg.m, "Multiplier m >= 1 with n = d^2 m");
  verify->add_option("--search-budget", cfg.search_budget, "Heisenberg search trials")->check(CLI::PositiveNumber);
  verify->add_option("--coset-budget", cfg.coset_budget, "Coset enumeration limit")->check(CLI::PositiveNumber);
  common(verify);

  // homology
  auto* homology = app.add_subcommand("homology", "Integral homology of small groups");
  std::uint64_t cyclic = 0, psl2 = 0, size_cap = 16;
  std::string group, method;
  int degree = -1, k_max = 12;
  bool torsion_degrees = false;
  auto* o_cyc = homology->add_option("--cyclic", cyclic, "Z/n");
  auto* o_grp = homology->add_option("--group", group, "he3_<p>, cyclic_<n>, psl2_<p>, M11..M23");
  auto* o_psl = homology->add_option("--psl2", psl2, "PSL_2(p)");
  o_cyc->excludes(o_grp)->excludes(o_psl);
  o_grp->excludes(o_psl);
  homology->add_option("--degree", degree, "Homological degree k <= 3");
  homology->add_option("--method", method, "periodic or bar")->check(CLI::IsMember({"periodic", "bar"}));
  homology->add_option("--size-cap", size_cap, "Largest group for the bar complex")->check(CLI::PositiveNumber);
  homology->add_flag("--p-torsion-degrees", torsion_degrees, "Cohomological degrees with p-torsion (with --psl2)");
  homology->add_option("--max", k_max, "Largest degree for --p-torsion-degrees");
  common(homology);

  // table
  auto* table = app.add_subcommand("table", "Reproduce the sporadic and PSL_2 table");
  std::string scope = "desk", table_group;
  auto* o_scope = table->add_option("--scope", scope, "desk")->check(CLI::IsMember({"desk"}));
  table->add_option("--group", table_group, "A single row")->excludes(o_scope);
  common(table);

  // replay
  auto* replay = app.add_subcommand("replay", "Re-check a certificate against the data files");
  std::string cert_file;
  replay->add_option("certificate", cert_file, "Certificate JSON")->required();
  replay->add_option("--data-dir", data_dir, "Data directory");

  // present
  auto* present = app.add_subcommand("present", "Abelianization and order of a presentation file");
  std::string pres_file;
  std::uint64_t max_cosets = 1'000'000;
  present->add_option("file", pres_file, "Presentation file")->required();
  present->add_option("--max-cosets", max_cosets, "Coset enumeration limit")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (format.empty()) format = verify->parsed() ? "json" : "text";

  if (verify->parsed()) {
    cfg.route = route == "cyclic" ? SC_ROUTE_CYCLIC : route == "twist-spin" ? SC_ROUTE_TWIST_SPIN : SC_ROUTE_HEISENBERG;
    cfg.target = opt(target);
    cfg.knot = opt(knot);
    cfg.knot_file = opt(knot_file);
    cfg.mu_inverse = mu == "z^-1";
    cfg.seed = seed;
    cfg.data_dir = opt(data_dir);
    if (cfg.route == SC_ROUTE_HEISENBERG && target.empty()) {
      std::cerr << "error: the heisenberg route needs --target\n" << verify->help();
      return kExitUsage;
    }
    sc_certificate* raw = nullptr;
    if (sc_status s = sc_verify(&cfg, &raw); s != SC_OK) return exit_for(s);
    std::unique_ptr<sc_certificate, decltype(&sc_certificate_free)> cert(raw, sc_certificate_free);
    Owned doc, text;
    if (sc_status s = sc_certificate_render(cert.get(), parse_format(format), &doc.s); s != SC_OK) return exit_for(s);
    if (!emit(doc.str(), output)) return kExitSoftware;
    if (!output.empty() && output != "-" && sc_certificate_render(cert.get(), SC_FORMAT_TEXT, &text.s) == SC_OK)
      std::cout << text.str();
    switch (sc_certificate_verdict(cert.get())) {
      case SC_VERDICT_PASS: return kExitPass;
      case SC_VERDICT_FAIL: return kExitFail;
      default: return kExitInconclusive;
    }
  }

  if (homology->parsed()) {
    Owned out;
    sc_status s = SC_OK;
    if (torsion_degrees) {
      if (psl2 == 0) {
        std::cerr << "error: --p-torsion-degrees needs --psl2 P\n";
        return kExitUsage;
      }
      s = sc_psl2_torsion_degrees(psl2, k_max, &out.s);
      if (s != SC_OK) return exit_for(s);
      std::string degs = out.str();
      if (format == "text") {
        std::string body;
        for (int d : nlohmann::json::parse(degs)) body += (body.empty() ? "" : ", ") + std::to_string(d);
        std::ostringstream os;
        os << "degrees k <= " << k_max << " with " << psl2 << "-torsion in H^k(PSL2(" << psl2 << "); Z): {" << body
           << "}  [swan-weyl, certified]\n";
        degs = os.str();
      }
      return emit(degs, output) ? kExitPass : kExitSoftware;
    }
    if (degree < 0) {
      std::cerr << "error: --degree is required\n";
      return kExitUsage;
    }
    if (cyclic != 0 && method != "bar") {
      s = sc_homology_cyclic(cyclic, degree, &out.s);
    } else {
      std::string name = cyclic ? "cyclic_" + std::to_string(cyclic)
                         : psl2 ? "psl2_" + std::to_string(psl2)
                                : group;
      if (name.empty()) {
        std::cerr << "error: give --cyclic, --group or --psl2\n";
        return kExitUsage;
      }
      if (!method.empty() && method != "bar") {
        std::cerr << "error: only --method bar applies to --group and --psl2\n";
        return kExitUsage;
      }
      s = sc_homology_bar(name.c_str(), degree, size_cap, opt(data_dir), &out.s);
    }
    if (s != SC_OK) return exit_for(s);
    std::string doc = out.str();
    if (format == "text") {
      auto j = nlohmann::json::parse(doc);
      std::ostringstream os;
      os << "H_" << j["degree"].get<int>() << "(" << j["group"].get<std::string>()
         << "; Z) = " << j["structure"].get<std::string>() << "  [" << j["method"].get<std::string>()
         << (j["certified"].get<bool>() ? ", certified" : ", not certified") << "]\n";
      doc = os.str();
    }
    return emit(doc, output) ? kExitPass : kExitSoftware;
  }

  if (table->parsed()) {
    Owned out;
    sc_status s = sc_table(opt(table_group), opt(data_dir), seed, parse_format(format), &out.s);
    if (s != SC_OK) return exit_for(s);
    return emit(out.str(), output) ? kExitPass : kExitSoftware;
  }

  if (replay->parsed()) {
    std::ifstream in(cert_file, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open '" << cert_file << "'\n";
      return kExitNoInput;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    int ok = 0;
    Owned detail;
    if (sc_status s = sc_certificate_replay(ss.str().c_str(), opt(data_dir), &ok, &detail.s); s != SC_OK)
      return exit_for(s);
    std::cout << (ok ? "reproduced: " : "NOT reproduced: ") << detail.str() << "\n";
    return ok ? kExitPass : kExitFail;
  }

  if (present->parsed()) {
    std::ifstream in(pres_file, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open '" << pres_file << "'\n";
      return kExitNoInput;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    sc_presentation* raw = nullptr;
    if (sc_status s = sc_presentation_parse(ss.str().c_str(), &raw); s != SC_OK) return exit_for(s);
    std::unique_ptr<sc_presentation, decltype(&sc_presentation_free)> p(raw, sc_presentation_free);
    Owned ab;
    if (sc_status s = sc_presentation_abelianization(p.get(), &ab.s); s != SC_OK) return exit_for(s);
    int complete = 0;
    std::uint64_t order = 0;
    if (sc_status s = sc_presentation_order(p.get(), max_cosets, &complete, &order); s != SC_OK) return exit_for(s);
    std::cout << "abelianization: " << ab.str();
    if (complete)
      std::cout << "order: " << order << "\n";
    else
      std::cout << "order: not determined within " << max_cosets << " cosets\n";
    return kExitPass;
  }
  return kExitUsage;
}
