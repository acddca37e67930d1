#include "surfcert/external_table.hpp"

#include <fstream>
#include <sstream>

#include "surfcert/error.hpp"

namespace surfcert {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

BigInt parse_positive(const std::string& s) {
  BigInt v;
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || v.set_str(s, 10) != 0)
    fail(ErrorCode::Parse, "external table: bad integer '" + s + "'");
  return v;
}

}  // namespace

AbelianGroupStructure parse_cyclic_sum(const std::string& text) {
  std::vector<BigInt> orders;
  for (const auto& part : split(text, '+')) {
    BigInt v = parse_positive(part);
    // "0" is the trivial group here, not Z.
    if (v > 1) orders.push_back(v);
  }
  return AbelianGroupStructure::from_cyclic_orders(std::move(orders));
}

ExternalTable ExternalTable::parse(const std::string& text) {
  ExternalTable t;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto where = [&] { return "external table line " + std::to_string(lineno) + ": "; };
    if (t.version_ == 0) {
      if (s.rfind("version ", 0) != 0) fail(ErrorCode::Parse, where() + "expected 'version N'");
      t.version_ = std::stoi(s.substr(8));
      if (t.version_ != 1) fail(ErrorCode::Parse, where() + "unsupported version " + std::to_string(t.version_));
      continue;
    }
    auto fields = split(s, '|');
    if (fields.size() != 5) fail(ErrorCode::Parse, where() + "expected 5 '|'-separated fields");
    ExternalRecord r;
    r.name = fields[0];
    try {
      auto homology_field = [](const std::string& f, std::string* constraint) -> std::optional<AbelianGroupStructure> {
        if (f == "unknown") return std::nullopt;
        if (f.rfind("constraint:", 0) == 0) {
          if (constraint) *constraint = trim(f.substr(11));
          return std::nullopt;
        }
        return parse_cyclic_sum(f);
      };
      r.h2 = homology_field(fields[1], nullptr);
      r.h3 = homology_field(fields[2], &r.h3_constraint);
      if (fields[3] != "-")
        for (const auto& p : split(fields[3], ',')) r.he3_primes.push_back(parse_positive(p).get_ui());
    } catch (const Error& e) {
      fail(ErrorCode::Parse, where() + e.what());
    }
    r.citation = fields[4];
    if (r.name.empty() || r.citation.empty()) fail(ErrorCode::Parse, where() + "name and citation are required");
    t.records_.push_back(std::move(r));
  }
  if (t.version_ == 0) fail(ErrorCode::Parse, "external table: missing version line");
  return t;
}

ExternalTable ExternalTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::DataMissing, "cannot open external table '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const ExternalRecord* ExternalTable::find(const std::string& name) const {
  for (const auto& r : records_)
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace surfcert
