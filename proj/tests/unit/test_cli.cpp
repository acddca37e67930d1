#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

const std::string kCli = SURFCERT_CLI_PATH;
const std::string kData = SURFCERT_TEST_DATA_DIR;

struct Run {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / ("surfcert_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& env = {}) {
  fs::path out = scratch() / "stdout.txt";
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + kCli + "' " + args + " > '" + out.string() + "' 2>/dev/null";
  int raw = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  return r;
}

std::string dd() { return " --data-dir '" + kData + "'"; }

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run("verify --route cyclic --genus 1 --euler 7 --prime 7" + dd()).code == 0);
  CHECK(run("verify --route cyclic --genus 1 --euler 5 --prime 5" + dd()).code == 64);
  CHECK(run("verify --target He3 --prime 2" + dd()).code == 2);
  CHECK(run("verify --target J3 --prime 2" + dd()).code == 3);
  CHECK(run("verify --target M11 --prime 2" + dd()).code == 3);
  CHECK(run("verify --target M22 --prime 2 --data-dir /nonexistent").code == 66);
  CHECK(run("verify --route twist-spin --knot trefoil -d 2" + dd()).code == 0);
  CHECK(run("verify --route twist-spin --knot unknot -d 2" + dd()).code == 2);
  CHECK(run("verify --route cyclic --genus 1 --euler 10 --prime 5 --target M22" + dd()).code == 0);
  CHECK(run("verify --route bogus").code == 64);
  CHECK(run("verify --target M22").code == 64);
  CHECK(run("frobnicate").code == 64);
}

TEST_CASE("verify output formats") {
  auto j = run("verify --route cyclic --genus 1 --euler 14 --prime 7" + dd());
  REQUIRE(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["verdict"] == "pass");
  CHECK(doc["spin"]["status"] == "inconclusive");
  auto t = run("verify --route cyclic --genus 1 --euler 14 --prime 7 --format text" + dd());
  CHECK(t.out.find("verdict: pass, certified") != std::string::npos);
}

TEST_CASE("certificate file, replay and determinism") {
  fs::path a = scratch() / "a.json", b = scratch() / "b.json";
  auto r1 = run("verify --target M22 --prime 2 -o '" + a.string() + "'" + dd());
  auto r2 = run("verify --target M22 --prime 2 -o '" + b.string() + "'" + dd());
  CHECK(r1.code == 0);
  CHECK(r1.out.find("verdict: pass") != std::string::npos);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
  auto rep = run("replay '" + a.string() + "'" + dd());
  CHECK(rep.code == 0);
  CHECK(rep.out.rfind("reproduced", 0) == 0);
  CHECK(run("replay /nonexistent.json").code == 66);
}

TEST_CASE("homology subcommand") {
  auto c = run("homology --cyclic 5 --degree 3");
  CHECK(c.code == 0);
  CHECK(c.out.find("Z/5") != std::string::npos);
  auto b = run("homology --group he3_2 --degree 3 --method bar");
  CHECK(b.code == 0);
  CHECK(b.out.find("Z/2 + Z/2 + Z/4") != std::string::npos);
  CHECK(run("homology --group he3_3 --degree 3").code == 65);
  auto p = run("homology --psl2 7 --p-torsion-degrees --max 12");
  CHECK(p.code == 0);
  CHECK(p.out.find("{6, 12}") != std::string::npos);
  CHECK(run("homology --psl2 8 --p-torsion-degrees").code == 64);
  CHECK(run("homology --cyclic 5 --group he3_2 --degree 1").code == 64);
  CHECK(run("homology --cyclic 5").code == 64);
}

TEST_CASE("table subcommand") {
  auto m11 = run("table --group M11" + dd());
  CHECK(m11.code == 0);
  CHECK(m11.out.find("confirmed-absent") != std::string::npos);
  auto js = run("table --group Monster --format json" + dd());
  CHECK(js.code == 0);
  CHECK(nlohmann::json::parse(js.out)["rows"][0]["status"] == "external-only");
  CHECK(run("table --group Nope" + dd()).code == 64);
}

TEST_CASE("present subcommand") {
  auto r = run("present '" + kData + "/knots/trefoil.pres'");
  CHECK(r.code == 0);
  CHECK(r.out.find("abelianization") != std::string::npos);
  CHECK(r.out.find("not determined") != std::string::npos);
}

TEST_CASE("data directory from the environment") {
  CHECK(run("verify --target M22 --prime 2", "SURFACE_CERT_DATA=/nonexistent").code == 66);
  CHECK(run("verify --target M22 --prime 2", "SURFACE_CERT_DATA='" + kData + "'").code == 0);
}
