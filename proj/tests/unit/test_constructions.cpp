#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "surfcert/constructions.hpp"
#include "surfcert/error.hpp"
#include "surfcert/todd_coxeter.hpp"

using namespace surfcert;

namespace {

std::string data_dir() { return SURFCERT_TEST_DATA_DIR; }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::InvalidArgument;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("surfcert_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path / "mathieu");
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("circle bundle abelianization") {
  // H_1 = Z^{2g} + Z/|n|, with mu generating the torsion.
  for (std::uint32_t g = 0; g <= 3; ++g)
    for (std::int64_t n = -9; n <= 9; ++n) {
      CAPTURE(g);
      CAPTURE(n);
      if (n == 0) {
        CHECK_THROWS_AS(circle_bundle_pi1({g, n}), Error);
        continue;
      }
      for (auto conv : {MeridianConvention::Z, MeridianConvention::ZInverse}) {
        auto ab = abelianization(circle_bundle_pi1({g, n}, conv));
        std::uint64_t an = static_cast<std::uint64_t>(n < 0 ? -n : n);
        CHECK(ab.group.free_rank == 2 * g);
        if (an >= 2) {
          CHECK(ab.group.invariant_factors == std::vector<BigInt>{static_cast<unsigned long>(an)});
          CHECK(generates_torsion(ab.group, ab.marked.at("mu")));
        } else {
          CHECK(ab.group.invariant_factors.empty());
        }
      }
    }
}

TEST_CASE("circle bundle presentation shape") {
  auto p = circle_bundle_pi1({2, 3});
  CHECK(p.names() == std::vector<std::string>{"a1", "b1", "a2", "b2", "z"});
  CHECK(p.relators().size() == 5);
  CHECK(p.mark("mu") == Word::generator(4));
  CHECK(circle_bundle_pi1({1, 1}, MeridianConvention::ZInverse).mark("mu") == Word::generator(2, -1));
}

TEST_CASE("He3 multiplication law, exhaustively mod small p") {
  for (std::uint64_t p : {2, 3, 5}) {
    auto h = he3_mod_p(p);
    CHECK(h.group.order() == p * p * p);
    std::int64_t ip = static_cast<std::int64_t>(p);
    for (std::int64_t x1 = 0; x1 < ip; ++x1)
      for (std::int64_t y1 = 0; y1 < ip; ++y1)
        for (std::int64_t t1 = 0; t1 < ip; ++t1)
          for (std::int64_t x2 = 0; x2 < ip; ++x2)
            for (std::int64_t y2 = 0; y2 < ip; ++y2)
              for (std::int64_t t2 = 0; t2 < ip; ++t2) {
                He3Element u{x1, y1, t1}, v{x2, y2, t2};
                auto uv = (u * v).reduce(p);
                CHECK(uv == He3Element{(x1 + x2) % ip, (y1 + y2) % ip, (t1 + t2 + x1 * y2) % ip});
                // Right-regular action: products of points map to products of permutations.
                CHECK(h.element(u) * h.element(v) == h.element(u * v));
              }
    CHECK(h.z() == h.a() * h.b() * h.a().inverse() * h.b().inverse());
  }
}

TEST_CASE("He3 presentations and the surjection") {
  auto p = he3_integer_presentation();
  auto images = heisenberg_surjection({1, 1});
  std::vector<He3Element> abz{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(check_hom<He3Element>(p, abz, He3Element{}).ok);
  for (std::uint32_t g = 1; g <= 3; ++g)
    for (std::int64_t n : {1, -1}) {
      auto spec = CircleBundleSpec{g, n};
      auto im = heisenberg_surjection(spec);
      CHECK(check_hom<He3Element>(circle_bundle_pi1(spec), im, He3Element{}).ok);
      CHECK(im.back() == He3Element{0, 0, n});
    }
  CHECK(images.size() == 3);
  CHECK_THROWS_AS(heisenberg_surjection({1, 2}), Error);
  CHECK_THROWS_AS(heisenberg_surjection({0, 1}), Error);
  CHECK(todd_coxeter(he3_mod_p_presentation(5)).order == 125);
}

TEST_CASE("cyclic quotient") {
  auto spec = CircleBundleSpec{2, 14};
  auto im = cyclic_quotient(spec, 14);
  CHECK(check_hom<ZmodElement>(circle_bundle_pi1(spec), im, ZmodElement{14, 0}).ok);
  CHECK(im.back() == ZmodElement{14, 1});
  CHECK_THROWS_AS(cyclic_quotient(spec, 7), Error);
  CHECK(cyclic_group(9).order() == 9);
}

TEST_CASE("PSL2 orders and generators") {
  for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
    CAPTURE(p);
    auto g = psl2(p);
    CHECK(g.group.order() == p * (p * p - 1) / 2);
    CHECK(element_order(g.unipotent) == p);
    CHECK(element_order(g.inversion) == 2);
    CHECK(element_order(g.torus) == (p - 1) / 2);
    CHECK(g.unipotent[static_cast<Point>(p)] == p);
  }
  CHECK_THROWS_AS(psl2(9), Error);
  CHECK_THROWS_AS(psl2(3), Error);
}

TEST_CASE("Mathieu groups load with their orders") {
  CHECK(load_mathieu("M11", data_dir()).order() == 7920);
  CHECK(load_mathieu("M12", data_dir()).order() == 95040);
  CHECK(load_mathieu("M22", data_dir()).order() == 443520);
  CHECK(load_mathieu("M23", data_dir()).order() == 10200960);
  CHECK(code_of([] { load_mathieu("M24", data_dir()); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("missing and corrupt data files") {
  TempDir tmp;
  CHECK(code_of([&] { load_mathieu("M11", tmp.path.string()); }) == ErrorCode::DataMissing);
  {
    std::ofstream out(tmp.path / "mathieu" / "M11.perm");
    out << "name M11\ndegree 11\norder 7921\n(1,2,3,4,5,6,7,8,9,10,11)\n(3,7,11,8)(4,10,5,6)\n";
  }
  CHECK(code_of([&] { load_mathieu("M11", tmp.path.string()); }) == ErrorCode::DataCorrupt);
  {
    std::ofstream out(tmp.path / "mathieu" / "M11.perm");
    out << "name M11\ndegree 11\norder 7920\n(1,2,3,4,5,6,7,8,9,10,12)\n";
  }
  CHECK(code_of([&] { load_mathieu("M11", tmp.path.string()); }) == ErrorCode::DataCorrupt);
}

TEST_CASE("perm group file parsing") {
  auto f = parse_perm_group_file("# c\nname S3\ndegree 3\norder 6\n(1,2)\n(1,2,3)\n");
  CHECK(f.name == "S3");
  CHECK(f.degree == 3);
  CHECK(f.declared_order == 6);
  CHECK(f.generators.size() == 2);
  CHECK_THROWS_AS(parse_perm_group_file("degree 3\n(1,2)\n"), Error);
}

TEST_CASE("knot groups") {
  for (const char* name : {"unknot", "trefoil", "cinquefoil", "torus:3,4", "torus:2,7"}) {
    CAPTURE(name);
    auto k = builtin_knot(name);
    auto ab = abelianization(k.presentation);
    CHECK(ab.group.to_string() == "Z");
    CHECK(generates_group(ab.group, ab.marked.at("mu")));
    for (std::int64_t d = 2; d <= 5; ++d) {
      auto q = abelianization(twist_spin_quotient(k, d));
      CHECK(q.group == AbelianGroupStructure::from_cyclic_orders({d}));
    }
  }
  CHECK_THROWS_AS(builtin_knot("figure-eight-ish"), Error);
  CHECK_THROWS_AS(torus_knot_group(2, 4), Error);
  Presentation bad(2, {}, {{"mu", Word::generator(0)}});
  CHECK_THROWS_AS(make_knot("free", bad), Error);
}

TEST_CASE("twist-spin quotient orders") {
  CHECK(todd_coxeter(twist_spin_quotient(builtin_knot("trefoil"), 2)).order == 6);
  CHECK(todd_coxeter(twist_spin_quotient(builtin_knot("trefoil"), 3)).order == 24);
  CHECK(todd_coxeter(twist_spin_quotient(builtin_knot("trefoil"), 4)).order == 96);
  CHECK(todd_coxeter(twist_spin_quotient(builtin_knot("trefoil"), 5)).order == 600);
  CHECK(todd_coxeter(twist_spin_quotient(builtin_knot("unknot"), 3)).order == 3);
}
