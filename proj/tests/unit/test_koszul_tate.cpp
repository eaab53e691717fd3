#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "homology_oracle.hpp"

using namespace testing;

namespace {

std::size_t antighost_count(const KTData& kt) {
  std::size_t n = 0;
  for (const auto& lvl : kt.levels) n += lvl.size();
  return n;
}

Poly gen_var(const KTData& kt, const std::string& name) { return P(kt.universe, name); }

std::set<std::string> texts(const std::vector<Poly>& ps) {
  std::set<std::string> s;
  for (const auto& p : ps) s.insert(to_text(p));
  return s;
}

void check_nilpotent_on_generators(const KTData& kt) {
  for (const auto& [v, img] : kt.images) {
    INFO(display_name(v));
    CHECK(apply_d_kt(kt, img).is_zero());
  }
}

}  // namespace

TEST_SUITE("koszul_tate") {
  TEST_CASE("base differential on antifields") {
    auto kt = koszul_tate_base(load("toy_x2").action, 0, 6);
    CHECK(apply_d_kt(kt, gen_var(kt, "x*")) == gen_var(kt, "x"));
    CHECK(apply_d_kt(kt, gen_var(kt, "y*")).is_zero());
    CHECK(apply_d_kt(kt, gen_var(kt, "x")).is_zero());
    CHECK(apply_d_kt(kt, gen_var(kt, "x*") * gen_var(kt, "y*")) == gen_var(kt, "x") * gen_var(kt, "y*"));
    CHECK(apply_d_kt(kt, gen_var(kt, "y*") * gen_var(kt, "x*")) == -gen_var(kt, "x") * gen_var(kt, "y*"));
  }

  TEST_CASE("ghosts are rejected") {
    auto l = load("toy_x2");
    auto kt = build_koszul_tate(l.action, 4, 0, 6);
    auto bv = assemble_bv(l.action, kt);
    Poly c = Poly::variable(bv.universe, bv.universe->id_of(bv.ghosts.at(0)));
    CHECK_THROWS_AS(apply_d_kt(kt, c), std::invalid_argument);
  }

  TEST_CASE("toy resolution") {
    auto kt = load_kt("toy_x2");
    REQUIRE(kt.levels.size() >= 1);
    REQUIRE(kt.levels[0].size() == 1);
    CHECK(to_text(kt.levels[0][0].image) == "y*");
    CHECK(kt.levels[0][0].name() == "C_1_1");
    CHECK(kt.top_level == 1);
    CHECK(kt.terminated_at == 2);
    CHECK(kt.strongly_regular());
    CHECK(apply_d_kt(kt, gen_var(kt, "C_1_1*")) == gen_var(kt, "y*"));
    check_nilpotent_on_generators(kt);
  }

  TEST_CASE("zero Lagrangian resolves every antifield") {
    auto kt = load_kt("zero");
    REQUIRE(kt.levels.size() >= 1);
    REQUIRE(kt.levels[0].size() == 1);
    CHECK(to_text(kt.levels[0][0].image) == "x*");
    CHECK(kt.terminated_at == 2);
  }

  TEST_CASE("systems without gauge symmetry stop at level one") {
    for (const char* name : {"freeparticle", "nogauge"}) {
      INFO(name);
      auto kt = load_kt(name);
      CHECK(antighost_count(kt) == 0);
      CHECK(kt.terminated_at == 1);
      CHECK(kt.top_level == 0);
      check_nilpotent_on_generators(kt);
    }
  }

  TEST_CASE("free particle antifield images are derivatives of the equation of motion") {
    auto kt = load_kt("freeparticle");
    CHECK(apply_d_kt(kt, gen_var(kt, "x*")) == gen_var(kt, "-m*x[2]"));
    CHECK(apply_d_kt(kt, gen_var(kt, "x*[1]")) == gen_var(kt, "-m*x[3]"));
  }

  TEST_CASE("two-dimensional Maxwell has one gauge generator") {
    auto kt = load_kt("maxwell2d");
    REQUIRE(kt.levels.size() >= 1);
    REQUIRE(kt.levels[0].size() == 1);
    CHECK(to_text(kt.levels[0][0].image) == "-A1*[1,0] - A2*[0,1]");
    CHECK(kt.terminated_at == 2);
    check_nilpotent_on_generators(kt);
  }

  TEST_CASE("a reducible finite system is inconclusive at a low level cap") {
    auto kt = load_kt("rotor3", 2);
    REQUIRE(kt.levels.size() == 2);
    CHECK(kt.levels[0].size() == 3);
    CHECK(kt.levels[1].size() == 4);
    CHECK(kt.terminated_at == 0);
    CHECK_FALSE(kt.strongly_regular());
    check_nilpotent_on_generators(kt);
  }

  TEST_CASE("image of the first differential is the EL ideal") {
    for (const char* name : {"toy_x2", "rotor3", "nogauge"}) {
      INFO(name);
      auto l = load(name);
      auto kt = koszul_tate_base(l.action, 0, 6);
      std::vector<Poly> images;
      for (const auto& [v, img] : kt.images)
        if (v.kind == VarKind::Antifield && !img.is_zero()) images.push_back(img);
      std::vector<Poly> el;
      for (const auto& p : el_ideal(l.action, 0)) el.push_back(p.embed(kt.universe));
      CHECK(texts(buchberger(images).polys()) == texts(buchberger(el).polys()));
    }
  }

  TEST_CASE("property: d_KT squares to zero on random composites") {
    Gen g(31);
    for (const char* name : {"toy_x2", "rotor3", "maxwell2d"}) {
      INFO(name);
      auto kt = load_kt(name, 2);
      for (int i = 0; i < 40; ++i) {
        Poly e = g.homogeneous(kt.universe, g.uniform(0, 1), 3, 3);
        CHECK(apply_d_kt(kt, apply_d_kt(kt, e)).is_zero());
      }
    }
  }

  TEST_CASE("property: d_KT is an odd derivation") {
    Gen g(37);
    auto kt = load_kt("rotor3", 2);
    for (int i = 0; i < 40; ++i) {
      int pa = g.uniform(0, 1);
      Poly a = g.homogeneous(kt.universe, pa, 2, 2), b = g.homogeneous(kt.universe, g.uniform(0, 1), 2, 2);
      Poly lhs = apply_d_kt(kt, a * b);
      Poly rhs = apply_d_kt(kt, a) * b + (pa ? -a : a) * apply_d_kt(kt, b);
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("oracle certifies vanishing homology") {
    for (const char* name : {"toy_x2", "freeparticle"}) {
      auto kt = load_kt(name);
      for (int k : {1, 2}) {
        INFO(name << " at -" << k);
        auto chk = oracle::kt_homology_vanishes(kt, k, 6);
        CHECK(chk.vanishes);
        CHECK(chk.chain_dimension > 0);
      }
    }
  }

  TEST_CASE("oracle detects homology left by the bare antifield complex") {
    auto kt = koszul_tate_base(load("toy_x2").action, 0, 6);
    auto chk = oracle::kt_homology_vanishes(kt, 1, 6);
    CHECK_FALSE(chk.vanishes);
    CHECK_FALSE(chk.failing_weights.empty());
  }

  TEST_CASE("level certificates are recorded") {
    auto kt = load_kt("maxwell2d");
    REQUIRE(kt.certificates.size() >= 2);
    CHECK(kt.certificates.back().vanishes);
    CHECK(kt.certificates.back().level == kt.terminated_at);
    for (const auto& c : kt.certificates) CHECK(c.degree_bound == 6);
  }

  TEST_CASE("Noether identities") {
    CHECK(noether_identities(load("toy_x2").action, 0, 6).size() == 1);
    CHECK(noether_identities(load("freeparticle").action, 4, 6).empty());
    auto m = noether_identities(load("maxwell2d").action, 3, 6);
    REQUIRE(m.size() == 1);
    CHECK(to_text(m[0].representative) == "A1*[1,0] + A2*[0,1]");
    CHECK(m[0].basis.size() == m[0].coefficients.size());
  }
}
