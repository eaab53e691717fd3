#include <doctest.h>

#include "helpers.hpp"

using namespace testing;

namespace {

JetRingSpec ring(int n, std::vector<std::string> fields, int order, std::vector<std::string> params = {}) {
  JetRingSpec r;
  r.base_dim = n;
  for (auto& f : fields) r.fields.push_back({f, 0});
  r.parameters = std::move(params);
  r.max_jet_order = order;
  return r.canonical();
}

std::vector<VarId> interior(const UniversePtr& u, int max_order) {
  std::vector<VarId> out;
  for (VarId id = 0; id < u->size(); ++id)
    if (u->var(id).kind == VarKind::Field && order_of(u->var(id).jet) <= max_order) out.push_back(id);
  return out;
}

}  // namespace

TEST_SUITE("jet_ring") {
  TEST_CASE("universe contents") {
    auto u = jet_universe(ring(2, {"x"}, 2));
    CHECK(u->size() == 2 + 6);
    CHECK(u->coordinate(0).has_value());
    auto f = jet_universe(ring(0, {"x", "y"}, 0));
    CHECK(f->size() == 2);
    CHECK(f->finite_mode());
  }

  TEST_CASE("total derivative") {
    auto u = jet_universe(ring(1, {"x"}, 4));
    CHECK(total_derivative(0, P(u, "x")) == P(u, "x[1]"));
    CHECK(total_derivative(0, P(u, "t")) == P(u, "1"));
    CHECK(total_derivative(0, P(u, "x*x[1]")) == P(u, "x[1]^2 + x*x[2]"));
    CHECK(total_derivative(0, P(u, "t^2*x")) == P(u, "2*t*x + t^2*x[1]"));
  }

  TEST_CASE("parameters are constants") {
    auto u = jet_universe(ring(1, {"x"}, 3, {"m"}));
    CHECK(total_derivative(0, P(u, "m*x")) == P(u, "m*x[1]"));
  }

  TEST_CASE("overflow names the variable") {
    auto u = jet_universe(ring(1, {"x"}, 2));
    try {
      total_derivative(0, P(u, "x[2]"));
      FAIL("expected overflow");
    } catch (const JetOverflowError& e) {
      CHECK(e.variable() == "x[3]");
    }
  }

  TEST_CASE("finite mode has no total derivative") {
    auto u = jet_universe(ring(0, {"x"}, 0));
    CHECK_THROWS(total_derivative(0, P(u, "x")));
  }

  TEST_CASE("multi derivatives") {
    auto u1 = jet_universe(ring(1, {"x"}, 4));
    CHECK(apply_multi_derivative({2}, P(u1, "x")) == P(u1, "x[2]"));
    Poly p = P(u1, "x*x[1]^2 + 3");
    CHECK(apply_multi_derivative({0}, p) == p);
    auto u2 = jet_universe(ring(2, {"x"}, 3));
    CHECK(apply_multi_derivative({1, 1}, P(u2, "x")) == P(u2, "x[1,1]"));
    Poly q = P(u2, "x*x[1,0]");
    CHECK(apply_multi_derivative({1, 1}, q) == total_derivative(0, total_derivative(1, q)));
  }

  TEST_CASE("prolongation") {
    auto u = jet_universe(ring(1, {"x"}, 4));
    CHECK(prolong({P(u, "x[2]")}, 1) == std::vector<Poly>{P(u, "x[2]"), P(u, "x[3]")});
    CHECK(prolong({P(u, "x*x[1]")}, 0) == std::vector<Poly>{P(u, "x*x[1]")});
    CHECK(prolong({P(u, "x[1]*x")}, 1) == std::vector<Poly>{P(u, "x[1]*x"), P(u, "x[2]*x + x[1]^2")});
  }

  TEST_CASE("jet order") {
    auto u = jet_universe(ring(2, {"x", "y"}, 3));
    CHECK(jet_order(P(u, "x*y[1,1] + x[0,1]")) == 2);
    CHECK(jet_order(P(u, "5")) == 0);
  }

  TEST_CASE("property: D_i is an even derivation") {
    for (int n : {1, 2}) {
      auto u = jet_universe(ring(n, {"u", "v"}, 3));
      auto pool = interior(u, 2);
      Gen g(100 + n);
      for (int i = 0; i < 100; ++i) {
        Poly p = g.poly(u, pool, 3, 3), q = g.poly(u, pool, 3, 3);
        int d = g.uniform(0, n - 1);
        CHECK(total_derivative(d, p * q) == total_derivative(d, p) * q + p * total_derivative(d, q));
      }
    }
  }

  TEST_CASE("property: total derivatives commute") {
    auto u = jet_universe(ring(2, {"u", "v"}, 4));
    auto pool = interior(u, 2);
    Gen g(5);
    for (int i = 0; i < 100; ++i) {
      Poly p = g.poly(u, pool, 4, 3);
      CHECK(total_derivative(0, total_derivative(1, p)) == total_derivative(1, total_derivative(0, p)));
    }
  }

  TEST_CASE("odd fields obey the Koszul rule under D") {
    JetRingSpec r;
    r.base_dim = 1;
    r.fields = {{"psi", 1}, {"chi", 1}};
    r.max_jet_order = 3;
    auto u = jet_universe(r.canonical());
    Poly p = P(u, "psi*chi");
    CHECK(total_derivative(0, p) == P(u, "psi[1]*chi + psi*chi[1]"));
    CHECK((P(u, "psi") * P(u, "psi")).is_zero());
  }
}
