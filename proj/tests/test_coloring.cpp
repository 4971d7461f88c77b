#include <set>

#include "doctest.h"

#include "corpus.hpp"
#include "ribbonrep/coloring.hpp"

using namespace ribbonrep;
using ribbonrep::testing::load;

namespace {

// Independent oracle: filter every tuple in {0..k}^E through a direct
// transcription of the quantum Clebsch-Gordan conditions.
std::vector<Coloring> brute_force_colorings(const RibbonGraph& g) {
  const int k = g.level();
  const int ne = g.edge_count();
  std::vector<Coloring> out;
  Coloring c(ne, 0);
  while (true) {
    bool ok = true;
    for (int e = 0; e < ne && ok; ++e)
      if (g.is_boundary_edge(e) && c[e] != g.boundary_color(e)) ok = false;
    for (int v = 0; v < g.vertex_count() && ok; ++v) {
      if (g.vertices()[v].half_edges.size() != 3) continue;
      auto s = g.vertex_edge_slots(v);
      int a = c[s[0]], b = c[s[1]], d = c[s[2]];
      if ((a + b + d) % 2 != 0) ok = false;
      else if (d < std::abs(a - b) || d > a + b) ok = false;
      else if (a + b + d > 2 * k) ok = false;
    }
    if (ok) out.push_back(c);
    int e = ne - 1;
    while (e >= 0 && c[e] == k) c[e--] = 0;
    if (e < 0) break;
    ++c[e];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("admissibility predicate") {
  CHECK(is_admissible(0, 0, 0, 0));
  CHECK(is_admissible(0, 0, 0, 5));
  CHECK_FALSE(is_admissible(1, 1, 1, 2));  // odd sum
  CHECK_FALSE(is_admissible(1, 1, 4, 4));  // triangle violated
  CHECK_FALSE(is_admissible(2, 2, 2, 2));  // sum > 2k
  // (k, a, c) admissible iff c = k - a
  for (int k = 0; k <= 8; ++k)
    for (int a = 0; a <= k; ++a)
      for (int c = 0; c <= k; ++c)
        CHECK(is_admissible(k, a, c, k) == (c == k - a));
}

TEST_CASE("enumeration matches brute force on the corpus") {
  for (const auto& name : testing::corpus_names()) {
    for (int k = 0; k <= 3; ++k) {
      if (name == "genus1_b1" && k < 2) continue;
      if (name == "genus1_b1_odd" && k < 1) continue;
      if (name == "genus2_b2" && k < 2) continue;
      if (name == "example61" && k > 1) continue;  // (k+1)^18 tuples
      CAPTURE(name);
      CAPTURE(k);
      auto g = load(name, k);
      CHECK(enumerate_colorings(g) == brute_force_colorings(g));
    }
  }
}

TEST_CASE("theta colorings at k=1") {
  auto g = load("theta", 1);
  auto cols = enumerate_colorings(g);
  std::vector<Coloring> expected = {
      {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  CHECK(cols == expected);
}

TEST_CASE("dumbbell count at k=2") {
  auto g = load("dumbbell", 2);
  CHECK(enumerate_colorings(g).size() == 10);
  CHECK(enumerate_colorings(load("theta", 2)).size() == 10);
}

TEST_CASE("cycle action") {
  auto g = load("theta");
  auto lam = g.cycle_from_edge_ids({1, 2});
  auto cols = enumerate_colorings(g);
  for (const auto& j : cols) {
    auto lj = act_cycle(g, lam, j);
    CHECK(coloring_admissible(g, lj));
    CHECK(act_cycle(g, lam, lj) == j);  // involution
  }
  // group action: (l1 + l2) . j = l1 . (l2 . j)
  auto l1 = g.cycle_from_edge_ids({1, 2});
  auto l2 = g.cycle_from_edge_ids({2, 3});
  auto l12 = g.cycle_sum(l1, l2);
  for (const auto& j : cols)
    CHECK(act_cycle(g, l12, j) == act_cycle(g, l1, act_cycle(g, l2, j)));
  // zero cycle fixes everything; k/2 colors are fixed points
  for (const auto& j : cols)
    if (j[0] == 1 && j[1] == 1) CHECK(act_cycle(g, l1, j) == j);
}

TEST_CASE("meridian exponent") {
  auto g = load("theta", 4);
  auto cols = enumerate_colorings(g);
  auto mu0 = g.meridian_canonicalize({0, 0, 0});
  auto mu = g.meridian_from_edge_ids({2, 3});
  for (const auto& j : cols) {
    CHECK(meridian_exponent(mu0, j) == 0);
    CHECK(meridian_exponent(mu, j) == j[1] + j[2]);
  }
  // parity shift law: j_mu(lam . j) = k (mu . lam) + j_mu(j) mod 2
  auto lam = g.cycle_from_edge_ids({1, 2});
  int k = g.level();
  for (const auto& j : cols) {
    int lhs = meridian_exponent(mu, act_cycle(g, lam, j)) % 2;
    int rhs = (k * g.geometric_intersection(mu, lam) + meridian_exponent(mu, j)) % 2;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("classification on theta and dumbbell") {
  auto theta = load("theta");
  auto lam = theta.cycle_from_edge_ids({1, 2});
  auto cls = classify_edges(theta, lam);
  CHECK(cls.on_cycle == std::vector<int>{0, 1});
  CHECK(cls.internal == std::vector<int>{2});
  CHECK(cls.external.empty());
  REQUIRE(cls.walks.size() == 1);
  CHECK(cls.walks[0].size() == 2);
  for (const auto& s : cls.walks[0]) CHECK(s.third_edge == 2);

  auto db = load("dumbbell");
  auto loop = db.cycle_from_edge_ids({1});
  auto cls2 = classify_edges(db, loop);
  CHECK(cls2.on_cycle == std::vector<int>{0});
  CHECK(cls2.external == std::vector<int>{1});  // the bar
  CHECK(cls2.internal.empty());
  REQUIRE(cls2.walks.size() == 1);
  CHECK(cls2.walks[0].size() == 1);

  CHECK_THROWS_AS(
      classify_edges(theta, CycleClass{BitVec(3, 0)}), EmptyCycle);
}

TEST_CASE("classification on the figure graph") {
  auto ex = load("example61");
  auto lam = ex.cycle_from_edge_ids({4, 5, 7, 8, 9});
  auto cls = classify_edges(ex, lam);
  auto ids = [&](const std::vector<int>& idx) {
    std::vector<int> out;
    for (int e : idx) out.push_back(ex.edge_id(e));
    return out;
  };
  CHECK(ids(cls.on_cycle) == std::vector<int>{4, 5, 7, 8, 9});
  CHECK(ids(cls.internal) == std::vector<int>{6});
  CHECK(ids(cls.external) == std::vector<int>{1, 10, 11});
  REQUIRE(cls.walks.size() == 1);
  CHECK(cls.walks[0].size() == 5);
}

TEST_CASE("multi-component cycles") {
  auto db = load("dumbbell");
  auto both = db.cycle_from_edge_ids({1, 3});
  auto cls = classify_edges(db, both);
  CHECK(cls.walks.size() == 2);
  CHECK(cls.on_cycle == std::vector<int>{0, 2});
  CHECK(cls.external.empty());
  CHECK(cls.internal == std::vector<int>{1});  // bar has both ends on the cycle
}

TEST_CASE("fixed colorings") {
  auto theta = load("theta", 2);
  auto all = enumerate_colorings(theta);
  auto lam = theta.cycle_from_edge_ids({1, 2});
  auto fixed = fixed_colorings(theta, lam, all);
  REQUIRE(fixed.size() == 2);
  CHECK(fixed[0] == Coloring{1, 1, 0});
  CHECK(fixed[1] == Coloring{1, 1, 2});

  // odd k: no fixed colorings for nonzero lambda
  auto theta3 = load("theta", 3);
  auto all3 = enumerate_colorings(theta3);
  auto lam3 = theta3.cycle_from_edge_ids({1, 2});
  CHECK(fixed_colorings(theta3, lam3, all3).empty());
}

TEST_CASE("decomposition on theta") {
  auto theta = load("theta", 2);
  auto lam = theta.cycle_from_edge_ids({1, 2});
  auto mu0 = theta.meridian_canonicalize({0, 0, 0});
  auto dec = decompose(theta, lam, mu0);
  CHECK(dec.m == 0);
  CHECK(dec.n1 == 0);
  CHECK(dec.n2 == 0);
  CHECK(dec.g1 == 2);
  CHECK(dec.g2 == 1);  // empty piece, formal genus from the edge count
  CHECK(dec.g1 + dec.g2 + dec.m - 1 == theta.genus());
  CHECK(dec.m_prime == 0);
  CHECK(count_lambda_fixed(theta, dec, {}) == 2);
}

TEST_CASE("decomposition on dumbbell loops") {
  auto db = load("dumbbell", 2);
  auto both = db.cycle_from_edge_ids({1, 3});
  auto mu0 = db.meridian_canonicalize({0, 0, 0});
  auto dec = decompose(db, both, mu0);
  CHECK(dec.m == 0);
  CHECK(dec.m_prime == 0);
  auto prime_slots = std::vector<int>{};
  CHECK(dec.gamma_prime_mu.count_colorings(2, prime_slots) ==
        dec.gamma_prime.count_colorings(2, prime_slots));
  CHECK(dec.g1 + dec.g2 + dec.m - 1 == db.genus());
}

TEST_CASE("decomposition matches the worked example") {
  auto ex = load("example61");
  auto lam = ex.cycle_from_edge_ids({4, 5, 7, 8, 9});
  // the fixed representative written in the example, not its canonical form
  auto dec = decompose(ex, lam, support_bits(ex, {6, 8, 15}));
  auto ids = [&](const std::vector<int>& idx) {
    std::vector<int> out;
    for (int e : idx) out.push_back(ex.edge_id(e));
    return out;
  };
  CHECK(ids(dec.ext_boundary) == std::vector<int>{1});      // E^u_lambda
  CHECK(ids(dec.ext_trivalent) == std::vector<int>{10, 11}); // E^t_lambda
  CHECK(ids(dec.other_boundary) == std::vector<int>{2, 3});
  CHECK(ids(dec.cut_edges) == std::vector<int>{15});  // E^u_mu = {f15, f15}
  CHECK(dec.m == 2);
  CHECK(dec.m_prime == 1);
  CHECK(dec.g1 == 2);
  CHECK(dec.g2 == 2);
  CHECK(dec.g1 + dec.g2 + dec.m - 1 == ex.genus());
  // mu(lambda) by the defining formula keeps e6 (internal) and e15
  BitVec expect(ex.edge_count(), 0);
  expect[ex.edge_index(6)] = 1;
  expect[ex.edge_index(15)] = 1;
  CHECK(dec.mu_lambda_raw == expect);
}

TEST_CASE("decomposition numerics across the corpus") {
  for (const auto& name : testing::corpus_names()) {
    CAPTURE(name);
    auto g = load(name);
    auto basis = g.cycle_basis();
    std::vector<MeridianClass> mus;
    mus.push_back(g.meridian_canonicalize(
        std::vector<long long>(g.edge_count(), 0)));
    for (int e = 0; e < g.edge_count(); ++e)
      mus.push_back(g.meridian_from_edge_ids({g.edge_id(e)}));
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = a; b < basis.size(); ++b) {
        auto lam = g.cycle_sum(basis[a], basis[b]);
        if (lam.is_zero()) continue;
        for (const auto& mu : mus) {
          auto dec = decompose(g, lam, mu);
          CHECK(dec.g1 + dec.g2 + dec.m - 1 == g.genus());
          CHECK(dec.m == static_cast<int>(dec.ext_trivalent.size()));
        }
      }
    }
  }
}
