#include <doctest.h>

#include "oracles/oracles.hpp"
#include "support.hpp"

#include <random>

using namespace fanodeg;
using namespace fanodeg::mutation;
using fixtures::poly;
using lattice::Polygon;

TEST_CASE("content of cyclic quotient edges matches the shear count") {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{6, 5}, {4, 1}, {3, 1}, {8, 3}, {3, 2}, {9, 2}, {12, 7}}) {
    auto e = standard_form_for_type(n, q);
    auto c = edge_singularity_content(e);
    CAPTURE(n);
    CAPTURE(q);
    CHECK(c.m == oracle::edge_content_by_shear(n, q));
    CHECK(c.m == cone_ray_content(dual_corner_cone_ray({n, -q}, {0, 1})));
    CHECK(c.m * e.h + c.residual_width == e.theta);
  }
  auto a5 = edge_singularity_content(standard_form_for_type(6, 5));
  CHECK(a5.m == 6);
  CHECK_FALSE(a5.residual_type.has_value());
  auto r31 = edge_singularity_content(standard_form_for_type(3, 1));
  CHECK(r31.m == 0);
  REQUIRE(r31.residual_type.has_value());
  CHECK(*r31.residual_type == ConeType{3, 1});
  CHECK(edge_singularity_content(standard_form_for_type(8, 3)).m == 2);
}

TEST_CASE("content of random edges matches the shear count") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> nd(2, 60);
  for (int trial = 0; trial < 60; ++trial) {
    int n = nd(rng);
    std::uniform_int_distribution<int> qd(1, n - 1);
    int q = qd(rng);
    if (gcd(n, q) != 1) continue;
    CHECK(edge_singularity_content(standard_form_for_type(n, q)).m == oracle::edge_content_by_shear(n, q));
  }
}

TEST_CASE("corner cone contents") {
  CHECK(cone_ray_content(make_cone_ray({-1, 0}, {-1, 1}, {-2, 1})) == 1);
  // A_2 edge at height one: (1,-1) -> (2,1) has lattice length 3.
  CHECK(cone_ray_content(dual_corner_cone_ray({-1, -1}, {2, -1})) == 3);
  CHECK_THROWS_AS(make_cone_ray({1, 0}, {0, 1}, {-1, -1}), DomainError);
}

TEST_CASE("baskets of the reference polygons") {
  auto b = singularity_basket(fixtures::p3511_fan());
  REQUIRE(b.size() == 3);
  for (const auto& e : b) {
    CHECK(e.content.m == 0);
    CHECK(e.content.residual_type.has_value());
  }
  CHECK(is_qg_rigid(fixtures::p3511_fan()));

  auto p2 = singularity_basket(fixtures::p2_fan());
  for (const auto& e : p2) CHECK(e.content.m == 1);
  CHECK(total_content(p2) == 3);
  CHECK_FALSE(is_qg_rigid(fixtures::p2_fan()));

  // X6 fan polygon: the A_5 edge carries all six singularities.
  Polygon x6 = fixtures::x6_fan();
  REQUIRE(is_fano(x6));
  auto bx = singularity_basket(x6);
  int residual = 0;
  Int total = 0;
  for (const auto& e : bx) {
    if (e.content.residual_type) ++residual;
    total += e.content.m;
  }
  CHECK(total == 6);
  CHECK(residual == 2);
  CHECK_FALSE(is_qg_rigid(x6));
  CHECK_FALSE(is_fano(fixtures::x6_q()));
}

TEST_CASE("cover numerology") {
  auto c = canonical_cover_data(6, 5);
  CHECK((c.p == 6 && c.w == 6 && c.r == 1 && c.a == 1 && c.m == 6 && c.w0 == 0));
  c = canonical_cover_data(4, 1);
  CHECK((c.p == 2 && c.w == 2 && c.r == 2 && c.a == 1 && c.m == 1 && c.w0 == 0));
  c = canonical_cover_data(3, 1);
  CHECK((c.p == 2 && c.w == 1 && c.r == 3 && c.a == 2 && c.m == 0 && c.w0 == 1));
  CHECK_THROWS_AS(canonical_cover_data(4, 2), DomainError);
}

TEST_CASE("cover m equals edge content") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> nd(2, 200);
  int checked = 0;
  while (checked < 40) {
    int n = nd(rng);
    std::uniform_int_distribution<int> qd(1, n - 1);
    int q = qd(rng);
    if (gcd(n, q) != 1) continue;
    ++checked;
    CHECK(canonical_cover_data(n, q).m == edge_singularity_content(standard_form_for_type(n, q)).m);
  }
}

TEST_CASE("singular points of the local family") {
  auto cr = make_cone_ray({-1, 0}, {-1, 1}, {-2, 1});
  CHECK_THROWS_AS(family_singular_points(cr, 2, 1), DomainError);
  auto one = family_singular_points(cr, 1, 1);
  CHECK(one.points == std::vector<lattice::Point>{{-2, 1}});
  auto a2 = dual_corner_cone_ray({-1, -1}, {2, -1});
  auto f = family_singular_points(a2, 2, 1);
  REQUIRE(f.points.size() == 2);
  CHECK(f.points[1] == Rat(2) * f.points[0]);
  auto flat = family_singular_points(a2, 2, 0);
  CHECK(flat.apex);
  CHECK(flat.points.empty());
  CHECK(family_singular_points(a2, 0, 1).points.empty());
}

TEST_CASE("mutation of the P2 dual at a corner") {
  Polygon q = fixtures::p2_dual();
  REQUIRE(q.vertex(1) == lattice::Point{2, -1});
  Polygon m = mutate(q, {1, 1, std::nullopt});
  CHECK(m == poly({{-1, -1}, {5, -1}, {-1, Rat(1, 2)}}));
  CHECK(oracle::same_vertex_set(m.vertices(), oracle::pl_shear(q.vertices(), {1, 2}, {2, -1}, 1)));
  Polygon fan = lattice::polar_dual(m);
  CHECK(oracle::gl2_equivalent(fan.vertices(), fixtures::p114_fan().vertices()));
  CHECK(lattice::unimodular_normal_form(fan) == lattice::unimodular_normal_form(fixtures::p114_fan()));
  CHECK(mutate(q, {1, 0, std::nullopt}) == q);
  CHECK_THROWS_AS(mutate(q, {1, 2, std::nullopt}), DomainError);
}

TEST_CASE("mutation matches the piecewise shear and inverts") {
  std::vector<Polygon> qs{fixtures::p2_dual(), lattice::polar_dual(fixtures::x6_fan()),
                          lattice::polar_dual(poly({{1, 0}, {1, 1}, {-1, 1}, {-1, -1}, {0, -1}}))};
  for (const Polygon& q : qs)
    for (std::size_t i = 0; i < q.size(); ++i) {
      Int c = cone_ray_content(corner_cone_ray(q, i));
      for (Int k = 1; k <= c; ++k) {
        lattice::Vec2 dir = lattice::primitive(q.vertex(i));
        lattice::Vec2 n0 = lattice::rot90(dir);
        Polygon m = mutate(q, {i, k, std::nullopt});
        CHECK(oracle::same_vertex_set(m.vertices(), oracle::pl_shear(q.vertices(), n0, dir, k)));
        Polygon back = pl_shear(m, -n0, -dir, k);
        CHECK(lattice::unimodular_normal_form(back) == lattice::unimodular_normal_form(q));
      }
    }
}

TEST_CASE("mutation graphs") {
  auto rigid = mutation_graph(fixtures::p3511_fan(), 50, 5);
  CHECK(rigid.nodes.size() == 1);
  CHECK(rigid.edges.empty());
  CHECK(rigid.verdict == GraphVerdict::Complete);

  auto p2 = mutation_graph(fixtures::p2_fan(), 6, 10);
  CHECK(p2.verdict == GraphVerdict::BudgetExceeded);
  CHECK(p2.nodes.size() == 6);
  bool has_p114 = false;
  for (const auto& n : p2.nodes)
    has_p114 = has_p114 || n.polygon == lattice::unimodular_normal_form(fixtures::p114_fan());
  CHECK(has_p114);

  Polygon x6 = fixtures::x6_fan();
  auto gx = mutation_graph(x6, 200, 20);
  CHECK(gx.verdict == GraphVerdict::Complete);
  for (const auto& n : gx.nodes) CHECK(total_content(singularity_basket(n.polygon)) == 6);
  for (const auto& e : gx.edges) CHECK(e.to < gx.nodes.size());
}
