#include <doctest.h>

#include "oracles/oracles.hpp"
#include "support.hpp"

#include <random>

using namespace fanodeg;
using namespace fanodeg::scatter;
using fixtures::lattice_series;

namespace {

std::vector<std::pair<Vec2, Series>> rays_of(const ScatteringDiagram& d) {
  std::vector<std::pair<Vec2, Series>> out;
  for (const auto& w : d.walls) {
    out.emplace_back(w.direction, w.f);
    if (w.kind == WallKind::Line) out.emplace_back(-w.direction, w.f);
  }
  return out;
}

std::vector<Wall> added_rays(const ScatteringDiagram& d) {
  std::vector<Wall> out;
  for (const auto& w : d.walls)
    if (w.kind == WallKind::Ray) out.push_back(w);
  return out;
}

ScatteringDiagram truncated(const ScatteringDiagram& d, std::int64_t k) {
  ScatteringDiagram out = d;
  out.order = k;
  for (auto& w : out.walls) w.f = w.f.truncated(k);
  return canonical(out);
}

ScatteringDiagram random_diagram(std::mt19937& rng) {
  static const std::vector<Vec2> dirs{{1, 0}, {0, 1}, {1, 1}, {1, -1}, {1, 2}, {2, 1}, {1, -2}};
  std::uniform_int_distribution<std::size_t> pick(0, dirs.size() - 1);
  std::uniform_int_distribution<int> count(2, 3), c(-2, 2), sign(0, 1);
  ScatteringDiagram d;
  std::set<std::size_t> used;
  int n = count(rng);
  while (static_cast<int>(used.size()) < n) used.insert(pick(rng));
  for (std::size_t i : used) {
    Vec2 m = sign(rng) ? dirs[i] : -dirs[i];
    int a = 0;
    while (a == 0) a = c(rng);
    Series f = Series::one(2) + Series::monomial({to_i64(m.x), to_i64(m.y)}, 1, {}, a);
    d.walls.push_back(make_line(dirs[i], f));
  }
  return d;
}

}  // namespace

TEST_CASE("loop products of small diagrams") {
  ScatteringDiagram one;
  one.walls = {make_line({1, 0}, lattice_series("1 + t*z^(1,0)"))};
  for (std::int64_t k = 1; k <= 4; ++k) CHECK(loop_product(one, k).defect.identity);

  auto two = fixtures::two_lines(3);
  auto lp = loop_product(two, 3);
  CHECK_FALSE(lp.defect.identity);
  CHECK(lp.defect.order == 2);
  CHECK_FALSE(oracle::loop_is_identity(rays_of(two), 3));

  two.walls.push_back(make_ray({1, 1}, lattice_series("1 + t^2*z^(1,1)")));
  CHECK(loop_product(two, 2).defect.identity);
  CHECK(oracle::loop_is_identity(rays_of(two), 2));
}

TEST_CASE("completion of two transverse lines") {
  for (std::int64_t k = 2; k <= 6; ++k) {
    CAPTURE(k);
    auto c = scatter_complete(fixtures::two_lines(k), k);
    auto rays = added_rays(c);
    REQUIRE(rays.size() == 1);
    CHECK(rays[0].direction == Vec2{1, 1});
    CHECK(rays[0].f == lattice_series("1 + t^2*z^(1,1)").truncated(k));
    CHECK(loop_product(c, k).defect.identity);
    CHECK(oracle::loop_is_identity(rays_of(c), k));
  }
  CHECK(added_rays(scatter_complete(fixtures::two_lines(1), 1)).empty());
}

TEST_CASE("completion is idempotent and monotone in the order") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    ScatteringDiagram d = random_diagram(rng);
    std::int64_t k = 2 + trial % 3;
    auto c = scatter_complete(d, k);
    CHECK(oracle::loop_is_identity(rays_of(c), k));
    CHECK(canonical(scatter_complete(c, k)).walls == canonical(c).walls);
    auto lower = scatter_complete(d, k - 1);
    CHECK(truncated(c, k - 1).walls == canonical(lower).walls);
  }
}

TEST_CASE("walls without a unit constant term are rejected") {
  ScatteringDiagram d;
  d.walls = {make_line({1, 0}, lattice_series("1 + z^(1,0)")), make_line({0, 1}, lattice_series("1 + t*z^(0,1)"))};
  CHECK_THROWS_AS(scatter_complete(d, 2), DomainError);
}

TEST_CASE("cubic joint family completion") {
  auto fam = scatter_family(fixtures::cubic_joint(4), 4);
  CHECK(loop_product(fam, 4).defect.identity);
  auto rays = added_rays(fam);
  CHECK(rays.size() == 3);
  for (const auto& r : rays) CHECK((r.f - Series::one(2)).min_t() == 2);

  auto zero = scatter_family(evaluate(fixtures::cubic_joint(4), {{"a", 0}, {"b", 0}, {"c", 0}}), 4);
  CHECK(added_rays(zero).empty());
}

TEST_CASE("family completion commutes with evaluation") {
  std::mt19937 rng(31);
  auto fam = scatter_family(fixtures::cubic_joint(4), 4);
  for (int trial = 0; trial < 5; ++trial) {
    std::map<std::string, Rat> v{{"a", oracle::random_rat(rng)}, {"b", oracle::random_rat(rng)},
                                 {"c", oracle::random_rat(rng)}};
    auto lhs = canonical(evaluate(fam, v));
    auto rhs = canonical(scatter_complete(evaluate(fixtures::cubic_joint(4), v), 4));
    CHECK(lhs.walls == rhs.walls);
  }
  std::map<std::string, Rat> ones{{"a", 1}, {"b", 1}, {"c", 1}};
  CHECK(canonical(evaluate(fam, ones)).walls ==
        canonical(scatter_complete(evaluate(fixtures::cubic_joint(4), ones), 4)).walls);

  ScatteringDiagram single;
  single.walls = {make_line({1, 0}, lattice_series("1 + a*t*z^(1,0)")), make_line({0, 1}, lattice_series("1 + t*z^(0,1)"))};
  for (int trial = 0; trial < 3; ++trial) {
    std::map<std::string, Rat> v{{"a", oracle::random_rat(rng)}};
    CHECK(canonical(evaluate(scatter_family(single, 3), v)).walls ==
          canonical(scatter_complete(evaluate(single, v), 3)).walls);
  }
}

TEST_CASE("stabilization without bad factors") {
  auto r = scatter_stabilized(fixtures::two_lines(3), algebra::ParamIdeal{}, 3, 3);
  REQUIRE(r.stabilized_at.has_value());
  CHECK(*r.stabilized_at == 1);
  CHECK(r.universal.empty());
  CHECK(r.added.size() == 1);
}

TEST_CASE("stabilization of a single slab line") {
  ScatteringDiagram d;
  d.joint = JointKind::Cell;
  d.walls = {make_line({1, 0}, lattice_series("1 + z^(1,0)"))};
  auto r = scatter_stabilized(d, algebra::ParamIdeal{}, 3, 3);
  REQUIRE(r.stabilized_at.has_value());
  CHECK(*r.stabilized_at == 1);
  CHECK(r.added.empty());
  CHECK(r.universal.size() == 1);
}

TEST_CASE("stabilization with one bad factor and a transverse line") {
  ScatteringDiagram d;
  d.joint = JointKind::Cell;
  d.walls = {make_line({1, 0}, lattice_series("1 + z^(1,0)")), make_line({0, 1}, lattice_series("1 + s*t*z^(0,1)"))};
  auto r = scatter_stabilized(d, algebra::ParamIdeal({{{"s", 2}}}), 3, 3);
  REQUIRE(r.stabilized_at.has_value());
  CHECK(*r.stabilized_at <= 3);
  CHECK(loop_product(r.diagram, 3).defect.identity);
  REQUIRE(r.added.size() == 1);
  CHECK(r.added[0].direction == Vec2{1, 1});
}
