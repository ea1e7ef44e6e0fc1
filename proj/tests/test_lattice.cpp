#include <doctest.h>

#include "oracles/oracles.hpp"
#include "support.hpp"

#include <random>

using namespace fanodeg;
using namespace fanodeg::lattice;
using fixtures::poly;

namespace {

Polygon random_fano_like(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-4, 4);
  for (;;) {
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(Point{c(rng), c(rng)});
    try {
      Polygon p = Polygon::hull(pts);
      if (p.origin_interior()) return p;
    } catch (const DomainError&) {
    }
  }
}

Mat2 random_unimodular(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  Mat2 m{1, 0, 0, 1};
  for (int step = 0; step < 4; ++step) {
    Int k = c(rng);
    Mat2 e = (step % 2 == 0) ? Mat2{1, k, 0, 1} : Mat2{1, 0, k, 1};
    m = Mat2{m.a * e.a + m.b * e.c, m.a * e.b + m.b * e.d, m.c * e.a + m.d * e.c, m.c * e.b + m.d * e.d};
  }
  if (c(rng) < 0) m = Mat2{m.b, m.a, m.d, m.c};
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic helpers") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(mod_floor(-7, 3) == 2);
  CHECK(floor_rat(Rat(-1, 2)) == -1);
  CHECK(ceil_rat(Rat(-1, 2)) == 0);
  Int s, t;
  CHECK(ext_gcd(12, 18, s, t) == 6);
  CHECK(s * 12 + t * 18 == 6);
  CHECK(parse_rat("-3/6") == Rat(-1, 2));
  CHECK(to_string(Rat(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
}

TEST_CASE("hull orders vertices counterclockwise and drops interior points") {
  Polygon p = poly({{0, 0}, {2, 0}, {1, 1}, {0, 2}, {2, 2}, {1, 0}});
  CHECK(p.size() == 4);
  CHECK(p.area() == 4);
  CHECK(p.contains(Point{1, 1}));
  CHECK_FALSE(p.contains_strictly(Point{1, 0}));
  CHECK_THROWS_AS(poly({{0, 0}, {1, 1}, {2, 2}}), DomainError);
}

TEST_CASE("polar duals of the reference polygons") {
  CHECK(polar_dual(fixtures::p2_fan()) == fixtures::p2_dual());
  CHECK(polar_dual(poly({{1, 0}, {0, 1}, {-1, 0}, {0, -1}})) == poly({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}));
  Polygon d = polar_dual(fixtures::p114_fan());
  CHECK(d == poly({{-1, -1}, {5, -1}, {-1, Rat(1, 2)}}));
  CHECK_FALSE(d.is_integral());
  CHECK(d.denominator_lcm() == 2);
}

TEST_CASE("polar dual agrees with half-plane intersection") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Polygon p = random_fano_like(rng);
    Polygon d = polar_dual(p);
    CHECK(oracle::same_vertex_set(d.vertices(), oracle::polar_dual(p.vertices())));
    CHECK(polar_dual(d) == p);
  }
}

TEST_CASE("normal form is constant on unimodular orbits") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Polygon p = random_fano_like(rng);
    Polygon nf = unimodular_normal_form(p);
    for (int j = 0; j < 4; ++j) CHECK(unimodular_normal_form(transform(p, random_unimodular(rng))) == nf);
    CHECK(oracle::gl2_equivalent(nf.vertices(), p.vertices()));
  }
  CHECK(unimodular_normal_form(fixtures::p2_fan()) ==
        unimodular_normal_form(transform(fixtures::p2_fan(), Mat2{2, 1, 1, 1})));
}

TEST_CASE("normal form separates inequivalent polygons") {
  std::mt19937 rng(17);
  std::vector<Polygon> ps;
  for (int i = 0; i < 25; ++i) ps.push_back(random_fano_like(rng));
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      CHECK((unimodular_normal_form(ps[i]) == unimodular_normal_form(ps[j])) ==
            oracle::gl2_equivalent(ps[i].vertices(), ps[j].vertices()));
}

TEST_CASE("lattice kernel examples") {
  auto k = lattice_kernel({{0, 0, 1}, {-1, 0, 3}, {1, 0, 3}});
  REQUIRE(k.size() == 1);
  IVec v = k[0];
  if (v[0] > 0)
    for (auto& x : v) x = -x;
  CHECK(v == IVec{-6, 1, 1});
  CHECK(lattice_kernel({{1, 0}, {0, 1}}).empty());
  CHECK(lattice_kernel({{2, 3}, {2, 3}}) == std::vector<IVec>{{1, -1}});
  CHECK(rank({{1, 2}, {2, 4}, {0, 0}}) == 1);
}

TEST_CASE("lattice kernel vectors lie in the kernel and have full rank") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-5, 5), len(2, 6), dim(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    int s = len(rng), d = dim(rng);
    std::vector<IVec> vs(s, IVec(d));
    for (auto& v : vs)
      for (auto& x : v) x = c(rng);
    auto k = lattice_kernel(vs);
    CHECK(k.size() + rank(vs) == static_cast<std::size_t>(s));
    for (const auto& kv : k)
      for (int j = 0; j < d; ++j) {
        Int sum = 0;
        for (int i = 0; i < s; ++i) sum += kv[i] * vs[i][j];
        CHECK(sum == 0);
      }
  }
}

TEST_CASE("cone generators of the reference cones") {
  Cone3 x6(fixtures::x6_q());
  auto g = cone_generators_hilbert(x6, x6.hilbert_height_bound());
  std::vector<ConeVector> want{{{0, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 3}, {{1, 0}, 3}};
  std::sort(want.begin(), want.end());
  CHECK(g == want);

  Cone3 diamond(poly({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
  auto h = cone_generators_hilbert(diamond, diamond.hilbert_height_bound());
  CHECK(h.size() == 5);
  for (const auto& v : h) CHECK(v.h == 1);

  CHECK_THROWS_AS(cone_generators_hilbert(x6, 2), DomainError);
}

TEST_CASE("cone generators generate every slice and are indecomposable") {
  for (const Polygon& q : {fixtures::x6_q(), fixtures::cubic_q(), fixtures::p2_q(), polar_dual(fixtures::p114_fan())}) {
    Cone3 c(q);
    auto g = cone_generators_hilbert(c, c.hilbert_height_bound());
    std::set<ConeVector> reach{{{0, 0}, 0}};
    for (Int h = 1; h <= 6; ++h)
      for (const auto& v : c.slice(h)) {
        bool ok = false;
        for (const auto& gen : g)
          if (gen.h <= h && reach.count(v - gen)) ok = true;
        CHECK(ok);
        reach.insert(v);
      }
    for (const auto& gen : g)
      for (Int h = 1; h < gen.h; ++h)
        for (const auto& v : c.slice(h)) CHECK_FALSE(c.contains(gen - v));
  }
}
