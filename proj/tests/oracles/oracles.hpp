// Reference computations used to cross-check the library. Each one follows
// the defining construction directly and shares no code with fanodeg
// beyond the arithmetic and value types.
#pragma once

#include "fanodeg/algebra.hpp"
#include "fanodeg/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using fanodeg::Int;
using fanodeg::Rat;
using fanodeg::lattice::Point;
using fanodeg::lattice::Vec2;

inline Rat cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

// Vertices of the convex hull, counterclockwise, collinear points dropped.
inline std::vector<Point> hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline bool same_vertex_set(std::vector<Point> a, std::vector<Point> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Dual polygon by intersecting the half-planes <u, v> >= -1 pairwise and
// keeping the feasible intersection points.
inline std::vector<Point> polar_dual(const std::vector<Point>& p) {
  std::vector<Point> cand;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      Rat d = cross(p[i], p[j]);
      if (d == 0) continue;
      // u.x p.x + u.y p.y = -1 for both.
      Point u{(-p[j].y + p[i].y) / d, (p[j].x - p[i].x) / d};
      bool ok = true;
      for (const auto& v : p)
        if (u.x * v.x + u.y * v.y < -1) ok = false;
      if (ok) cand.push_back(u);
    }
  return hull(cand);
}

// Piecewise-linear shear applied vertex by vertex, with the points where
// edges cross <n0, x> = 0 added before taking the hull.
inline std::vector<Point> pl_shear(const std::vector<Point>& q, const Vec2& n0, const Vec2& dir, const Int& k) {
  auto pair = [&](const Point& x) { return Rat(n0.x) * x.x + Rat(n0.y) * x.y; };
  std::vector<Point> pts;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Point& a = q[i];
    const Point& b = q[(i + 1) % q.size()];
    Rat sa = pair(a), sb = pair(b);
    if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) {
      Rat l = sa / (sa - sb);
      pts.push_back(Point{a.x + l * (b.x - a.x), a.y + l * (b.y - a.y)});
    }
    Rat s = std::max(Rat(0), sa);
    pts.push_back(Point{a.x + Rat(k) * s * Rat(dir.x), a.y + Rat(k) * s * Rat(dir.y)});
  }
  return hull(pts);
}

// Integer matrix of determinant +-1 carrying the vertex set of a onto that
// of b, found by trying every assignment of two independent vertices.
inline bool gl2_equivalent(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size() || a.size() < 3) return false;
  const Point &p = a[0], &q = a[1];
  Rat d = cross(p, q);
  if (d == 0) return false;
  for (const auto& pp : b)
    for (const auto& qq : b) {
      if (pp == qq) continue;
      // M p = pp, M q = qq with M = [[m00, m01], [m10, m11]].
      Rat m00 = (pp.x * q.y - qq.x * p.y) / d, m01 = (qq.x * p.x - pp.x * q.x) / d;
      Rat m10 = (pp.y * q.y - qq.y * p.y) / d, m11 = (qq.y * p.x - pp.y * q.x) / d;
      auto integral = [](const Rat& r) { return fanodeg::denom(r) == 1; };
      if (!integral(m00) || !integral(m01) || !integral(m10) || !integral(m11)) continue;
      Rat det = m00 * m11 - m01 * m10;
      if (det != 1 && det != -1) continue;
      std::vector<Point> img;
      for (const auto& v : a) img.push_back(Point{m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y});
      if (same_vertex_set(img, b)) return true;
    }
  return false;
}

// Singularity content of the edge (n, -q) -> (0, 1): iterate the shear of
// the dual corner's tangent cone and count the amounts that keep it convex.
inline Int edge_content_by_shear(const Int& n, const Int& q) {
  Point p1{Rat(n), Rat(-q)}, p2{0, 1};
  Rat d = cross(p1, p2);
  Point u{(-p2.y + p1.y) / d, (p2.x - p1.x) / d};
  // Edges of the dual at u run along p1^perp and p2^perp.
  Vec2 e1{q, n}, e2{1, 0};
  if (e1.x * e2.y - e1.y * e2.x < 0) std::swap(e1, e2);
  Vec2 ell = fanodeg::lattice::primitive(Point{-u.x, -u.y});
  Vec2 n0{-ell.y, ell.x};
  if (n0.x * e1.x + n0.y * e1.y < 0) n0 = Vec2{-n0.x, -n0.y};
  Int c1 = n0.x * e1.x + n0.y * e1.y;
  Int k = 0;
  for (;;) {
    Int kk = k + 1;
    Vec2 s{e1.x - kk * c1 * ell.x, e1.y - kk * c1 * ell.y};
    if (s.x * e2.y - s.y * e2.x < 0) break;
    k = kk;
  }
  return k;
}

// Random rationals with small numerators and denominators.
inline Rat random_rat(std::mt19937& rng, int span = 7) {
  std::uniform_int_distribution<int> num(-span, span), den(1, span);
  int a = 0;
  while (a == 0) a = num(rng);
  return Rat(a, den(rng));
}

}  // namespace oracle

namespace oracle {

// Path-ordered product around the joint by direct composition: rays sorted
// by angle from just below the positive x-axis, lines split into two rays,
// each crossing z^m -> z^m f^<n,m> with n the counterclockwise normal of the
// ray, applied in the order crossed. True when both basis monomials return.
inline bool loop_is_identity(const std::vector<std::pair<Vec2, fanodeg::algebra::Series>>& rays, std::int64_t k) {
  using fanodeg::algebra::Series;
  using fanodeg::algebra::WallCrossing;
  auto angle = [](const Vec2& d) {
    double a = std::atan2(d.y.convert_to<double>(), d.x.convert_to<double>());
    return a < 0 ? a + 2 * M_PI : a;
  };
  auto sorted = rays;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const auto& a, const auto& b) { return angle(a.first) < angle(b.first); });
  for (fanodeg::algebra::Exp e : {fanodeg::algebra::Exp{1, 0}, fanodeg::algebra::Exp{0, 1}}) {
    Series g = Series::monomial(e).truncated(k);
    Series h = g;
    for (const auto& [d, f] : sorted) {
      WallCrossing th{{fanodeg::to_i64(-d.y), fanodeg::to_i64(d.x)}, f.truncated(k)};
      h = fanodeg::algebra::wall_cross(th, h);
    }
    if (!(h == g)) return false;
  }
  return true;
}

}  // namespace oracle
