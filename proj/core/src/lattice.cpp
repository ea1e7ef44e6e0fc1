#include "fanodeg/lattice.hpp"

#include "fanodeg/errors.hpp"

#include <algorithm>
#include <optional>

namespace fanodeg::lattice {

std::strong_ordering operator<=>(const Vec2& a, const Vec2& b) {
  if (a.x != b.x) return a.x < b.x ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.y != b.y) return a.y < b.y ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.y != b.y) return a.y < b.y ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const ConeVector& a, const ConeVector& b) {
  if (a.h != b.h) return a.h < b.h ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.m <=> b.m;
}

Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
Vec2 operator*(const Int& k, const Vec2& a) { return {k * a.x, k * a.y}; }
Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(const Rat& k, const Point& a) { return {k * a.x, k * a.y}; }

ConeVector operator+(const ConeVector& a, const ConeVector& b) { return {a.m + b.m, a.h + b.h}; }
ConeVector operator-(const ConeVector& a, const ConeVector& b) { return {a.m - b.m, a.h - b.h}; }

Point to_point(const Vec2& v) { return {Rat(v.x), Rat(v.y)}; }
Int dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
Rat dot(const Vec2& a, const Point& b) { return Rat(a.x) * b.x + Rat(a.y) * b.y; }
Int det(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
Rat det(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

Int content(const Vec2& v) { return gcd(v.x, v.y); }

Vec2 primitive(const Vec2& v) {
  Int g = content(v);
  if (g == 0) return v;
  return {v.x / g, v.y / g};
}

Vec2 primitive(const Point& v) {
  Int l = lcm(denom(v.x), denom(v.y));
  return primitive(Vec2{numer(v.x * l), numer(v.y * l)});
}

Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }

bool is_integral(const Point& p) { return denom(p.x) == 1 && denom(p.y) == 1; }

std::string to_string(const Vec2& v) { return "(" + v.x.str() + "," + v.y.str() + ")"; }

std::string to_string(const Point& p) {
  return "(" + fanodeg::to_string(p.x) + "," + fanodeg::to_string(p.y) + ")";
}

std::string to_string(const ConeVector& v) {
  return "(" + v.m.x.str() + "," + v.m.y.str() + ";" + v.h.str() + ")";
}

namespace {

Rat cross(const Point& o, const Point& a, const Point& b) { return det(a - o, b - o); }

std::vector<Point> canonical_rotation(std::vector<Point> v) {
  auto it = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), it, v.end());
  return v;
}

}  // namespace

Polygon Polygon::hull(const std::vector<Point>& points) {
  std::vector<Point> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3)
    throw DomainError(Errc::InvalidArgument, "Polygon::hull", "fewer than three distinct points");
  // Andrew's monotone chain, dropping collinear points.
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3)
    throw DomainError(Errc::InvalidArgument, "Polygon::hull", "points are collinear");
  Polygon out;
  out.vertices_ = canonical_rotation(std::move(h));
  return out;
}

Polygon Polygon::hull(const std::vector<Vec2>& points) {
  std::vector<Point> pts;
  pts.reserve(points.size());
  for (const auto& v : points) pts.push_back(to_point(v));
  return hull(pts);
}

bool Polygon::is_integral() const {
  return std::all_of(vertices_.begin(), vertices_.end(),
                     [](const Point& p) { return lattice::is_integral(p); });
}

bool Polygon::contains(const Point& p) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (cross(vertex(i), vertex(i + 1), p) < 0) return false;
  return true;
}

bool Polygon::contains_strictly(const Point& p) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (cross(vertex(i), vertex(i + 1), p) <= 0) return false;
  return true;
}

bool Polygon::origin_interior() const { return contains_strictly(Point{0, 0}); }

Int Polygon::denominator_lcm() const {
  Int l = 1;
  for (const auto& v : vertices_) l = lcm(l, lcm(denom(v.x), denom(v.y)));
  return l;
}

Rat Polygon::area() const {
  Rat a = 0;
  for (std::size_t i = 0; i < size(); ++i) a += det(vertex(i), vertex(i + 1));
  return a / 2;
}

Vec2 Mat2::apply(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

Point Mat2::apply(const Point& p) const {
  return {Rat(a) * p.x + Rat(b) * p.y, Rat(c) * p.x + Rat(d) * p.y};
}

Polygon transform(const Polygon& p, const Mat2& m) {
  std::vector<Point> pts;
  for (const auto& v : p.vertices()) pts.push_back(m.apply(v));
  return Polygon::hull(pts);
}

Polygon polar_dual(const Polygon& p) {
  if (!p.origin_interior())
    throw DomainError(Errc::OriginNotInterior, "polar_dual", "origin is not interior");
  std::vector<Point> dual;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point& a = p.vertex(i);
    const Point& b = p.vertex(i + 1);
    Rat d = det(a, b);
    dual.push_back({(a.y - b.y) / d, (b.x - a.x) / d});
  }
  return Polygon::hull(dual);
}

Polygon unimodular_normal_form(const Polygon& p) {
  std::optional<Polygon> best;
  const Mat2 swap{0, 1, 1, 0};
  for (int reflect = 0; reflect < 2; ++reflect) {
    Polygon q = reflect ? transform(p, swap) : p;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Point& start = q.vertex(i);
      Vec2 e = primitive(q.vertex(i + 1) - start);
      Int s, t;
      ext_gcd(e.x, e.y, s, t);
      // Sends e to (1, 0); the edge then lies on a horizontal line below 0.
      Mat2 u{s, t, -e.y, e.x};
      Point img = u.apply(start);
      Rat h = -img.y;
      Int c = h == 0 ? Int(0) : floor_rat(img.x / h);
      Mat2 shear{1, c, 0, 1};
      Mat2 m{shear.a * u.a + shear.b * u.c, shear.a * u.b + shear.b * u.d,
             shear.c * u.a + shear.d * u.c, shear.c * u.b + shear.d * u.d};
      Polygon cand = transform(q, m);
      if (!best || cand < *best) best = std::move(cand);
    }
  }
  return *best;
}

namespace {

// Column-style reduction of A (d x s) tracked on an s x s identity block.
struct ColumnReducer {
  std::vector<IVec> cols;  // each column: first d entries from A, then s entries
  std::size_t d = 0;

  void combine(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t r = 0; r < cols[dst].size(); ++r) cols[dst][r] -= k * cols[src][r];
  }

  std::size_t reduce() {
    std::size_t pivot = 0;
    for (std::size_t row = 0; row < d && pivot < cols.size(); ++row) {
      for (;;) {
        std::size_t best = cols.size();
        for (std::size_t j = pivot; j < cols.size(); ++j) {
          if (cols[j][row] == 0) continue;
          if (best == cols.size() || abs(cols[j][row]) < abs(cols[best][row])) best = j;
        }
        if (best == cols.size()) break;
        std::swap(cols[pivot], cols[best]);
        bool done = true;
        for (std::size_t j = pivot + 1; j < cols.size(); ++j) {
          if (cols[j][row] == 0) continue;
          combine(j, pivot, cols[j][row] / cols[pivot][row]);
          if (cols[j][row] != 0) done = false;
        }
        if (done) {
          ++pivot;
          break;
        }
      }
    }
    return pivot;
  }
};

void hermite_rows(std::vector<IVec>& rows) {
  if (rows.empty()) return;
  std::size_t n = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int k = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= k * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (!done) continue;
      if (rows[r][c] < 0)
        for (auto& x : rows[r]) x = -x;
      for (std::size_t i = 0; i < r; ++i) {
        Int k = floor_div(rows[i][c], rows[r][c]);
        if (k != 0)
          for (std::size_t j = 0; j < n; ++j) rows[i][j] -= k * rows[r][j];
      }
      ++r;
      break;
    }
  }
  rows.resize(r);
}

}  // namespace

std::vector<IVec> lattice_kernel(const std::vector<IVec>& vectors) {
  if (vectors.empty())
    throw DomainError(Errc::InvalidArgument, "lattice_kernel", "empty input");
  const std::size_t s = vectors.size();
  const std::size_t d = vectors[0].size();
  ColumnReducer red;
  red.d = d;
  for (std::size_t j = 0; j < s; ++j) {
    if (vectors[j].size() != d)
      throw DomainError(Errc::InvalidArgument, "lattice_kernel", "ragged input");
    IVec col(d + s, Int(0));
    for (std::size_t r = 0; r < d; ++r) col[r] = vectors[j][r];
    col[d + j] = 1;
    red.cols.push_back(std::move(col));
  }
  std::size_t rk = red.reduce();
  std::vector<IVec> basis;
  for (std::size_t j = rk; j < s; ++j)
    basis.emplace_back(red.cols[j].begin() + static_cast<std::ptrdiff_t>(d), red.cols[j].end());
  hermite_rows(basis);
  return basis;
}

std::size_t rank(const std::vector<IVec>& vectors) {
  if (vectors.empty()) return 0;
  return vectors.size() - lattice_kernel(vectors).size();
}

bool Cone3::contains(const ConeVector& v) const {
  if (v.h < 0) return false;
  if (v.h == 0) return v.m.x == 0 && v.m.y == 0;
  return base_.contains(Point{Rat(v.m.x, v.h), Rat(v.m.y, v.h)});
}

std::vector<ConeVector> Cone3::slice(const Int& h) const {
  std::vector<ConeVector> out;
  if (h <= 0) return out;
  Rat xmin = base_.vertex(0).x, xmax = xmin, ymin = base_.vertex(0).y, ymax = ymin;
  for (const auto& v : base_.vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  Rat hr(h);
  for (Int x = ceil_rat(xmin * hr); x <= floor_rat(xmax * hr); ++x)
    for (Int y = ceil_rat(ymin * hr); y <= floor_rat(ymax * hr); ++y) {
      ConeVector c{{x, y}, h};
      if (contains(c)) out.push_back(c);
    }
  return out;
}

Int Cone3::hilbert_height_bound() const {
  // Every indecomposable point lies in the half-open parallelepiped of some
  // simplicial piece of a fan triangulation, or on one of its rays.
  auto ray_height = [](const Point& p) { return lcm(denom(p.x), denom(p.y)); };
  Int best = 1;
  const auto& v = base_.vertices();
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    Int s = ray_height(v[0]) + ray_height(v[i]) + ray_height(v[i + 1]) - 1;
    best = std::max(best, s);
  }
  return best;
}

std::vector<ConeVector> cone_generators_hilbert(const Cone3& cone, const Int& height_bound) {
  Int need = cone.base().denominator_lcm();
  if (height_bound < need)
    throw DomainError(Errc::BoundTooSmall, "cone_generators_hilbert",
                      "height bound " + height_bound.str() + " below vertex denominator lcm " +
                          need.str());
  Int top = std::max(height_bound, cone.hilbert_height_bound());
  std::vector<ConeVector> gens;
  for (Int h = 1; h <= top; ++h) {
    for (const auto& p : cone.slice(h)) {
      bool reducible = false;
      for (const auto& g : gens) {
        if (g.h >= h) break;
        if (cone.contains(p - g)) {
          reducible = true;
          break;
        }
      }
      if (reducible) continue;
      if (h > height_bound)
        throw DomainError(Errc::BoundTooSmall, "cone_generators_hilbert",
                          "indecomposable point " + to_string(p) + " above height bound " +
                              height_bound.str());
      gens.push_back(p);
    }
  }
  return gens;
}

}  // namespace fanodeg::lattice
