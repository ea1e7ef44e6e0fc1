// Two-dimensional lattice geometry over exact rationals: polygons, polar
// duality, unimodular normal forms, integer kernels and monoid generators
// of cones over polygons.
#pragma once

#include "fanodeg/arith.hpp"

#include <compare>
#include <string>
#include <vector>

namespace fanodeg::lattice {

struct Vec2 {
  Int x, y;
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend std::strong_ordering operator<=>(const Vec2& a, const Vec2& b);
};

struct Point {
  Rat x, y;
  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);
};

Vec2 operator+(const Vec2& a, const Vec2& b);
Vec2 operator-(const Vec2& a, const Vec2& b);
Vec2 operator-(const Vec2& a);
Vec2 operator*(const Int& k, const Vec2& a);
Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rat& k, const Point& a);

Point to_point(const Vec2& v);
Int dot(const Vec2& a, const Vec2& b);
Rat dot(const Vec2& a, const Point& b);
Int det(const Vec2& a, const Vec2& b);
Rat det(const Point& a, const Point& b);

// gcd of the coordinates (nonnegative).
Int content(const Vec2& v);
Vec2 primitive(const Vec2& v);
// Primitive integer vector positively proportional to a nonzero rational one.
Vec2 primitive(const Point& v);
// Counterclockwise quarter turn: (x, y) -> (-y, x).
Vec2 rot90(const Vec2& v);
bool is_integral(const Point& p);

std::string to_string(const Vec2& v);
std::string to_string(const Point& p);

// Convex polygon with counterclockwise, rotation-canonical vertex list.
class Polygon {
 public:
  Polygon() = default;
  // Convex hull of the given points; throws InvalidArgument when the hull
  // has empty interior.
  static Polygon hull(const std::vector<Point>& points);
  static Polygon hull(const std::vector<Vec2>& points);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  bool is_integral() const;
  bool contains(const Point& p) const;
  bool contains_strictly(const Point& p) const;
  bool origin_interior() const;
  // Least common multiple of the vertex denominators.
  Int denominator_lcm() const;
  Rat area() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;
  friend bool operator<(const Polygon& a, const Polygon& b) { return a.vertices_ < b.vertices_; }

 private:
  std::vector<Point> vertices_;
};

// A 2x2 integer matrix acting on column vectors.
struct Mat2 {
  Int a, b, c, d;
  Vec2 apply(const Vec2& v) const;
  Point apply(const Point& p) const;
  Int determinant() const { return a * d - b * c; }
};

Polygon transform(const Polygon& p, const Mat2& m);

Polygon polar_dual(const Polygon& p);
Polygon unimodular_normal_form(const Polygon& p);

using IVec = std::vector<Int>;

// Basis of {x in Z^s : sum x_i vectors[i] = 0}, in row echelon form with
// positive pivots and reduced entries above each pivot.
std::vector<IVec> lattice_kernel(const std::vector<IVec>& vectors);
std::size_t rank(const std::vector<IVec>& vectors);

// Lattice point (m, h) of M + Z.
struct ConeVector {
  Vec2 m;
  Int h;
  friend bool operator==(const ConeVector&, const ConeVector&) = default;
  friend std::strong_ordering operator<=>(const ConeVector& a, const ConeVector& b);
};

ConeVector operator+(const ConeVector& a, const ConeVector& b);
ConeVector operator-(const ConeVector& a, const ConeVector& b);
std::string to_string(const ConeVector& v);

// Cone over a polygon placed at height one.
class Cone3 {
 public:
  explicit Cone3(Polygon base) : base_(std::move(base)) {}
  const Polygon& base() const { return base_; }
  bool contains(const ConeVector& v) const;
  // Lattice points at height h, sorted lexicographically.
  std::vector<ConeVector> slice(const Int& h) const;
  // Height below which every Hilbert basis element must lie.
  Int hilbert_height_bound() const;

 private:
  Polygon base_;
};

// Minimal generating set of the lattice points of the cone, sorted by
// (height, m). Throws BoundTooSmall when height_bound is below the vertex
// denominators or when an indecomposable point lies above the bound.
std::vector<ConeVector> cone_generators_hilbert(const Cone3& cone, const Int& height_bound);

}  // namespace fanodeg::lattice
