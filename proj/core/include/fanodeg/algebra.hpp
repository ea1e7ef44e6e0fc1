// Piecewise-linear functions on complete fans, orders of exponents, and
// wall-crossing automorphisms acting on truncated series.
#pragma once

#include "fanodeg/lattice.hpp"
#include "fanodeg/series.hpp"

#include <map>
#include <vector>

namespace fanodeg::algebra {

using lattice::Vec2;

// Convex piecewise-linear function on a complete fan in the plane. Rays are
// kept in counterclockwise order starting from the base cell's first ray;
// cell i lies between ray i and ray i+1.
class PLFunction {
 public:
  // Slope zero on the cell starting at rays[base]; crossing ray i
  // counterclockwise adds kinks[i] times its primitive annihilator that is
  // positive on the new cell. Throws NonIntegralPhi if the slopes fail to
  // close up around the origin.
  static PLFunction from_kinks(const std::vector<Vec2>& rays, const std::vector<Int>& kinks,
                               std::size_t base = 0);
  // Fan with the two rays of a line through the origin; slope zero on the
  // side where <n0, .> <= 0 and kink * n0 on the other.
  static PLFunction wall(const Vec2& direction, const Vec2& n0, const Int& kink);

  const std::vector<Vec2>& rays() const { return rays_; }
  const std::vector<Vec2>& slopes() const { return slopes_; }
  const std::vector<Int>& kinks() const { return kinks_; }

  // Indices of cells whose closure contains m (one or two, all for m = 0).
  std::vector<std::size_t> cells_containing(const Vec2& m) const;
  Int value(const Vec2& m) const;
  // Linear extension of the slope on a cell.
  Int value_on(std::size_t cell, const Vec2& m) const;

 private:
  std::vector<Vec2> rays_;
  std::vector<Vec2> slopes_;
  std::vector<Int> kinks_;
};

struct Exponent {
  Vec2 m_bar;
  Int r;
};

Int order_of(const Exponent& e, std::size_t cell, const PLFunction& phi);
// Maximum of order_of over the cells containing the cone spanned by tau.
Int order_on_face(const Exponent& e, const Vec2& tau, const PLFunction& phi);

struct WallCrossing {
  Exp n;     // dual vector, oriented along the crossing direction
  Series f;  // wall function with a unit constant term
};

// z^m -> z^m f^<n,m>, monomial by monomial.
Series wall_cross(const WallCrossing& theta, const Series& g);
// thetas[0](thetas[1](...thetas.back()(g))).
Series compose(const std::vector<WallCrossing>& thetas, const Series& g);

WallCrossing inverse_crossing(const WallCrossing& theta);

// Substitutes rational values; throws MissingParameter unless every
// parameter of g is assigned (use partial = true to keep the rest).
Series evaluate_parameters(const Series& g, const std::map<std::string, Rat>& assignment,
                           bool partial = false);

// f * z^(k m).
Series change_of_vertex(const Series& f, std::int64_t k, const Exp& m);

}  // namespace fanodeg::algebra
