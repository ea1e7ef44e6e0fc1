// Scattering diagrams at a joint in the plane: path-ordered loop products,
// order-by-order completion, family completion and the stabilization
// sequence for slab factors without a unit term.
#pragma once

#include "fanodeg/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fanodeg::scatter {

using algebra::Exp;
using algebra::ParamIdeal;
using algebra::ParamMono;
using algebra::Series;
using lattice::Vec2;

enum class WallKind { Line, Ray };

// One factor 1 + c z^m of a slab function.
struct SlabFactor {
  Rat coefficient;
  std::int64_t t = 0;
  ParamMono params;
  Exp m;
};

struct Wall {
  WallKind kind = WallKind::Ray;
  Vec2 direction;  // primitive; rays are R>=0 * direction
  Series f{2};
  std::vector<SlabFactor> factors;  // optional factored form of f

  friend bool operator==(const Wall& a, const Wall& b) {
    return a.kind == b.kind && a.direction == b.direction && a.f == b.f;
  }
};

Wall make_line(const Vec2& direction, const Series& f);
Wall make_ray(const Vec2& direction, const Series& f);
Wall make_slab(const Vec2& direction, const std::vector<SlabFactor>& factors);
Series factor_product(const std::vector<SlabFactor>& factors);

enum class JointKind { Vertex, Cell };

struct ScatteringDiagram {
  std::vector<Wall> walls;
  std::int64_t order = 1;
  JointKind joint = JointKind::Vertex;
  // Loop start: just clockwise of this direction.
  Vec2 base{1, 0};
  std::shared_ptr<const ParamIdeal> ideal;
};

// Canonical form: same-support walls merged, trivial walls dropped, lines
// given a direction with positive leading coordinate, sorted.
ScatteringDiagram canonical(const ScatteringDiagram& d);

struct DefectReport {
  bool identity = true;
  std::int64_t order = 0;      // lowest t-order of the defect
  std::vector<Series> terms;   // offending terms, per basis monomial
};

struct LoopProduct {
  Series image_e1{2};
  Series image_e2{2};
  DefectReport defect;
};

// The crossings of a counterclockwise loop in traversal order.
std::vector<algebra::WallCrossing> loop_crossings(const ScatteringDiagram& d);
LoopProduct loop_product(const ScatteringDiagram& d, std::int64_t k);

ScatteringDiagram scatter_complete(const ScatteringDiagram& d, std::int64_t k);
ScatteringDiagram scatter_family(const ScatteringDiagram& d, std::int64_t k);

// Evaluates every wall function.
ScatteringDiagram evaluate(const ScatteringDiagram& d, const std::map<std::string, Rat>& assignment);

struct StabilizationResult {
  ScatteringDiagram diagram;              // pruned completion at stabilized_at
  std::vector<Wall> added;                // rays produced by the completion
  std::optional<std::int64_t> stabilized_at;
  std::vector<std::string> universal;     // parameters standing in for bad factors
};

// Replaces each bad slab factor 1 + c z^m by 1 + c u z^m with a fresh
// universal parameter u, then completes over I_e = (u^e) + J for
// e = 1, 2, ... until the added rays no longer change.
StabilizationResult scatter_stabilized(const ScatteringDiagram& d, const ParamIdeal& j,
                                       std::int64_t e_max, std::int64_t k);

}  // namespace fanodeg::scatter
