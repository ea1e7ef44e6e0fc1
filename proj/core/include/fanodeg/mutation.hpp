// Fano polygon analysis: singularity content of edges and corners, baskets,
// canonical cover numerology, and mutation by piecewise-linear shear.
#pragma once

#include "fanodeg/lattice.hpp"

#include <optional>
#include <vector>

namespace fanodeg::mutation {

using lattice::Point;
using lattice::Polygon;
using lattice::Vec2;

// Cyclic quotient type 1/n(1,q); (1,0) denotes a smooth cone.
struct ConeType {
  Int n, q;
  friend bool operator==(const ConeType&, const ConeType&) = default;
};

// Type of the cone spanned by two lattice vectors, listed counterclockwise.
ConeType cone_type(const Vec2& a, const Vec2& b);

struct EdgeStandardForm {
  Int h;      // lattice height of the edge above the origin
  Int a1, a2; // endpoints (a1,-h), (a2,-h) after normalization
  Int theta;  // lattice length
  Int n, q;
};

// Standard form of the edge from p1 to p2 (counterclockwise, integral).
EdgeStandardForm edge_standard_form(const Vec2& p1, const Vec2& p2);
// Standard form of the edge (n,-q) -> (0,1) realizing 1/n(1,q).
EdgeStandardForm standard_form_for_type(const Int& n, const Int& q);

struct SingularityContent {
  Int m;
  Int residual_width;
  std::optional<ConeType> residual_type;
};

SingularityContent edge_singularity_content(const EdgeStandardForm& e);

struct Cone2 {
  Vec2 v1, v2;
  bool line = false;
};

struct ConeRay {
  Cone2 cone;  // v1, v2 counterclockwise
  Vec2 ell;    // primitive, strictly interior
  Vec2 n0;     // primitive, <n0, ell> = 0, <n0, v1> > 0
};

// Validates and orients the data; throws InvalidArgument on bad input.
ConeRay make_cone_ray(const Vec2& a, const Vec2& b, const Vec2& ell);
// Tangent cone of Q at vertex i with the ray pointing at the origin.
ConeRay corner_cone_ray(const Polygon& q, std::size_t vertex);
// Corner of the polar dual sitting over the edge p1 -> p2 of a Fano polygon.
ConeRay dual_corner_cone_ray(const Vec2& p1, const Vec2& p2);

Int cone_ray_content(const ConeRay& cr);

struct EdgeReport {
  std::size_t edge_index;
  EdgeStandardForm form;
  SingularityContent content;
};

// Checks integrality, primitive vertices and an interior origin.
bool is_fano(const Polygon& p);
std::vector<EdgeReport> singularity_basket(const Polygon& p);
Int total_content(const std::vector<EdgeReport>& basket);
bool is_qg_rigid(const Polygon& p);

struct CoverData {
  Int n, q, p, w, r, a, m, w0;
};

CoverData canonical_cover_data(const Int& n, const Int& q);

struct SingularFiber {
  std::vector<Point> points;
  bool apex = false;  // all singular points collapsed to the cone apex
};

SingularFiber family_singular_points(const ConeRay& cr, const Int& k, const Rat& t);

struct MutationData {
  std::size_t corner = 0;     // vertex index in Q
  Int k = 1;                  // shear amount
  std::optional<Vec2> n0;     // defaults to rot90 of the corner direction
};

// x -> x + k * max(0, <n0, x>) * shear.
Polygon pl_shear(const Polygon& q, const Vec2& n0, const Vec2& shear, const Int& k);
Polygon mutate(const Polygon& q, const MutationData& mu);

struct GraphNode {
  std::size_t id;
  Polygon polygon;  // unimodular normal form of the Fano polygon
  std::size_t depth;
};

struct GraphEdge {
  std::size_t from, to;
  std::size_t corner;
  Int shear;
};

enum class GraphVerdict { Complete, BudgetExceeded };

struct MutationGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  GraphVerdict verdict = GraphVerdict::Complete;
};

MutationGraph mutation_graph(const Polygon& p, std::size_t node_budget, std::size_t depth_budget);

}  // namespace fanodeg::mutation
