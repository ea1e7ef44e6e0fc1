// Toric ideals of cones over polygons, Mumford degenerations, Ilten and
// slab families, vertex local models, canonical covers and per-chart
// verification of family equations.
#pragma once

#include "fanodeg/algebra.hpp"
#include "fanodeg/mutation.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fanodeg::degen {

using algebra::Exp;
using algebra::Series;
using lattice::ConeVector;
using lattice::Point;
using lattice::Polygon;
using lattice::Vec2;

enum class Region { XSide, YSide, Wall };

const char* region_name(Region r);
Region parse_region(const std::string& s);

struct Generator {
  std::string name;
  ConeVector v;
  Region region = Region::Wall;
};

struct LabeledGenerators {
  std::vector<Generator> gens;
  Vec2 wall{1, 0};  // primitive direction of the dividing line
  Vec2 n0{0, 1};    // positive on the X side

  std::size_t size() const { return gens.size(); }
  std::vector<std::string> names() const;
  std::vector<Int> weights() const;
  // Throws LabelMismatch for unknown names.
  std::size_t index_of(const std::string& name) const;
  ConeVector point(const Exp& a) const;
  // Sum of <n0, m> over the X-side factors of a.
  Int x_weight(const Exp& a) const;
};

struct GeneratorOptions {
  std::optional<Vec2> n0;          // defaults to rot90(wall)
  std::vector<std::string> names;  // defaults to x1.., y1.., w1..
  std::optional<Int> height_bound;
};

// Hilbert basis of C(Q) tagged by side of the line R * wall. Throws
// GenerationFailure when a side is not generated by its tagged generators.
LabeledGenerators classify_generators(const Polygon& q, const Vec2& wall, const GeneratorOptions& opts = {});

// lhs = rhs, where rhs is a polynomial over the generators with
// coefficients in t and the parameters. base and d record the underlying
// binomial lhs - t^d base.
struct Relation {
  Exp lhs;
  Exp base;
  std::int64_t d = 0;
  Series rhs{0};
};

enum class ToricMode {
  Minimal,   // Markov basis: one binomial per new fiber component
  Complete,  // every coprime binomial inside each fiber
};

struct ToricOptions {
  std::optional<Int> degree_bound;  // defaults to the largest kernel degree
  ToricMode mode = ToricMode::Minimal;
};

// Largest weighted degree of either side of a lattice kernel basis vector.
Int kernel_degree_bound(const LabeledGenerators& g);

// Binomials lhs - base (d = 0). Throws VerificationFailure when the
// monomial count modulo the ideal differs from the lattice-point count at
// some degree up to the bound.
std::vector<Relation> toric_ideal(const LabeledGenerators& g, const ToricOptions& opts = {});

enum class BaseRing { T, TAlpha, Homogeneous, Contracted };

const char* base_ring_name(BaseRing b);
BaseRing parse_base_ring(const std::string& s);

struct DegenerationFamily {
  LabeledGenerators gens;
  std::vector<Relation> relations;
  BaseRing base = BaseRing::T;
  std::vector<std::string> parameters;
};

// Orients each toric binomial so its lhs has the larger phi-order and puts
// t^d on the other side.
DegenerationFamily mumford_ideal(const LabeledGenerators& g, const algebra::PLFunction& phi,
                                 const ToricOptions& opts = {});

// kink * max(0, <n0, m>) on the classified generators.
algebra::PLFunction wall_function(const LabeledGenerators& g, const Int& kink);

struct MonodromyMonomial {
  Exp exponents;  // signed, over all generators; nonzero only on the wall
  Vec2 direction; // lattice vector of the ratio, at height zero
};

// Lexicographically least signed exponent vector A^a / B^b of wall
// generators with height zero and primitive wall direction. Throws
// RankDeficient.
MonodromyMonomial monodromy_monomial(const LabeledGenerators& g);

struct CornerData {
  std::size_t vertex;  // index in Q
  Int content;
  Vec2 toward_corner;  // primitive wall vector pointing at the corner
};

// Vertices of Q on the wall line with their corner content; the chosen
// corner is the requested vertex or the one with the largest content.
CornerData wall_corner(const Polygon& q, const Vec2& wall, std::optional<std::size_t> vertex = {});

enum class IltenVariant { Homogeneous, BetaOne, Contracted };

struct FamilyOptions {
  Int kink = 1;
  std::optional<std::size_t> corner;
  GeneratorOptions generators;
  ToricOptions toric;
  IltenVariant variant = IltenVariant::Homogeneous;
  std::string alpha = "a";
  std::string beta = "b";
};

// M1 = t^d (beta + alpha W)^c M2 with c = d / kink, each W power realized by
// a generator monomial over the shifted lattice point. Throws ZeroContent.
DegenerationFamily ilten_ideal(const Polygon& q, const Vec2& wall, const FamilyOptions& opts = {});

// M1 = t^d g(W)^c M2 for a polynomial g in one variable. Throws
// DegreeExceedsContent when deg g exceeds the corner content.
DegenerationFamily slab_family_ideal(const Polygon& q, const Vec2& wall, const Series& g,
                                     const FamilyOptions& opts = {});

// Mumford family of the sheared polygon, with generator names carried over
// along the shear of the X side.
DegenerationFamily mutated_mumford(const Polygon& q, const Vec2& wall, const FamilyOptions& opts = {});

// Specializes every parameter; the result must be binomial.
DegenerationFamily specialize(const DegenerationFamily& f, const std::map<std::string, Rat>& values);

// Equality of the binomial ideals in k[gens, t], checked relation by
// relation through fiber connectivity. Both families must be binomial.
bool same_binomial_ideal(const DegenerationFamily& a, const DegenerationFamily& b);

// Membership of lhs - t^d base in the ideal generated by the relations.
bool binomial_in_ideal(const Exp& lhs, const Exp& base, std::int64_t d, const std::vector<Relation>& rels);

// UV = t^l f(W), truncated at t^(k+1), over the variables (U, V, W).
Relation codim1_model(const Series& f_omega, const Int& l, std::int64_t k);

// Rational roots of a univariate polynomial with their multiplicities.
std::map<Rat, int> rational_roots(const Series& g);

// Local model of a boundary vertex of type 1/n(1,q), in quadrant
// coordinates: lattice points (v1, v2) >= 0 with v1 + q v2 = 0 mod n,
// X side v1 > v2, wall generator (r, r), <n0, v> = (v1 - v2) / w.
struct LocalModelInput {
  Int n, q;
  Series f{1};  // slab function, Laurent in the wall generator
  Int l = 1;
};

struct LocalModelRing {
  mutation::CoverData data;
  Vec2 wall;
  std::vector<std::string> names;
  std::vector<Vec2> points;  // generator points, order matches names
  std::vector<Relation> relations;
};

LocalModelRing local_model_relations(const LocalModelInput& in, std::int64_t k);

bool in_local_lattice(const mutation::CoverData& d, const Vec2& p);
Int local_pairing(const mutation::CoverData& d, const Vec2& p);

// Product of basis elements e_p e_q, as a series over quadrant points.
Series local_model_product(const LocalModelInput& in, const Vec2& p, const Vec2& q, std::int64_t k);

struct CoverPresentation {
  mutation::CoverData data;
  std::vector<Int> weights;  // mu_r weights on x, y, z
  Int iota[3][2];            // the lattice embedding
  Series rhs{3};             // xy = rhs over (x, y, z)
};

// {xy = t^l z^w0 f(z^r)} / mu_r(1, q, a). Throws DegreeExceedsContent when
// deg f > m.
CoverPresentation qg_cover_family(const Int& n, const Int& q, const Series& f, const Int& l);

// Product in the cover ring of the invariant monomials over p and q,
// mapped back to quadrant points by iota*.
Series cover_product(const CoverPresentation& c, const Vec2& p, const Vec2& q, std::int64_t k);

using MultiplicationTable = std::map<std::pair<Vec2, Vec2>, Series>;

// Products over all basis pairs with coordinates at most box.
MultiplicationTable local_table(const LocalModelInput& in, const Int& box, std::int64_t k);
MultiplicationTable cover_table(const CoverPresentation& c, const Int& box, std::int64_t k);

// Slab data on the wall at one boundary vertex.
struct ChartData {
  std::string vertex;  // generator inverted on the chart
  Exp wall_monomial;   // signed exponents over the family generators
  Series f{1};         // slab function in the wall monomial
  Int kink = 1;
};

struct ChartReport {
  std::string vertex;
  bool pass = false;
  std::string witness;
};

struct VerifyReport {
  std::vector<ChartReport> charts;
  bool pass() const;
};

// For each chart: sets the vertex to one, splits the localized relation
// as xy = R0 + x Rx + y Ry, and compares R0 + Rx Ry with t^d f^c W^e up
// to t^k. Throws LabelMismatch.
VerifyReport verify_family_on_charts(const DegenerationFamily& fam, const std::vector<ChartData>& charts,
                                     std::int64_t k);

// Text and parsing of relations in the compact named form.
std::string monomial_text(const Exp& a, const std::vector<std::string>& names);
std::string relation_text(const Relation& r, const std::vector<std::string>& names);
Relation parse_relation(const std::string& text, const std::vector<std::string>& names);
std::string family_text(const DegenerationFamily& f);

}  // namespace fanodeg::degen
