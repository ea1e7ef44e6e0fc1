// Shared fixtures for the unit tests.
#pragma once

#include "fanodeg/degeneration.hpp"
#include "fanodeg/errors.hpp"
#include "fanodeg/scattering.hpp"

#include <string>
#include <vector>

namespace fixtures {

using fanodeg::Rat;
using fanodeg::algebra::Series;
using fanodeg::lattice::Point;
using fanodeg::lattice::Polygon;
using fanodeg::lattice::Vec2;

inline Polygon poly(const std::vector<Point>& pts) { return Polygon::hull(pts); }

// Fan polygon of P^2 and its dual.
inline Polygon p2_fan() { return poly({{1, 0}, {0, 1}, {-1, -1}}); }
inline Polygon p2_dual() { return poly({{-1, -1}, {2, -1}, {-1, 2}}); }
inline Polygon p114_fan() { return poly({{1, 0}, {0, 1}, {-1, -4}}); }
inline Polygon x6_fan() { return poly({{-3, -1}, {3, -1}, {0, 1}}); }
inline Polygon p3511_fan() { return poly({{5, -2}, {-3, -1}, {0, 1}}); }

// Degeneration polygons, split by a wall.
inline Polygon p2_q() { return poly({{0, 0}, {0, 1}, {1, -1}}); }
inline Polygon cubic_q() { return poly({{1, 0}, {0, 1}, {-1, -1}}); }
inline Polygon x6_q() { return poly({{0, 1}, {Rat(-1, 3), 0}, {Rat(1, 3), 0}}); }

inline const std::vector<std::string> p2_names{"s0", "s1", "s2", "u"};
inline const std::vector<std::string> cubic_names{"Z", "U", "Y", "X", "W"};
inline const std::vector<std::string> x6_names{"X1", "X0", "Y", "Z"};

inline Series lattice_series(const std::string& text) {
  return fanodeg::algebra::parse_series(text, fanodeg::algebra::ParseOptions{});
}

inline Series wall_series(const std::string& text) {
  static const std::vector<std::string> names{"W"};
  fanodeg::algebra::ParseOptions o;
  o.dim = 1;
  o.var_names = &names;
  return fanodeg::algebra::parse_series(text, o);
}

inline Series named_series(const std::string& text, const std::vector<std::string>& names) {
  fanodeg::algebra::ParseOptions o;
  o.dim = names.size();
  o.var_names = &names;
  return fanodeg::algebra::parse_series(text, o);
}

inline std::vector<std::string> relation_texts(const fanodeg::degen::DegenerationFamily& f) {
  std::vector<std::string> out;
  for (const auto& r : f.relations) out.push_back(fanodeg::degen::relation_text(r, f.gens.names()));
  return out;
}

inline fanodeg::degen::LabeledGenerators gens(const Polygon& q, const Vec2& wall,
                                              const std::vector<std::string>& names) {
  fanodeg::degen::GeneratorOptions o;
  o.names = names;
  return fanodeg::degen::classify_generators(q, wall, o);
}

inline fanodeg::degen::FamilyOptions family_options(const std::vector<std::string>& names) {
  fanodeg::degen::FamilyOptions o;
  o.generators.names = names;
  return o;
}

// The cubic surface family and its slab data at the three boundary vertices.
inline fanodeg::degen::DegenerationFamily cubic_family(const std::string& equation) {
  fanodeg::degen::DegenerationFamily fam;
  fam.gens = gens(cubic_q(), {1, 0}, cubic_names);
  fam.relations.push_back(fanodeg::degen::parse_relation(equation, fam.gens.names()));
  fam.parameters = {"a", "b", "c"};
  return fam;
}

inline const char* cubic_equation = "X*Y*Z = t*((1 + a*b*c*t)*U^3 + (a*X + b*Y + c*Z)*U^2)";

inline std::vector<fanodeg::degen::ChartData> cubic_charts(const fanodeg::degen::LabeledGenerators& g) {
  auto ratio = [&](const std::string& v) {
    fanodeg::algebra::Exp e(g.size(), 0);
    e[g.index_of("U")] = 1;
    e[g.index_of(v)] = -1;
    return e;
  };
  return {{"X", ratio("X"), wall_series("(1 + a*W^-1)*(1 + b*c*t*W)")},
          {"Y", ratio("Y"), wall_series("(1 + b*W^-1)*(1 + a*c*t*W)")},
          {"Z", ratio("Z"), wall_series("(1 + c*W^-1)*(1 + a*b*t*W)")}};
}

// Three slab lines meeting at the cubic surface joint.
inline fanodeg::scatter::ScatteringDiagram cubic_joint(std::int64_t order) {
  fanodeg::scatter::ScatteringDiagram d;
  d.order = order;
  d.walls = {fanodeg::scatter::make_line({1, 0}, lattice_series("1 + a*t*z^(1,0)")),
             fanodeg::scatter::make_line({0, 1}, lattice_series("1 + b*t*z^(0,1)")),
             fanodeg::scatter::make_line({1, 1}, lattice_series("1 + c*t*z^(-1,-1)"))};
  return d;
}

inline fanodeg::scatter::ScatteringDiagram two_lines(std::int64_t order) {
  fanodeg::scatter::ScatteringDiagram d;
  d.order = order;
  d.walls = {fanodeg::scatter::make_line({1, 0}, lattice_series("1 + t*z^(1,0)")),
             fanodeg::scatter::make_line({0, 1}, lattice_series("1 + t*z^(0,1)"))};
  return d;
}

}  // namespace fixtures
