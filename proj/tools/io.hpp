// JSON and text formats for polygons, baskets, mutation graphs, scattering
// diagrams, degeneration families and chart-verification inputs.
#pragma once

#include "fanodeg/degeneration.hpp"
#include "fanodeg/mutation.hpp"
#include "fanodeg/scattering.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace fanodeg::io {

using json = nlohmann::ordered_json;

// Throws ParseError with the line and column of the failure.
json parse_json(std::string_view text);
std::string read_file(const std::string& path);

json rat_to_json(const Rat& r);
// Accepts integers and strings "p" or "p/q".
Rat rat_from_json(const json& j);

// "(x,y)" or "x,y".
lattice::Vec2 parse_vec2(std::string_view text);
std::vector<lattice::Vec2> parse_vec2_list(std::string_view text);
json vec_to_json(const lattice::Vec2& v);
lattice::Vec2 vec_from_json(const json& j);

json polygon_to_json(const lattice::Polygon& p);
lattice::Polygon polygon_from_json(const json& j);
std::string polygon_text(const lattice::Polygon& p);

std::string type_text(const Int& n, const Int& q);
json basket_to_json(const std::vector<mutation::EdgeReport>& basket);
json graph_to_json(const mutation::MutationGraph& g);

json diagram_to_json(const scatter::ScatteringDiagram& d);
scatter::ScatteringDiagram diagram_from_json(const json& j);
std::string diagram_text(const scatter::ScatteringDiagram& d);

algebra::Series parse_lattice_series(std::string_view text, std::optional<std::int64_t> order = {});
algebra::Series parse_wall_series(std::string_view text);  // one variable named W
std::vector<algebra::ParamMono> parse_param_monomials(std::string_view text);

json family_to_json(const degen::DegenerationFamily& f);
degen::DegenerationFamily family_from_json(const json& j);

struct VerifyInput {
  degen::DegenerationFamily family;
  std::vector<degen::ChartData> charts;
  std::int64_t order = 1;
};

// {"family": {...}} or {"polygon", "wall", "names", "relations"}, plus
// "charts": [{"vertex", "wall", "f", "kink"}] and "order".
VerifyInput verify_input_from_json(const json& j);
json verify_report_to_json(const degen::VerifyReport& r);

// Parse, canonicalize, emit and parse again; true when both values agree.
bool roundtrip(const std::string& path);
bool roundtrip_text(const std::string& text, const std::string& name_hint);

}  // namespace fanodeg::io
