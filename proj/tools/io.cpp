#include "io.hpp"

#include "fanodeg/errors.hpp"

#include <fstream>
#include <sstream>

namespace fanodeg::io {

using algebra::Series;
using lattice::Point;
using lattice::Polygon;
using lattice::Vec2;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what, 0, 0); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t int_from_json(const json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

std::string string_from_json(const json& j) {
  if (!j.is_string()) bad("expected a string, got " + j.dump());
  return j.get<std::string>();
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON", line, col);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json rat_to_json(const Rat& r) {
  if (denom(r) == 1 && abs(numer(r)) < Int(1) << 62) return to_i64(numer(r));
  return to_string(r);
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (!j.is_string()) bad("expected a rational, got " + j.dump());
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::exception&) {
    bad("malformed rational '" + j.get<std::string>() + "'");
  }
}

Vec2 parse_vec2(std::string_view text) {
  auto v = parse_vec2_list(text);
  if (v.size() != 1) throw ParseError("expected one vector, got '" + std::string(text) + "'", 1, 1);
  return v[0];
}

std::vector<Vec2> parse_vec2_list(std::string_view text) {
  std::vector<Int> nums;
  std::string cur;
  auto flush = [&](std::size_t pos) {
    if (cur.empty()) return;
    try {
      nums.push_back(Int(cur));
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + cur + "'", 1, static_cast<int>(pos));
    }
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && cur.empty())) {
      cur += c;
    } else if (c == ',' || c == '(' || c == ')' || c == ' ' || c == ';') {
      flush(i + 1);
    } else {
      throw ParseError(std::string("unexpected '") + c + "' in vector", 1, static_cast<int>(i + 1));
    }
  }
  flush(text.size());
  if (nums.empty() || nums.size() % 2) throw ParseError("vectors need an even number of integers", 1, 1);
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < nums.size(); i += 2) out.push_back({nums[i], nums[i + 1]});
  return out;
}

json vec_to_json(const Vec2& v) { return json::array({rat_to_json(Rat(v.x)), rat_to_json(Rat(v.y))}); }

Vec2 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected a pair of integers, got " + j.dump());
  Rat x = rat_from_json(j[0]), y = rat_from_json(j[1]);
  if (denom(x) != 1 || denom(y) != 1) bad("expected integers, got " + j.dump());
  return {numer(x), numer(y)};
}

json polygon_to_json(const Polygon& p) {
  json vs = json::array();
  for (const auto& v : p.vertices()) vs.push_back(json::array({rat_to_json(v.x), rat_to_json(v.y)}));
  return json{{"vertices", vs}};
}

Polygon polygon_from_json(const json& j) {
  const json& vs = field(j, "vertices");
  if (!vs.is_array()) bad("'vertices' must be an array");
  std::vector<Point> pts;
  for (const auto& v : vs) {
    if (!v.is_array() || v.size() != 2) bad("vertex must be a pair, got " + v.dump());
    pts.push_back({rat_from_json(v[0]), rat_from_json(v[1])});
  }
  return Polygon::hull(pts);
}

std::string polygon_text(const Polygon& p) {
  std::string out;
  for (const auto& v : p.vertices()) out += (out.empty() ? "" : " ") + lattice::to_string(v);
  return out;
}

std::string type_text(const Int& n, const Int& q) { return "1/" + n.str() + "(1," + q.str() + ")"; }

json basket_to_json(const std::vector<mutation::EdgeReport>& basket) {
  json out = json::array();
  for (const auto& e : basket) {
    json r{{"edge", e.edge_index},
           {"type", type_text(e.form.n, e.form.q)},
           {"n", rat_to_json(Rat(e.form.n))},
           {"q", rat_to_json(Rat(e.form.q))},
           {"content", rat_to_json(Rat(e.content.m))}};
    if (e.content.residual_type)
      r["residual"] = type_text(e.content.residual_type->n, e.content.residual_type->q);
    else
      r["residual"] = nullptr;
    out.push_back(r);
  }
  return out;
}

json graph_to_json(const mutation::MutationGraph& g) {
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.nodes)
    nodes.push_back({{"id", n.id}, {"depth", n.depth}, {"polygon", polygon_to_json(n.polygon)}});
  for (const auto& e : g.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"corner", e.corner}, {"shear", rat_to_json(Rat(e.shear))}});
  return json{{"nodes", nodes},
              {"edges", edges},
              {"verdict", g.verdict == mutation::GraphVerdict::Complete ? "complete" : "budget-exceeded"}};
}

Series parse_lattice_series(std::string_view text, std::optional<std::int64_t> order) {
  algebra::ParseOptions po;
  po.dim = 2;
  po.order = order;
  return algebra::parse_series(text, po);
}

Series parse_wall_series(std::string_view text) {
  static const std::vector<std::string> names{"W"};
  algebra::ParseOptions po;
  po.dim = 1;
  po.var_names = &names;
  return algebra::parse_series(text, po);
}

std::vector<algebra::ParamMono> parse_param_monomials(std::string_view text) {
  std::vector<algebra::ParamMono> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    Series m = parse_lattice_series(item);
    if (m.size() != 1) throw ParseError("expected a parameter monomial, got '" + item + "'", 1, 1);
    const auto& [k, c] = *m.terms().begin();
    if (c != 1 || k.t != 0 || k.m != algebra::Exp{0, 0} || k.params.empty())
      throw ParseError("expected a parameter monomial, got '" + item + "'", 1, 1);
    out.push_back(k.params);
  }
  return out;
}

namespace {

std::string param_mono_text(const algebra::ParamMono& p) {
  std::string out;
  for (const auto& [name, e] : p) out += (out.empty() ? "" : "*") + name + (e == 1 ? "" : "^" + std::to_string(e));
  return out;
}

}  // namespace

json diagram_to_json(const scatter::ScatteringDiagram& d) {
  json walls = json::array();
  for (const auto& w : d.walls) {
    json jw{{"support",
             {{"kind", w.kind == scatter::WallKind::Line ? "line" : "ray"},
              {"direction", vec_to_json(w.direction)},
              {"origin", json::array({0, 0})}}},
            {"function", algebra::to_text(w.f)}};
    if (!w.factors.empty()) {
      json fs = json::array();
      for (const auto& f : w.factors) {
        json params = json::object();
        for (const auto& [p, e] : f.params) params[p] = e;
        fs.push_back({{"coefficient", rat_to_json(f.coefficient)},
                      {"t", f.t},
                      {"params", params},
                      {"m", json::array({f.m.at(0), f.m.at(1)})}});
      }
      jw["factors"] = fs;
    }
    walls.push_back(jw);
  }
  json ideal = json::array();
  if (d.ideal)
    for (const auto& g : d.ideal->generators()) ideal.push_back(param_mono_text(g));
  return json{{"order", d.order},
              {"joint", d.joint == scatter::JointKind::Vertex ? "vertex" : "cell"},
              {"base", vec_to_json(d.base)},
              {"ideal", ideal},
              {"walls", walls}};
}

scatter::ScatteringDiagram diagram_from_json(const json& j) {
  scatter::ScatteringDiagram d;
  d.order = j.contains("order") ? int_from_json(j.at("order")) : 1;
  if (j.contains("joint")) {
    auto s = string_from_json(j.at("joint"));
    if (s == "vertex") d.joint = scatter::JointKind::Vertex;
    else if (s == "cell") d.joint = scatter::JointKind::Cell;
    else bad("unknown joint kind '" + s + "'");
  }
  if (j.contains("base")) d.base = vec_from_json(j.at("base"));
  if (j.contains("ideal")) {
    std::vector<algebra::ParamMono> gens;
    for (const auto& g : j.at("ideal")) {
      auto ms = parse_param_monomials(string_from_json(g));
      gens.insert(gens.end(), ms.begin(), ms.end());
    }
    if (!gens.empty()) d.ideal = std::make_shared<const algebra::ParamIdeal>(gens);
  }
  for (const auto& jw : field(j, "walls")) {
    const json& sup = field(jw, "support");
    auto kind = string_from_json(field(sup, "kind"));
    if (kind != "line" && kind != "ray") bad("unknown wall kind '" + kind + "'");
    if (sup.contains("origin") && vec_from_json(sup.at("origin")) != Vec2{0, 0})
      bad("walls must pass through the joint at the origin");
    Vec2 dir = vec_from_json(field(sup, "direction"));
    scatter::Wall w;
    if (jw.contains("factors")) {
      std::vector<scatter::SlabFactor> fs;
      for (const auto& jf : jw.at("factors")) {
        scatter::SlabFactor f;
        f.coefficient = rat_from_json(field(jf, "coefficient"));
        f.t = jf.contains("t") ? int_from_json(jf.at("t")) : 0;
        if (jf.contains("params"))
          for (const auto& [p, e] : jf.at("params").items()) f.params[p] = static_cast<int>(int_from_json(e));
        Vec2 m = vec_from_json(field(jf, "m"));
        f.m = {to_i64(m.x), to_i64(m.y)};
        fs.push_back(f);
      }
      w = scatter::make_slab(dir, fs);
      if (kind == "ray") w.kind = scatter::WallKind::Ray;
    } else {
      Series f = parse_lattice_series(string_from_json(field(jw, "function")));
      w = kind == "line" ? scatter::make_line(dir, f) : scatter::make_ray(dir, f);
    }
    d.walls.push_back(std::move(w));
  }
  return d;
}

std::string diagram_text(const scatter::ScatteringDiagram& d) {
  std::ostringstream os;
  os << "order " << d.order << "\n";
  for (const auto& w : d.walls)
    os << (w.kind == scatter::WallKind::Line ? "line " : "ray ") << lattice::to_string(w.direction) << ": "
       << algebra::to_text(w.f) << "\n";
  return os.str();
}

json family_to_json(const degen::DegenerationFamily& f) {
  auto names = f.gens.names();
  json gens = json::array(), rels = json::array(), weights = json::array();
  for (const auto& g : f.gens.gens) {
    gens.push_back({{"name", g.name},
                    {"m", vec_to_json(g.v.m)},
                    {"height", rat_to_json(Rat(g.v.h))},
                    {"region", degen::region_name(g.region)}});
    weights.push_back(rat_to_json(Rat(g.v.h)));
  }
  for (const auto& r : f.relations)
    rels.push_back({{"text", degen::relation_text(r, names)}, {"d", r.d}, {"base", degen::monomial_text(r.base, names)}});
  return json{{"weights", weights},
              {"base", degen::base_ring_name(f.base)},
              {"parameters", f.parameters},
              {"wall", vec_to_json(f.gens.wall)},
              {"n0", vec_to_json(f.gens.n0)},
              {"generators", gens},
              {"relations", rels}};
}

namespace {

algebra::Exp monomial_from_text(const std::string& text, const std::vector<std::string>& names) {
  algebra::ParseOptions po;
  po.dim = names.size();
  po.var_names = &names;
  Series m = algebra::parse_series(text, po);
  if (m.size() != 1) throw ParseError("expected a monomial, got '" + text + "'", 1, 1);
  const auto& [k, c] = *m.terms().begin();
  if (c != 1 || k.t != 0 || !k.params.empty()) throw ParseError("expected a bare monomial, got '" + text + "'", 1, 1);
  return k.m;
}

std::vector<degen::Relation> relations_from_json(const json& rels, const std::vector<std::string>& names) {
  std::vector<degen::Relation> out;
  for (const auto& jr : rels) {
    if (jr.is_string()) {
      out.push_back(degen::parse_relation(jr.get<std::string>(), names));
      continue;
    }
    auto r = degen::parse_relation(string_from_json(field(jr, "text")), names);
    if (jr.contains("d")) r.d = int_from_json(jr.at("d"));
    if (jr.contains("base")) r.base = monomial_from_text(string_from_json(jr.at("base")), names);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

degen::DegenerationFamily family_from_json(const json& j) {
  degen::DegenerationFamily f;
  if (j.contains("wall")) f.gens.wall = vec_from_json(j.at("wall"));
  if (j.contains("n0")) f.gens.n0 = vec_from_json(j.at("n0"));
  for (const auto& jg : field(j, "generators")) {
    degen::Generator g;
    g.name = string_from_json(field(jg, "name"));
    g.v.m = vec_from_json(field(jg, "m"));
    Rat h = rat_from_json(field(jg, "height"));
    if (denom(h) != 1 || h <= 0) bad("generator height must be a positive integer");
    g.v.h = numer(h);
    g.region = jg.contains("region") ? degen::parse_region(string_from_json(jg.at("region"))) : degen::Region::Wall;
    f.gens.gens.push_back(g);
  }
  if (j.contains("base")) f.base = degen::parse_base_ring(string_from_json(j.at("base")));
  if (j.contains("parameters"))
    for (const auto& p : j.at("parameters")) f.parameters.push_back(string_from_json(p));
  f.relations = relations_from_json(field(j, "relations"), f.gens.names());
  return f;
}

VerifyInput verify_input_from_json(const json& j) {
  VerifyInput in;
  if (j.contains("family")) {
    in.family = family_from_json(j.at("family"));
  } else {
    Polygon q = polygon_from_json(field(j, "polygon"));
    degen::GeneratorOptions go;
    if (j.contains("names"))
      for (const auto& n : j.at("names")) go.names.push_back(string_from_json(n));
    Vec2 wall = j.contains("wall") ? vec_from_json(j.at("wall")) : Vec2{1, 0};
    in.family.gens = degen::classify_generators(q, wall, go);
    in.family.relations = relations_from_json(field(j, "relations"), in.family.gens.names());
  }
  in.order = j.contains("order") ? int_from_json(j.at("order")) : 1;
  auto names = in.family.gens.names();
  for (const auto& jc : field(j, "charts")) {
    degen::ChartData c;
    c.vertex = string_from_json(field(jc, "vertex"));
    c.wall_monomial = monomial_from_text(string_from_json(field(jc, "wall")), names);
    c.f = jc.contains("f") ? parse_wall_series(string_from_json(jc.at("f"))) : Series::one(1);
    if (jc.contains("kink")) c.kink = Int(int_from_json(jc.at("kink")));
    in.charts.push_back(std::move(c));
  }
  return in;
}

json verify_report_to_json(const degen::VerifyReport& r) {
  json charts = json::array();
  for (const auto& c : r.charts) {
    json jc{{"vertex", c.vertex}, {"pass", c.pass}};
    if (!c.pass) jc["witness"] = c.witness;
    charts.push_back(jc);
  }
  return json{{"pass", r.pass()}, {"charts", charts}};
}

bool roundtrip_text(const std::string& text, const std::string& name_hint) {
  bool is_json = name_hint.size() >= 5 && name_hint.substr(name_hint.size() - 5) == ".json";
  if (!is_json) {
    Series s = parse_lattice_series(text);
    return parse_lattice_series(algebra::to_text(s)) == s;
  }
  json j = parse_json(text);
  auto emit = [](const json& in) -> std::string {
    if (in.contains("vertices")) return polygon_to_json(polygon_from_json(in)).dump();
    if (in.contains("walls")) return diagram_to_json(scatter::canonical(diagram_from_json(in))).dump();
    if (in.contains("charts")) {
      auto v = verify_input_from_json(in);
      json out = in;
      out["family"] = family_to_json(v.family);
      return out.dump();
    }
    if (in.contains("relations")) return family_to_json(family_from_json(in)).dump();
    bad("unrecognized JSON document");
  };
  std::string first = emit(j);
  return emit(parse_json(first)) == first;
}

bool roundtrip(const std::string& path) { return roundtrip_text(read_file(path), path); }

}  // namespace fanodeg::io
