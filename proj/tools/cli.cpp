#include "cli.hpp"

#include "fanodeg/degeneration.hpp"
#include "fanodeg/errors.hpp"
#include "fanodeg/mutation.hpp"
#include "fanodeg/scattering.hpp"
#include "io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace fanodeg::cli {

using io::json;
using lattice::Polygon;
using lattice::Vec2;

namespace {

struct Request {
  std::string input;
  std::string format = "text";
  std::int64_t order = -1;
  std::string kink = "1";
  std::string rays;
  std::string wall = "(1,0)";
  std::optional<std::size_t> corner;
  std::int64_t shear = 1;
  std::size_t budget = 200;
  std::size_t depth = 8;
  std::vector<std::string> set;
  std::string names;
  std::optional<std::int64_t> bound;
  bool complete = false;
  bool fano = false;
  std::string variant = "homogeneous";
  std::string g = "1";
  std::string f = "1";
  std::string type;
  std::string mode = "complete";
  std::string ideal;
  std::int64_t emax = 3;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::map<std::string, Rat> assignments(const std::vector<std::string>& items) {
  std::map<std::string, Rat> out;
  for (const auto& it : items) {
    auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected name=value, got '" + it + "'", 1, 1);
    try {
      out[it.substr(0, eq)] = parse_rat(it.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed rational in '" + it + "'", 1, static_cast<int>(eq + 2));
    }
  }
  return out;
}

std::pair<Int, Int> parse_type(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw ParseError("expected --type n,q", 1, 1);
  try {
    return {Int(parts[0]), Int(parts[1])};
  } catch (const std::exception&) {
    throw ParseError("malformed --type '" + s + "'", 1, 1);
  }
}

Polygon load_polygon(const Request& r) { return io::polygon_from_json(io::parse_json(io::read_file(r.input))); }

class Output {
 public:
  Output(const Request& r, std::ostream& out) : json_(r.format == "json"), out_(out) {}
  bool json() const { return json_; }
  void emit(const io::json& j, const std::string& text) {
    if (json_)
      out_ << j.dump(2) << "\n";
    else
      out_ << text;
  }

 private:
  bool json_;
  std::ostream& out_;
};

int cmd_analyze(const Request& r, Output& o) {
  Polygon p = load_polygon(r);
  json j{{"polygon", io::polygon_to_json(p)}};
  std::ostringstream os;
  os << "polygon " << io::polygon_text(p) << "\n";
  bool fano = mutation::is_fano(p);
  j["fano"] = fano;
  os << "fano " << (fano ? "yes" : "no") << "\n";
  if (fano) {
    auto basket = mutation::singularity_basket(p);
    j["basket"] = io::basket_to_json(basket);
    for (const auto& e : basket) {
      os << "edge " << e.edge_index << " " << io::type_text(e.form.n, e.form.q) << " content " << e.content.m;
      if (e.content.residual_type)
        os << " residual " << io::type_text(e.content.residual_type->n, e.content.residual_type->q);
      os << "\n";
    }
    Int total = mutation::total_content(basket);
    bool rigid = mutation::is_qg_rigid(p);
    auto g = mutation::mutation_graph(p, r.budget, r.depth);
    bool complete = g.verdict == mutation::GraphVerdict::Complete;
    j["total_content"] = io::rat_to_json(Rat(total));
    j["rigid"] = rigid;
    j["graph"] = {{"nodes", g.nodes.size()}, {"edges", g.edges.size()}, {"verdict", complete ? "complete" : "budget-exceeded"}};
    os << "total_content " << total << "\n";
    os << "rigid " << (rigid ? "yes" : "no") << "\n";
    os << "graph " << g.nodes.size() << " nodes " << g.edges.size() << " edges "
       << (complete ? "complete" : "budget-exceeded") << "\n";
  }
  o.emit(j, os.str());
  return kOk;
}

int cmd_dual(const Request& r, Output& o) {
  Polygon d = lattice::polar_dual(load_polygon(r));
  o.emit(io::polygon_to_json(d), io::polygon_text(d) + "\n");
  return kOk;
}

int cmd_mutate(const Request& r, Output& o) {
  Polygon p = load_polygon(r);
  if (!r.corner) throw DomainError(Errc::InvalidArgument, "mutate", "--corner is required");
  mutation::MutationData mu{*r.corner, Int(r.shear), std::nullopt};
  Polygon out = r.fano ? lattice::polar_dual(mutation::mutate(lattice::polar_dual(p), mu)) : mutation::mutate(p, mu);
  o.emit(io::polygon_to_json(out), io::polygon_text(out) + "\n");
  return kOk;
}

int cmd_graph(const Request& r, Output& o) {
  auto g = mutation::mutation_graph(load_polygon(r), r.budget, r.depth);
  std::ostringstream os;
  for (const auto& n : g.nodes) os << "node " << n.id << " depth " << n.depth << " " << io::polygon_text(n.polygon) << "\n";
  for (const auto& e : g.edges) os << "edge " << e.from << " -> " << e.to << " corner " << e.corner << " shear " << e.shear << "\n";
  os << "verdict " << (g.verdict == mutation::GraphVerdict::Complete ? "complete" : "budget-exceeded") << "\n";
  o.emit(io::graph_to_json(g), os.str());
  return kOk;
}

int cmd_scatter(const Request& r, Output& o) {
  auto d = io::diagram_from_json(io::parse_json(io::read_file(r.input)));
  std::int64_t k = r.order >= 0 ? r.order : d.order;
  auto values = assignments(r.set);
  if (!values.empty()) d = scatter::evaluate(d, values);
  json extra = json::object();
  scatter::ScatteringDiagram out;
  if (r.mode == "complete") {
    out = scatter::scatter_complete(d, k);
  } else if (r.mode == "family") {
    out = scatter::scatter_family(d, k);
  } else if (r.mode == "stabilized") {
    algebra::ParamIdeal j(io::parse_param_monomials(r.ideal));
    auto s = scatter::scatter_stabilized(d, j, r.emax, k);
    out = s.diagram;
    extra["stabilized_at"] = s.stabilized_at ? json(*s.stabilized_at) : json(nullptr);
    extra["universal"] = s.universal;
  } else {
    throw DomainError(Errc::InvalidArgument, "scatter", "unknown mode '" + r.mode + "'");
  }
  out = scatter::canonical(out);
  bool consistent = scatter::loop_product(out, k).defect.identity;
  json j = io::diagram_to_json(out);
  j["consistent"] = consistent;
  for (const auto& [key, v] : extra.items()) j[key] = v;
  std::string text = io::diagram_text(out) + "consistent " + (consistent ? "yes" : "no") + "\n";
  if (extra.contains("stabilized_at"))
    text += "stabilized_at " + (extra["stabilized_at"].is_null() ? std::string("none") : extra["stabilized_at"].dump()) + "\n";
  o.emit(j, text);
  return kOk;
}

degen::FamilyOptions family_options(const Request& r) {
  degen::FamilyOptions fo;
  auto kinks = split(r.kink, ',');
  if (kinks.empty()) throw DomainError(Errc::InvalidArgument, "family", "missing kink");
  fo.kink = Int(kinks[0]);
  fo.corner = r.corner;
  fo.generators.names = split(r.names, ',');
  fo.toric.degree_bound = r.bound ? std::optional<Int>(Int(*r.bound)) : std::nullopt;
  fo.toric.mode = r.complete ? degen::ToricMode::Complete : degen::ToricMode::Minimal;
  if (r.variant == "homogeneous")
    fo.variant = degen::IltenVariant::Homogeneous;
  else if (r.variant == "beta-one")
    fo.variant = degen::IltenVariant::BetaOne;
  else if (r.variant == "contracted")
    fo.variant = degen::IltenVariant::Contracted;
  else
    throw DomainError(Errc::InvalidArgument, "ilten", "unknown variant '" + r.variant + "'");
  return fo;
}

int emit_family(degen::DegenerationFamily f, const Request& r, Output& o) {
  auto values = assignments(r.set);
  if (!values.empty()) {
    for (auto& rel : f.relations) rel.rhs = algebra::evaluate_parameters(rel.rhs, values, true);
    std::erase_if(f.parameters, [&](const std::string& p) { return values.count(p) > 0; });
  }
  o.emit(io::family_to_json(f), degen::family_text(f));
  return kOk;
}

int cmd_mumford(const Request& r, Output& o) {
  Polygon q = load_polygon(r);
  auto fo = family_options(r);
  auto gens = degen::classify_generators(q, io::parse_vec2(r.wall), fo.generators);
  auto kinks = split(r.kink, ',');
  algebra::PLFunction phi = degen::wall_function(gens, fo.kink);
  if (!r.rays.empty()) {
    std::vector<Int> ks;
    for (const auto& s : kinks) ks.push_back(Int(s));
    phi = algebra::PLFunction::from_kinks(io::parse_vec2_list(r.rays), ks);
  }
  return emit_family(degen::mumford_ideal(gens, phi, fo.toric), r, o);
}

int cmd_ilten(const Request& r, Output& o) {
  return emit_family(degen::ilten_ideal(load_polygon(r), io::parse_vec2(r.wall), family_options(r)), r, o);
}

int cmd_slab_family(const Request& r, Output& o) {
  return emit_family(
      degen::slab_family_ideal(load_polygon(r), io::parse_vec2(r.wall), io::parse_wall_series(r.g), family_options(r)),
      r, o);
}

int cmd_local_model(const Request& r, Output& o) {
  auto [n, q] = parse_type(r.type);
  degen::LocalModelInput in{n, q, io::parse_wall_series(r.f), Int(split(r.kink, ',').at(0))};
  auto ring = degen::local_model_relations(in, r.order >= 0 ? r.order : 1);
  json gens = json::array(), rels = json::array();
  std::ostringstream os;
  os << "local model " << io::type_text(n, q) << "\n";
  for (std::size_t i = 0; i < ring.names.size(); ++i) {
    gens.push_back({{"name", ring.names[i]}, {"point", io::vec_to_json(ring.points[i])}});
    os << "  " << ring.names[i] << " " << lattice::to_string(ring.points[i]) << "\n";
  }
  os << "relations\n";
  for (const auto& rel : ring.relations) {
    auto t = degen::relation_text(rel, ring.names);
    rels.push_back(t);
    os << "  " << t << "\n";
  }
  o.emit(json{{"type", io::type_text(n, q)}, {"generators", gens}, {"relations", rels}}, os.str());
  return kOk;
}

int cmd_cover(const Request& r, Output& o) {
  auto [n, q] = parse_type(r.type);
  auto c = degen::qg_cover_family(n, q, io::parse_wall_series(r.f), Int(split(r.kink, ',').at(0)));
  const auto& d = c.data;
  static const std::vector<std::string> xyz{"x", "y", "z"};
  degen::Relation rel;
  rel.lhs = {1, 1, 0};
  rel.rhs = c.rhs;
  std::string eq = degen::relation_text(rel, xyz);
  json iota = json::array();
  for (const auto& row : c.iota) iota.push_back(json::array({io::rat_to_json(Rat(row[0])), io::rat_to_json(Rat(row[1]))}));
  json weights = json::array();
  for (const auto& w : c.weights) weights.push_back(io::rat_to_json(Rat(w)));
  json j{{"type", io::type_text(n, q)},
         {"w", io::rat_to_json(Rat(d.w))},
         {"r", io::rat_to_json(Rat(d.r))},
         {"a", io::rat_to_json(Rat(d.a))},
         {"m", io::rat_to_json(Rat(d.m))},
         {"w0", io::rat_to_json(Rat(d.w0))},
         {"weights", weights},
         {"iota", iota},
         {"relation", eq}};
  std::ostringstream os;
  os << "cover " << io::type_text(n, q) << " w=" << d.w << " r=" << d.r << " a=" << d.a << " m=" << d.m
     << " w0=" << d.w0 << "\n";
  os << "weights " << c.weights[0] << " " << c.weights[1] << " " << c.weights[2] << " mod " << d.r << "\n";
  os << "iota " << iota.dump() << "\n";
  os << eq << "\n";
  o.emit(j, os.str());
  return kOk;
}

int cmd_verify(const Request& r, Output& o) {
  auto in = io::verify_input_from_json(io::parse_json(io::read_file(r.input)));
  auto rep = degen::verify_family_on_charts(in.family, in.charts, r.order >= 0 ? r.order : in.order);
  std::ostringstream os;
  for (const auto& c : rep.charts)
    os << c.vertex << " " << (c.pass ? "pass" : "fail") << (c.pass ? "" : ": " + c.witness) << "\n";
  os << (rep.pass() ? "pass" : "fail") << "\n";
  o.emit(io::verify_report_to_json(rep), os.str());
  return rep.pass() ? kOk : kVerifyFailed;
}

int cmd_roundtrip(const Request& r, Output& o) {
  bool ok = io::roundtrip(r.input);
  o.emit(json{{"roundtrip", ok}}, ok ? "ok\n" : "mismatch\n");
  return ok ? kOk : kVerifyFailed;
}

void report(Output& o, std::ostream& err, const json& j, const std::string& text) {
  if (o.json()) o.emit(json{{"error", j}}, "");
  err << "error: " << text << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Request req;
  CLI::App app{"Fano polygons, mutations, scattering diagrams and degenerations", "fanodeg"};
  app.require_subcommand(1);
  app.add_option("--format", req.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto input = [&](CLI::App* sub, const char* what) { sub->add_option("input", req.input, what)->required(); };
  auto* analyze = app.add_subcommand("analyze", "Basket, content, rigidity and mutation graph summary");
  input(analyze, "polygon JSON");
  auto* dual = app.add_subcommand("dual", "Polar dual polygon");
  input(dual, "polygon JSON");
  auto* mutate = app.add_subcommand("mutate", "Shear a polygon at a corner");
  input(mutate, "polygon JSON");
  auto* graph = app.add_subcommand("graph", "Mutation graph exploration");
  input(graph, "Fano polygon JSON");
  auto* scatter = app.add_subcommand("scatter", "Complete a scattering diagram");
  input(scatter, "diagram JSON");
  auto* mumford = app.add_subcommand("mumford", "Mumford degeneration ideal");
  input(mumford, "polygon JSON");
  auto* ilten = app.add_subcommand("ilten", "Ilten family");
  input(ilten, "polygon JSON");
  auto* slab = app.add_subcommand("slab-family", "Family for a slab polynomial");
  input(slab, "polygon JSON");
  auto* local = app.add_subcommand("local-model", "Local model relations at a boundary vertex");
  auto* cover = app.add_subcommand("cover", "Canonical cover presentation");
  auto* verify = app.add_subcommand("verify", "Check a family on its boundary charts");
  input(verify, "verification JSON");
  auto* rt = app.add_subcommand("roundtrip", "Parse, emit and re-parse an input file");
  input(rt, "JSON or series-text file");

  for (auto* s : app.get_subcommands([](CLI::App*) { return true; })) s->add_option("--format", req.format)->check(CLI::IsMember({"text", "json"}));
  for (auto* s : {scatter, local, verify}) s->add_option("--order", req.order, "Truncation order k");
  for (auto* s : {mumford, ilten, slab, local, cover}) s->add_option("--kink", req.kink, "Kink of phi");
  mumford->add_option("--rays", req.rays, "Fan rays for a multi-kink phi");
  for (auto* s : {mumford, ilten, slab}) {
    s->add_option("--wall", req.wall, "Wall direction (x,y)");
    s->add_option("--names", req.names, "Comma-separated generator names");
    s->add_option("--bound", req.bound, "Toric degree bound");
    s->add_flag("--complete", req.complete, "Use every coprime fiber binomial");
    s->add_option("--set", req.set, "Parameter assignment name=value");
  }
  for (auto* s : {ilten, slab, mutate}) s->add_option("--corner", req.corner, "Corner vertex index");
  ilten->add_option("--variant", req.variant, "homogeneous, beta-one or contracted");
  slab->add_option("--g", req.g, "Slab polynomial in W");
  mutate->add_option("--shear", req.shear, "Shear amount k");
  mutate->add_flag("--fano", req.fano, "Input is the Fano polygon; mutate its dual");
  for (auto* s : {analyze, graph}) {
    s->add_option("--budget", req.budget, "Node budget");
    s->add_option("--depth", req.depth, "Depth budget");
  }
  scatter->add_option("--mode", req.mode, "complete, family or stabilized");
  scatter->add_option("--set", req.set, "Parameter assignment name=value");
  scatter->add_option("--ideal", req.ideal, "Comma-separated parameter monomials generating J");
  scatter->add_option("--emax", req.emax, "Largest stabilization exponent");
  for (auto* s : {local, cover}) {
    s->add_option("--type", req.type, "n,q")->required();
    s->add_option("--f", req.f, "Slab function in W");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  Output o(req, out);
  using Handler = int (*)(const Request&, Output&);
  const std::vector<std::pair<CLI::App*, Handler>> handlers{
      {analyze, cmd_analyze}, {dual, cmd_dual},   {mutate, cmd_mutate}, {graph, cmd_graph},
      {scatter, cmd_scatter}, {mumford, cmd_mumford}, {ilten, cmd_ilten}, {slab, cmd_slab_family},
      {local, cmd_local_model}, {cover, cmd_cover}, {verify, cmd_verify}, {rt, cmd_roundtrip}};
  try {
    for (const auto& [sub, h] : handlers)
      if (sub->parsed()) return h(req, o);
    return kParseError;
  } catch (const ParseError& e) {
    std::string where = e.line() > 0 ? " at line " + std::to_string(e.line()) + ", column " + std::to_string(e.column()) : "";
    report(o, err, json{{"kind", "parse"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}},
           std::string("parse: ") + e.what() + where);
    return kParseError;
  } catch (const DomainError& e) {
    report(o, err,
           json{{"kind", "domain"}, {"code", errc_name(e.code())}, {"operation", e.operation()}, {"detail", e.detail()}},
           std::string(errc_name(e.code())) + " in " + e.operation() + ": " + e.detail());
    return kDomainError;
  } catch (const std::exception& e) {
    report(o, err, json{{"kind", "domain"}, {"code", "InvalidArgument"}, {"detail", e.what()}},
           std::string("InvalidArgument: ") + e.what());
    return kDomainError;
  }
}

}  // namespace fanodeg::cli
