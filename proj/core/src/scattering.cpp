#include "fanodeg/scattering.hpp"

#include "fanodeg/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fanodeg::scatter {

using algebra::Key;
using algebra::WallCrossing;
using lattice::det;
using lattice::dot;
using lattice::primitive;
using lattice::rot90;

namespace {

Vec2 to_vec(const Exp& m) { return {Int(m.at(0)), Int(m.at(1))}; }
Exp to_exp(const Vec2& v) { return {to_i64(v.x), to_i64(v.y)}; }

bool angle_less(const Vec2& base, const Vec2& a, const Vec2& b) {
  auto half = [&](const Vec2& v) {
    Int d = det(base, v);
    return (d > 0 || (d == 0 && dot(base, v) > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return det(a, b) > 0;
}

bool is_zero_exp(const Exp& m) {
  return std::all_of(m.begin(), m.end(), [](std::int64_t x) { return x == 0; });
}

void check_exponents(const Wall& w, const char* op) {
  for (const auto& [k, c] : w.f.terms()) {
    if (is_zero_exp(k.m)) continue;
    Vec2 m = to_vec(k.m);
    if (det(m, w.direction) != 0 || (w.kind == WallKind::Ray && dot(m, w.direction) < 0))
      throw DomainError(Errc::InvalidArgument, op,
                        "exponent " + lattice::to_string(m) + " is not along the wall direction " +
                            lattice::to_string(w.direction));
  }
}

Vec2 line_direction(const Vec2& d) {
  Vec2 p = primitive(d);
  if (p.x < 0 || (p.x == 0 && p.y < 0)) p = -p;
  return p;
}

bool same_support(const Wall& a, const Wall& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == WallKind::Ray) return a.direction == b.direction;
  return line_direction(a.direction) == line_direction(b.direction);
}

}  // namespace

Series factor_product(const std::vector<SlabFactor>& factors) {
  Series f = Series::one(2);
  for (const auto& fa : factors) {
    Series one = Series::one(2);
    one.add_term(Key{fa.t, fa.m, fa.params}, fa.coefficient);
    f *= one;
  }
  return f;
}

Wall make_line(const Vec2& direction, const Series& f) {
  Wall w{WallKind::Line, primitive(direction), f, {}};
  check_exponents(w, "make_line");
  return w;
}

Wall make_ray(const Vec2& direction, const Series& f) {
  Wall w{WallKind::Ray, primitive(direction), f, {}};
  check_exponents(w, "make_ray");
  return w;
}

Wall make_slab(const Vec2& direction, const std::vector<SlabFactor>& factors) {
  Wall w = make_line(direction, factor_product(factors));
  w.factors = factors;
  return w;
}

ScatteringDiagram canonical(const ScatteringDiagram& d) {
  ScatteringDiagram out = d;
  out.walls.clear();
  for (const auto& w : d.walls) {
    Wall nw = w;
    if (nw.kind == WallKind::Line) nw.direction = line_direction(nw.direction);
    auto it = std::find_if(out.walls.begin(), out.walls.end(), [&](const Wall& o) { return same_support(o, nw); });
    if (it == out.walls.end()) {
      out.walls.push_back(nw);
    } else {
      it->f *= nw.f;
      it->factors.insert(it->factors.end(), nw.factors.begin(), nw.factors.end());
    }
  }
  out.walls.erase(std::remove_if(out.walls.begin(), out.walls.end(), [](const Wall& w) { return w.f.is_one(); }),
                  out.walls.end());
  const Vec2 east{1, 0};
  std::stable_sort(out.walls.begin(), out.walls.end(), [&](const Wall& a, const Wall& b) {
    if (a.kind != b.kind) return a.kind == WallKind::Line;
    if (a.direction != b.direction) return angle_less(east, a.direction, b.direction);
    return false;
  });
  return out;
}

std::vector<WallCrossing> loop_crossings(const ScatteringDiagram& d) {
  struct Crossing {
    Vec2 position;
    std::size_t wall;
    WallCrossing theta;
  };
  std::vector<Crossing> cs;
  for (std::size_t i = 0; i < d.walls.size(); ++i) {
    const Wall& w = d.walls[i];
    std::vector<Vec2> positions{w.direction};
    if (w.kind == WallKind::Line) positions.push_back(-w.direction);
    for (const auto& u : positions) cs.push_back({u, i, WallCrossing{to_exp(rot90(u)), w.f}});
  }
  std::stable_sort(cs.begin(), cs.end(),
                   [&](const Crossing& a, const Crossing& b) { return angle_less(d.base, a.position, b.position); });
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size() && cs[j].position == cs[i].position; ++j) {
      if (same_support(d.walls[cs[i].wall], d.walls[cs[j].wall]))
        throw DomainError(Errc::IllegalLoop, "loop_product",
                          "walls share the support through " + lattice::to_string(cs[i].position));
    }
  }
  std::vector<WallCrossing> out;
  for (auto& c : cs) out.push_back(std::move(c.theta));
  return out;
}

namespace {

Series basis_monomial(std::size_t i, std::int64_t k, const std::shared_ptr<const ParamIdeal>& ideal) {
  Exp e{0, 0};
  e[i] = 1;
  Series s = Series::monomial(e).truncated(k);
  return ideal ? s.with_ideal(ideal) : s;
}

LoopProduct run_loop(const ScatteringDiagram& d, std::int64_t k) {
  auto traversal = loop_crossings(d);
  std::reverse(traversal.begin(), traversal.end());
  LoopProduct lp;
  Series z1 = basis_monomial(0, k, d.ideal), z2 = basis_monomial(1, k, d.ideal);
  lp.image_e1 = algebra::compose(traversal, z1);
  lp.image_e2 = algebra::compose(traversal, z2);
  Series d1 = lp.image_e1 - z1, d2 = lp.image_e2 - z2;
  if (d1.is_zero() && d2.is_zero()) return lp;
  lp.defect.identity = false;
  std::int64_t lo = INT64_MAX;
  for (const Series* s : {&d1, &d2})
    if (auto m = s->min_t()) lo = std::min(lo, *m);
  lp.defect.order = lo;
  for (const Series* s : {&d1, &d2}) lp.defect.terms.push_back(s->filtered([&](const Key& key) { return key.t == lo; }));
  return lp;
}

std::int64_t degree(const Key& key, const ParamIdeal* ideal) {
  std::int64_t deg = key.t;
  if (ideal)
    for (const auto& [p, e] : key.params)
      if (ideal->nilpotency(p)) deg += e;
  return deg;
}

struct Completion {
  ScatteringDiagram diagram;
  std::vector<Wall> added;
};

ScatteringDiagram with_truncation(const ScatteringDiagram& d, std::int64_t k) {
  ScatteringDiagram out = d;
  out.order = k;
  for (auto& w : out.walls) {
    w.f = w.f.truncated(k);
    if (d.ideal) w.f = w.f.with_ideal(d.ideal);
  }
  return out;
}

ScatteringDiagram assemble(const ScatteringDiagram& initial, const std::map<Vec2, Series>& added) {
  ScatteringDiagram d = initial;
  for (const auto& [u, f] : added) d.walls.push_back(Wall{WallKind::Ray, u, f, {}});
  return canonical(d);
}

Completion complete_impl(const ScatteringDiagram& input, std::int64_t k) {
  if (k < 0) throw DomainError(Errc::InvalidArgument, "scatter_complete", "negative order");
  ScatteringDiagram init = canonical(with_truncation(input, k));
  const ParamIdeal* ideal = input.ideal.get();
  std::set<std::string> params;
  for (const auto& w : init.walls) {
    if (w.f.constant_term() == 0)
      throw DomainError(Errc::NonUnitWall, "scatter_complete", "wall function without a unit term");
    for (const auto& [key, c] : w.f.terms()) {
      if (key.t == 0 && key.params.empty() && is_zero_exp(key.m)) continue;
      if (degree(key, ideal) == 0)
        throw DomainError(Errc::NonUnitWall, "scatter_complete",
                          "factor " + algebra::term_text(key, c, nullptr, true) + " on the wall through " +
                              lattice::to_string(w.direction) + " is not nilpotent");
    }
    for (const auto& p : w.f.parameters()) params.insert(p);
  }
  std::int64_t dmax = k;
  if (ideal)
    for (const auto& p : params)
      if (auto a = ideal->nilpotency(p)) dmax += *a - 1;

  std::map<Vec2, Series> added;
  for (std::int64_t deg = 1; deg <= dmax; ++deg) {
    ScatteringDiagram cur = with_truncation(assemble(init, added), std::min(k, deg));
    LoopProduct lp = run_loop(cur, std::min(k, deg));
    const Exp e1{1, 0}, e2{0, 1};
    std::map<Key, std::pair<Rat, Rat>> groups;  // key with exponent m relative to the basis monomial
    auto collect = [&](const Series& image, const Exp& e, bool first) {
      for (const auto& [key, c] : image.terms()) {
        if (key.t == 0 && key.params.empty() && key.m == e) {
          if (c != 1) throw DomainError(Errc::DefectNotRayDecomposable, "scatter_complete", "unit term changed");
          continue;
        }
        std::int64_t dg = degree(key, ideal);
        if (dg < deg)
          throw DomainError(Errc::DefectNotRayDecomposable, "scatter_complete",
                            "defect below the current degree " + std::to_string(deg));
        if (dg > deg) continue;
        Key rel{key.t, {key.m[0] - e[0], key.m[1] - e[1]}, key.params};
        auto& slot = groups[rel];
        (first ? slot.first : slot.second) += c;
      }
    };
    collect(lp.image_e1, e1, true);
    collect(lp.image_e2, e2, false);
    for (const auto& [rel, coeffs] : groups) {
      if (is_zero_exp(rel.m))
        throw DomainError(Errc::DefectNotRayDecomposable, "scatter_complete", "defect at exponent zero");
      Vec2 m = to_vec(rel.m);
      Vec2 u = primitive(m);
      Vec2 n = rot90(u);
      Rat p1(n.x), p2(n.y);  // <n, e1>, <n, e2>
      Rat cprime = p1 != 0 ? -coeffs.first / p1 : -coeffs.second / p2;
      if (coeffs.first != -p1 * cprime || coeffs.second != -p2 * cprime)
        throw DomainError(Errc::DefectNotRayDecomposable, "scatter_complete",
                          "defect at " + lattice::to_string(m) + " is not tangent to a ray");
      Series factor = Series::one(2);
      factor.add_term(rel, cprime);
      auto it = added.find(u);
      if (it == added.end())
        added.emplace(u, factor);
      else
        it->second *= factor;
    }
  }
  Completion out;
  out.diagram = with_truncation(assemble(init, added), k);
  out.diagram = canonical(out.diagram);
  LoopProduct check = run_loop(out.diagram, k);
  if (!check.defect.identity)
    throw DomainError(Errc::DefectNotRayDecomposable, "scatter_complete",
                      "completed diagram is not consistent at order " + std::to_string(check.defect.order));
  for (const auto& [u, f] : added) {
    Series g = f.truncated(k);
    if (input.ideal) g = g.with_ideal(input.ideal);
    if (!g.is_one()) out.added.push_back(Wall{WallKind::Ray, u, g, {}});
  }
  return out;
}

}  // namespace

LoopProduct loop_product(const ScatteringDiagram& d, std::int64_t k) {
  return run_loop(with_truncation(d, k), k);
}

ScatteringDiagram scatter_complete(const ScatteringDiagram& d, std::int64_t k) {
  return complete_impl(d, k).diagram;
}

ScatteringDiagram scatter_family(const ScatteringDiagram& d, std::int64_t k) {
  return complete_impl(d, k).diagram;
}

ScatteringDiagram evaluate(const ScatteringDiagram& d, const std::map<std::string, Rat>& assignment) {
  ScatteringDiagram out = d;
  for (auto& w : out.walls) {
    w.f = algebra::evaluate_parameters(w.f, assignment);
    w.factors.clear();
  }
  return canonical(out);
}

StabilizationResult scatter_stabilized(const ScatteringDiagram& d, const ParamIdeal& j,
                                       std::int64_t e_max, std::int64_t k) {
  StabilizationResult result;
  ScatteringDiagram universal = d;
  std::vector<Vec2> bad_directions;
  std::set<std::string> params;
  int counter = 0;
  for (auto& w : universal.walls) {
    std::vector<SlabFactor> factors = w.factors;
    if (factors.empty()) {
      Series rest = w.f - Series::one(2);
      if (rest.size() == 1 && w.f.constant_term() == 1) {
        const auto& [key, c] = *rest.terms().begin();
        factors.push_back({c, key.t, key.params, key.m});
      }
    }
    bool changed = false;
    for (auto& fa : factors) {
      if (fa.t != 0 || !fa.params.empty()) continue;
      std::string name = "t_" + std::to_string(++counter);
      fa.params[name] = 1;
      result.universal.push_back(name);
      Vec2 dir = primitive(to_vec(fa.m));
      if (std::find(bad_directions.begin(), bad_directions.end(), dir) == bad_directions.end())
        bad_directions.push_back(dir);
      changed = true;
    }
    if (changed) {
      w.factors = factors;
      w.f = factor_product(factors);
    }
    for (const auto& p : w.f.parameters()) params.insert(p);
  }
  if (bad_directions.size() > 2 || (bad_directions.size() == 2 && !(bad_directions[0] == -bad_directions[1])))
    throw DomainError(Errc::NonUnitWall, "scatter_stabilized", "bad factors in more than two opposite directions");
  for (const auto& p : params) {
    if (std::find(result.universal.begin(), result.universal.end(), p) != result.universal.end()) continue;
    if (!j.nilpotency(p))
      throw DomainError(Errc::NonArtinianQuotient, "scatter_stabilized", "parameter '" + p + "' is not nilpotent modulo J");
  }
  std::optional<std::vector<Wall>> previous;
  ScatteringDiagram previous_diagram;
  for (std::int64_t e = 1; e <= e_max + 1; ++e) {
    std::vector<ParamMono> gens = j.generators();
    for (const auto& u : result.universal) gens.push_back(ParamMono{{u, static_cast<int>(e)}});
    universal.ideal = std::make_shared<const ParamIdeal>(std::move(gens));
    Completion c = complete_impl(universal, k);
    std::vector<Wall> added = canonical(ScatteringDiagram{c.added, k, d.joint, d.base, universal.ideal}).walls;
    if (previous && *previous == added) {
      result.stabilized_at = e - 1;
      result.diagram = previous_diagram;
      result.added = *previous;
      return result;
    }
    if (e > e_max) break;
    previous = added;
    previous_diagram = c.diagram;
  }
  result.diagram = previous_diagram;
  if (previous) result.added = *previous;
  return result;
}

}  // namespace fanodeg::scatter
