#include "fanodeg/degeneration.hpp"

#include "fanodeg/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace fanodeg::degen {

using algebra::Key;
using algebra::ParamMono;
using lattice::IVec;
using lattice::det;
using lattice::dot;
using lattice::primitive;

namespace {

constexpr const char* kOp = "degeneration";

bool geq(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

Exp plus(Exp a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Exp minus(Exp a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

std::int64_t total(const Exp& a) { return std::accumulate(a.begin(), a.end(), std::int64_t{0}); }

bool coprime(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// Larger total degree first, then lexicographically larger.
bool rep_before(const Exp& a, const Exp& b) {
  auto ta = total(a), tb = total(b);
  if (ta != tb) return ta > tb;
  return a > b;
}

// Generators of an affine monoid with a positive integral grading.
struct Grading {
  std::vector<IVec> vecs;
  std::vector<std::int64_t> deg;
};

using Fibers = std::map<IVec, std::vector<Exp>>;

IVec image(const Grading& g, const Exp& a) {
  IVec out(g.vecs.empty() ? 0 : g.vecs[0].size(), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += Int(a[i]) * g.vecs[i][j];
  return out;
}

void enumerate(const Grading& g, std::size_t i, std::int64_t left, Exp& cur, Fibers& out) {
  if (i == g.deg.size()) {
    if (left == 0) out[image(g, cur)].push_back(cur);
    return;
  }
  for (std::int64_t e = 0; e * g.deg[i] <= left; ++e) {
    cur[i] = e;
    enumerate(g, i + 1, left - e * g.deg[i], cur, out);
  }
  cur[i] = 0;
}

Fibers fibers_of_degree(const Grading& g, std::int64_t d) {
  Fibers out;
  Exp cur(g.deg.size(), 0);
  enumerate(g, 0, d, cur, out);
  for (auto& [p, v] : out) std::sort(v.begin(), v.end(), rep_before);
  return out;
}

struct Move {
  Exp l, r;
};

// Connected components of a fiber under the moves; each list sorted by
// rep_before, components ordered by their representatives.
std::vector<std::vector<Exp>> components(const std::vector<Exp>& fiber, const std::vector<Move>& moves) {
  std::map<Exp, std::size_t> index;
  for (std::size_t i = 0; i < fiber.size(); ++i) index[fiber[i]] = i;
  std::vector<std::size_t> parent(fiber.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto join = [&](std::size_t a, const Exp& b) {
    auto it = index.find(b);
    if (it == index.end()) return;
    parent[find(a)] = find(it->second);
  };
  for (std::size_t i = 0; i < fiber.size(); ++i)
    for (const auto& m : moves) {
      if (geq(fiber[i], m.l)) join(i, plus(minus(fiber[i], m.l), m.r));
      if (geq(fiber[i], m.r)) join(i, plus(minus(fiber[i], m.r), m.l));
    }
  std::map<std::size_t, std::vector<Exp>> groups;
  for (std::size_t i = 0; i < fiber.size(); ++i) groups[find(i)].push_back(fiber[i]);
  std::vector<std::vector<Exp>> out;
  for (auto& [r, v] : groups) {
    std::sort(v.begin(), v.end(), rep_before);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return rep_before(a[0], b[0]); });
  return out;
}

// Degree-bounded Markov basis, checked against the expected number of
// points per degree.
std::vector<Move> markov_basis(const Grading& g, std::int64_t bound, ToricMode mode,
                               const std::function<std::size_t(std::int64_t)>& point_count,
                               const std::string& op) {
  std::vector<Move> moves;
  for (std::int64_t d = 1; d <= bound; ++d) {
    Fibers fibers = fibers_of_degree(g, d);
    for (const auto& [p, fiber] : fibers) {
      if (fiber.size() < 2) continue;
      auto comps = components(fiber, moves);
      if (mode == ToricMode::Minimal) {
        for (std::size_t c = 1; c < comps.size(); ++c) moves.push_back({comps[0][0], comps[c][0]});
      } else {
        std::vector<Move> fresh;
        for (std::size_t i = 0; i < fiber.size(); ++i)
          for (std::size_t j = i + 1; j < fiber.size(); ++j)
            if (coprime(fiber[i], fiber[j])) fresh.push_back({fiber[i], fiber[j]});
        moves.insert(moves.end(), fresh.begin(), fresh.end());
      }
    }
  }
  for (std::int64_t d = 1; d <= bound; ++d) {
    Fibers fibers = fibers_of_degree(g, d);
    std::size_t expected = point_count(d);
    if (fibers.size() != expected)
      throw DomainError(Errc::VerificationFailure, op,
                        "degree " + std::to_string(d) + ": generators reach " + std::to_string(fibers.size()) +
                            " of " + std::to_string(expected) + " lattice points");
    for (const auto& [p, fiber] : fibers)
      if (components(fiber, moves).size() != 1)
        throw DomainError(Errc::VerificationFailure, op,
                          "degree " + std::to_string(d) + ": fiber not connected, bound too small");
  }
  return moves;
}

Grading cone_grading(const LabeledGenerators& g) {
  Grading out;
  for (const auto& gen : g.gens) {
    out.vecs.push_back({gen.v.m.x, gen.v.m.y, gen.v.h});
    out.deg.push_back(to_i64(gen.v.h));
  }
  return out;
}

Polygon polygon_of(const LabeledGenerators& g) {
  std::vector<Point> pts;
  for (const auto& gen : g.gens) pts.push_back({Rat(gen.v.m.x, gen.v.h), Rat(gen.v.m.y, gen.v.h)});
  return Polygon::hull(pts);
}

Int phi_order(const LabeledGenerators& g, const algebra::PLFunction& phi, const Exp& a) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Int(a[i]) * phi.value(g.gens[i].v.m);
  return s;
}

std::int64_t max_exponent(const Series& g, const std::string& op) {
  std::int64_t top = 0;
  for (const auto& [k, c] : g.terms()) {
    if (k.m.size() != 1 || k.m[0] < 0)
      throw DomainError(Errc::InvalidArgument, op, "expected a polynomial in one variable");
    top = std::max(top, k.m[0]);
  }
  return top;
}

// Q intersected with the closed half-plane <n0, .> >= 0.
Polygon clip(const Polygon& q, const Vec2& n0) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Point &a = q.vertex(i), &b = q.vertex(i + 1);
    Rat sa = dot(n0, a), sb = dot(n0, b);
    if (sa >= 0) pts.push_back(a);
    if ((sa > 0 && sb < 0) || (sa < 0 && sb > 0)) pts.push_back(a + (sa / (sa - sb)) * (b - a));
  }
  return Polygon::hull(pts);
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::XSide: return "x";
    case Region::YSide: return "y";
    case Region::Wall: return "wall";
  }
  return "?";
}

Region parse_region(const std::string& s) {
  if (s == "x") return Region::XSide;
  if (s == "y") return Region::YSide;
  if (s == "wall") return Region::Wall;
  throw DomainError(Errc::InvalidArgument, "parse_region", "unknown region '" + s + "'");
}

std::vector<std::string> LabeledGenerators::names() const {
  std::vector<std::string> out;
  for (const auto& g : gens) out.push_back(g.name);
  return out;
}

std::vector<Int> LabeledGenerators::weights() const {
  std::vector<Int> out;
  for (const auto& g : gens) out.push_back(g.v.h);
  return out;
}

std::size_t LabeledGenerators::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return i;
  throw DomainError(Errc::LabelMismatch, kOp, "unknown generator '" + name + "'");
}

ConeVector LabeledGenerators::point(const Exp& a) const {
  ConeVector p{{0, 0}, 0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    p.m = p.m + Int(a[i]) * gens[i].v.m;
    p.h += Int(a[i]) * gens[i].v.h;
  }
  return p;
}

Int LabeledGenerators::x_weight(const Exp& a) const {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (gens[i].region == Region::XSide) s += Int(a[i]) * dot(n0, gens[i].v.m);
  return s;
}

LabeledGenerators classify_generators(const Polygon& q, const Vec2& wall, const GeneratorOptions& opts) {
  const std::string op = "classify_generators";
  if (wall == Vec2{0, 0}) throw DomainError(Errc::InvalidArgument, op, "zero wall direction");
  LabeledGenerators out;
  out.wall = primitive(wall);
  out.n0 = opts.n0 ? primitive(*opts.n0) : lattice::rot90(out.wall);
  if (dot(out.n0, out.wall) != 0) throw DomainError(Errc::InvalidArgument, op, "n0 does not annihilate the wall");
  bool pos = false, neg = false;
  for (const auto& v : q.vertices()) {
    Rat s = dot(out.n0, v);
    pos = pos || s > 0;
    neg = neg || s < 0;
  }
  if (!pos || !neg) throw DomainError(Errc::InvalidArgument, op, "wall does not subdivide the polygon");

  lattice::Cone3 cone(q);
  lattice::Cone3 half1(clip(q, out.n0)), half2(clip(q, -out.n0));
  Int bound = opts.height_bound ? *opts.height_bound
                                : std::max(half1.hilbert_height_bound(), half2.hilbert_height_bound());
  std::set<ConeVector> merged;
  for (const auto* half : {&half1, &half2})
    for (const auto& p : lattice::cone_generators_hilbert(*half, bound)) merged.insert(p);
  std::vector<ConeVector> pts(merged.begin(), merged.end());
  std::size_t nx = 0, ny = 0, nw = 0;
  for (const auto& p : pts) {
    Generator g;
    g.v = p;
    Int s = dot(out.n0, p.m);
    g.region = s > 0 ? Region::XSide : (s < 0 ? Region::YSide : Region::Wall);
    switch (g.region) {
      case Region::XSide: g.name = "x" + std::to_string(++nx); break;
      case Region::YSide: g.name = "y" + std::to_string(++ny); break;
      case Region::Wall: g.name = "w" + std::to_string(++nw); break;
    }
    out.gens.push_back(g);
  }
  if (!opts.names.empty()) {
    if (opts.names.size() != out.gens.size())
      throw DomainError(Errc::LabelMismatch, op,
                        std::to_string(opts.names.size()) + " names for " + std::to_string(out.gens.size()) +
                            " generators");
    for (std::size_t i = 0; i < out.gens.size(); ++i) out.gens[i].name = opts.names[i];
  }

  // Each closed side is generated by its own generators and the wall ones.
  Int top = bound;
  for (const auto& g : out.gens) top = std::max(top, g.v.h);
  for (int side : {1, -1}) {
    std::set<ConeVector> reached{ConeVector{{0, 0}, 0}};
    for (Int h = 1; h <= top; ++h)
      for (const auto& p : cone.slice(h)) {
        if (sign(dot(out.n0, p.m)) == -side) continue;
        bool ok = false;
        for (const auto& g : out.gens) {
          if (g.region == (side > 0 ? Region::YSide : Region::XSide)) continue;
          if (g.v.h <= h && reached.count(p - g.v)) {
            ok = true;
            break;
          }
        }
        if (!ok)
          throw DomainError(Errc::GenerationFailure, op,
                            "point " + lattice::to_string(p) + " not generated on the " +
                                (side > 0 ? "x" : "y") + " side");
        reached.insert(p);
      }
  }
  return out;
}

Int kernel_degree_bound(const LabeledGenerators& g) {
  std::vector<IVec> vecs;
  for (const auto& gen : g.gens) vecs.push_back({gen.v.m.x, gen.v.m.y, gen.v.h});
  Int best = 1;
  for (const auto& k : lattice::lattice_kernel(vecs)) {
    Int pos = 0;
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] > 0) pos += k[i] * g.gens[i].v.h;
    best = std::max(best, pos);
  }
  return best;
}

std::vector<Relation> toric_ideal(const LabeledGenerators& g, const ToricOptions& opts) {
  const std::string op = "toric_ideal";
  Int kernel = kernel_degree_bound(g);
  Int top_h = 1;
  for (const auto& gen : g.gens) top_h = std::max(top_h, gen.v.h);
  Int bound = opts.degree_bound ? *opts.degree_bound : kernel + top_h;
  if (bound < kernel)
    throw DomainError(Errc::VerificationFailure, op,
                      "degree bound " + bound.str() + " below kernel degree " + kernel.str());
  lattice::Cone3 cone(polygon_of(g));
  auto moves = markov_basis(
      cone_grading(g), to_i64(bound), opts.mode, [&](std::int64_t d) { return cone.slice(Int(d)).size(); }, op);
  std::vector<Relation> out;
  for (const auto& m : moves) {
    Relation r;
    r.lhs = m.l;
    r.base = m.r;
    r.rhs = Series::monomial(m.r);
    out.push_back(std::move(r));
  }
  return out;
}

const char* base_ring_name(BaseRing b) {
  switch (b) {
    case BaseRing::T: return "t";
    case BaseRing::TAlpha: return "t,alpha";
    case BaseRing::Homogeneous: return "homogeneous";
    case BaseRing::Contracted: return "contracted";
  }
  return "?";
}

BaseRing parse_base_ring(const std::string& s) {
  for (BaseRing b : {BaseRing::T, BaseRing::TAlpha, BaseRing::Homogeneous, BaseRing::Contracted})
    if (s == base_ring_name(b)) return b;
  throw DomainError(Errc::InvalidArgument, "parse_base_ring", "unknown base ring '" + s + "'");
}

algebra::PLFunction wall_function(const LabeledGenerators& g, const Int& kink) {
  return algebra::PLFunction::wall(g.wall, g.n0, kink);
}

DegenerationFamily mumford_ideal(const LabeledGenerators& g, const algebra::PLFunction& phi,
                                 const ToricOptions& opts) {
  DegenerationFamily fam;
  fam.gens = g;
  for (auto r : toric_ideal(g, opts)) {
    Int a = phi_order(g, phi, r.lhs), b = phi_order(g, phi, r.base);
    if (a < b) {
      std::swap(r.lhs, r.base);
      std::swap(a, b);
    }
    r.d = to_i64(a - b);
    r.rhs = Series::monomial(r.base, r.d);
    fam.relations.push_back(std::move(r));
  }
  return fam;
}

MonodromyMonomial monodromy_monomial(const LabeledGenerators& g) {
  std::optional<MonodromyMonomial> best;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j || g.gens[i].region != Region::Wall || g.gens[j].region != Region::Wall) continue;
      const auto& A = g.gens[i].v;
      const auto& B = g.gens[j].v;
      Int c = gcd(A.h, B.h);
      Int a = B.h / c, b = A.h / c;
      Vec2 v = a * A.m - b * B.m;
      if (v == Vec2{0, 0} || det(v, g.wall) != 0 || lattice::content(v) != 1) continue;
      MonodromyMonomial cand;
      cand.exponents.assign(g.size(), 0);
      cand.exponents[i] = to_i64(a);
      cand.exponents[j] = -to_i64(b);
      cand.direction = v;
      if (!best || cand.exponents < best->exponents) best = cand;
    }
  if (!best)
    throw DomainError(Errc::RankDeficient, "monodromy_monomial",
                      "no ratio of two wall generators is a primitive height-zero wall vector");
  return *best;
}

CornerData wall_corner(const Polygon& q, const Vec2& wall0, std::optional<std::size_t> vertex) {
  const std::string op = "wall_corner";
  Vec2 wall = primitive(wall0);
  std::optional<CornerData> best;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Point& v = q.vertex(i);
    if (det(lattice::to_point(wall), v) != 0) continue;
    if (vertex && *vertex != i) continue;
    Vec2 a = primitive(q.vertex(i + 1) - v);
    Vec2 b = primitive(q.vertex(i + q.size() - 1) - v);
    std::optional<mutation::ConeRay> cr;
    for (const Vec2& ell : {wall, -wall}) {
      try {
        cr = mutation::make_cone_ray(a, b, ell);
        break;
      } catch (const DomainError&) {
      }
    }
    if (!cr) continue;
    CornerData c{i, mutation::cone_ray_content(*cr), -cr->ell};
    if (!best || c.content > best->content) best = c;
  }
  if (!best)
    throw DomainError(Errc::InvalidArgument, op,
                      vertex ? "vertex " + std::to_string(*vertex) + " is not a corner on the wall"
                             : std::string("no vertex of the polygon lies on the wall"));
  return *best;
}

namespace {

// Generator monomials over lattice points, by height.
class Realizer {
 public:
  explicit Realizer(const LabeledGenerators& g) : g_(g), grading_(cone_grading(g)) {}

  // Monomial over p closest to ref in x-weight, then sharing the most
  // factors with ref.
  Exp realize(const ConeVector& p, const Exp& ref) {
    if (p.h <= 0) throw DomainError(Errc::NonRepresentable, kOp, "point " + lattice::to_string(p) + " below height one");
    auto h = to_i64(p.h);
    auto it = cache_.find(h);
    if (it == cache_.end()) it = cache_.emplace(h, fibers_of_degree(grading_, h)).first;
    auto f = it->second.find(IVec{p.m.x, p.m.y, p.h});
    if (f == it->second.end())
      throw DomainError(Errc::NonRepresentable, kOp, "no generator monomial over " + lattice::to_string(p));
    Int wref = g_.x_weight(ref);
    auto score = [&](const Exp& a) {
      Int dw = abs(g_.x_weight(a) - wref);
      std::int64_t overlap = 0;
      for (std::size_t i = 0; i < a.size(); ++i) overlap += std::min(a[i], ref[i]);
      return std::make_pair(dw, -overlap);
    };
    const Exp* best = nullptr;
    for (const auto& a : f->second)
      if (!best || score(a) < score(*best)) best = &a;
    return *best;
  }

 private:
  const LabeledGenerators& g_;
  Grading grading_;
  std::map<std::int64_t, Fibers> cache_;
};

DegenerationFamily deform(const Polygon& q, const Vec2& wall, const Series& g, bool contracted,
                          const FamilyOptions& o, const std::string& op) {
  auto gens = classify_generators(q, wall, o.generators);
  auto corner = wall_corner(q, gens.wall, o.corner);
  std::int64_t deg = max_exponent(g, op);
  if (Int(deg) > corner.content)
    throw DomainError(Errc::DegreeExceedsContent, op,
                      "degree " + std::to_string(deg) + " exceeds corner content " + corner.content.str());
  if (o.kink <= 0) throw DomainError(Errc::NonIntegralPhi, op, "kink must be positive");
  auto phi = wall_function(gens, o.kink);
  auto mumford = mumford_ideal(gens, phi, o.toric);
  Realizer realizer(gens);
  DegenerationFamily fam;
  fam.gens = gens;
  for (const auto& r : mumford.relations) {
    if (r.d == 0) {
      fam.relations.push_back(r);
      continue;
    }
    if (r.d % o.kink != 0) throw DomainError(Errc::NonIntegralPhi, op, "order difference not a multiple of the kink");
    auto c = to_i64(Int(r.d) / o.kink);
    Series gc = g.pow(c);
    Relation out = r;
    out.rhs = Series(gens.size());
    ConeVector base = gens.point(r.base);
    for (const auto& [k, coef] : gc.terms()) {
      ConeVector target{base.m + Int(k.m[0]) * corner.toward_corner, base.h};
      Exp n = realizer.realize(target, r.base);
      out.rhs.add_term(Key{k.t + (contracted ? 0 : r.d), n, k.params}, coef);
    }
    fam.relations.push_back(std::move(out));
  }
  auto ps = g.parameters();
  fam.parameters.assign(ps.begin(), ps.end());
  return fam;
}

}  // namespace

DegenerationFamily ilten_ideal(const Polygon& q, const Vec2& wall, const FamilyOptions& o) {
  const std::string op = "ilten_ideal";
  {
    auto gens = classify_generators(q, wall, o.generators);
    if (wall_corner(q, gens.wall, o.corner).content == 0)
      throw DomainError(Errc::ZeroContent, op, "the corner on the wall has zero singularity content");
  }
  Series beta = o.variant == IltenVariant::BetaOne ? Series::one(1) : Series::parameter(1, o.beta);
  Series g = beta + Series::parameter(1, o.alpha) * Series::variable(1, 0);
  auto fam = deform(q, wall, g, o.variant == IltenVariant::Contracted, o, op);
  fam.base = o.variant == IltenVariant::Homogeneous ? BaseRing::Homogeneous
             : o.variant == IltenVariant::BetaOne   ? BaseRing::TAlpha
                                                    : BaseRing::Contracted;
  return fam;
}

DegenerationFamily slab_family_ideal(const Polygon& q, const Vec2& wall, const Series& g, const FamilyOptions& o) {
  auto fam = deform(q, wall, g, false, o, "slab_family_ideal");
  fam.base = fam.parameters.empty() ? BaseRing::T : BaseRing::TAlpha;
  return fam;
}

DegenerationFamily mutated_mumford(const Polygon& q, const Vec2& wall, const FamilyOptions& o) {
  const std::string op = "mutated_mumford";
  auto gens = classify_generators(q, wall, o.generators);
  auto corner = wall_corner(q, gens.wall, o.corner);
  Polygon q2 = mutation::pl_shear(q, gens.n0, corner.toward_corner, 1);
  GeneratorOptions go = o.generators;
  go.n0 = gens.n0;
  go.names.clear();
  auto gens2 = classify_generators(q2, gens.wall, go);
  if (gens2.size() != gens.size())
    throw DomainError(Errc::GenerationFailure, op, "shear changes the number of generators");
  LabeledGenerators carried = gens;
  for (auto& gen : carried.gens) {
    Int s = dot(gens.n0, gen.v.m);
    if (s > 0) gen.v.m = gen.v.m + s * corner.toward_corner;
    bool found = std::any_of(gens2.gens.begin(), gens2.gens.end(), [&](const Generator& x) { return x.v == gen.v; });
    if (!found)
      throw DomainError(Errc::GenerationFailure, op, "image of " + gen.name + " is not a generator");
  }
  return mumford_ideal(carried, wall_function(carried, o.kink), o.toric);
}

DegenerationFamily specialize(const DegenerationFamily& f, const std::map<std::string, Rat>& values) {
  DegenerationFamily out = f;
  for (auto& r : out.relations) r.rhs = algebra::evaluate_parameters(r.rhs, values);
  out.parameters.clear();
  out.base = BaseRing::T;
  return out;
}

bool binomial_in_ideal(const Exp& lhs, const Exp& base, std::int64_t d, const std::vector<Relation>& rels) {
  struct TMove {
    Exp l, r;
    std::int64_t e;
  };
  std::vector<TMove> moves;
  for (const auto& rel : rels) {
    if (rel.rhs.size() != 1)
      throw DomainError(Errc::InvalidArgument, "binomial_in_ideal", "relation is not binomial");
    const auto& [k, c] = *rel.rhs.terms().begin();
    if (c != 1 || !k.params.empty())
      throw DomainError(Errc::InvalidArgument, "binomial_in_ideal", "relation is not a pure binomial");
    moves.push_back({rel.lhs, k.m, k.t});
  }
  using Node = std::pair<Exp, std::int64_t>;
  Node start{lhs, 0}, goal{base, d};
  std::set<Node> seen{start};
  std::deque<Node> queue{start};
  constexpr std::size_t kCap = 1'000'000;
  while (!queue.empty()) {
    Node n = queue.front();
    queue.pop_front();
    if (n == goal) return true;
    auto visit = [&](Node m) {
      if (seen.size() < kCap && seen.insert(m).second) queue.push_back(std::move(m));
    };
    for (const auto& m : moves) {
      if (geq(n.first, m.l)) visit({plus(minus(n.first, m.l), m.r), n.second + m.e});
      if (geq(n.first, m.r) && n.second >= m.e) visit({plus(minus(n.first, m.r), m.l), n.second - m.e});
    }
  }
  return false;
}

bool same_binomial_ideal(const DegenerationFamily& a, const DegenerationFamily& b) {
  if (a.gens.names() != b.gens.names()) return false;
  auto contained = [](const DegenerationFamily& x, const DegenerationFamily& y) {
    for (const auto& r : x.relations) {
      if (r.rhs.size() != 1)
        throw DomainError(Errc::InvalidArgument, "same_binomial_ideal", "relation is not binomial");
      const auto& [k, c] = *r.rhs.terms().begin();
      if (!binomial_in_ideal(r.lhs, k.m, k.t, y.relations)) return false;
    }
    return true;
  };
  return contained(a, b) && contained(b, a);
}

Relation codim1_model(const Series& f, const Int& l, std::int64_t k) {
  max_exponent(f, "codim1_model");
  Relation r;
  r.lhs = {1, 1, 0};
  r.base = {0, 0, 0};
  r.d = to_i64(l);
  r.rhs = Series(3);
  for (const auto& [key, c] : f.terms()) {
    std::int64_t t = key.t + r.d;
    if (t <= k) r.rhs.add_term(Key{t, {0, 0, key.m[0]}, key.params}, c);
  }
  return r;
}

std::map<Rat, int> rational_roots(const Series& g) {
  const std::string op = "rational_roots";
  std::int64_t deg = max_exponent(g, op);
  std::vector<Rat> poly(deg + 1, Rat(0));
  for (const auto& [k, c] : g.terms()) {
    if (k.t != 0 || !k.params.empty()) throw DomainError(Errc::InvalidArgument, op, "coefficients must be rational");
    poly[k.m[0]] = c;
  }
  std::map<Rat, int> roots;
  while (!poly.empty() && poly.front() == 0 && poly.size() > 1) {
    poly.erase(poly.begin());
    roots[Rat(0)]++;
  }
  if (poly.size() <= 1) return roots;
  Int den = 1;
  for (const auto& c : poly) den = lcm(den, denom(c));
  auto divisors = [](Int x) {
    x = abs(x);
    std::vector<Int> out;
    for (Int d = 1; d * d <= x; ++d)
      if (x % d == 0) {
        out.push_back(d);
        if (d * d != x) out.push_back(x / d);
      }
    return out;
  };
  auto eval = [&](const Rat& x) {
    Rat s = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) s = s * x + *it;
    return s;
  };
  auto a0 = numer(poly.front() * Rat(den)), an = numer(poly.back() * Rat(den));
  for (const Int& p : divisors(a0))
    for (const Int& qd : divisors(an))
      for (int sgn : {1, -1}) {
        Rat x(Int(sgn) * p, qd);
        while (poly.size() > 1 && eval(x) == 0) {
          // Synthetic division by (W - x).
          std::vector<Rat> quot(poly.size() - 1);
          Rat carry = 0;
          for (std::size_t i = poly.size(); i-- > 1;) {
            carry = poly[i] + carry * x;
            quot[i - 1] = carry;
          }
          poly = std::move(quot);
          roots[x]++;
        }
      }
  return roots;
}

bool in_local_lattice(const mutation::CoverData& d, const Vec2& p) {
  return p.x >= 0 && p.y >= 0 && mod_floor(p.x + d.q * p.y, d.n) == 0;
}

Int local_pairing(const mutation::CoverData& d, const Vec2& p) { return (p.x - p.y) / d.w; }

Series local_model_product(const LocalModelInput& in, const Vec2& p, const Vec2& q, std::int64_t k) {
  auto d = mutation::canonical_cover_data(in.n, in.q);
  if (!in_local_lattice(d, p) || !in_local_lattice(d, q))
    throw DomainError(Errc::InvalidArgument, "local_model_product", "point outside the local lattice");
  Int a = local_pairing(d, p), b = local_pairing(d, q);
  Vec2 s = p + q;
  Series out(2);
  if (sign(a) * sign(b) >= 0) {
    out.add_term(Key{0, {to_i64(s.x), to_i64(s.y)}, {}}, 1);
    return out;
  }
  Int gamma = std::min(abs(a), abs(b));
  Series f = in.f.pow(to_i64(gamma));
  Vec2 wall{d.r, d.r};
  std::int64_t t0 = to_i64(in.l * gamma);
  for (const auto& [key, c] : f.terms()) {
    std::int64_t t = key.t + t0;
    if (t > k) continue;
    Vec2 pt = s + Int(key.m[0]) * wall;
    if (!in_local_lattice(d, pt))
      throw DomainError(Errc::InvalidArgument, "local_model_product", "slab function leaves the cone");
    out.add_term(Key{t, {to_i64(pt.x), to_i64(pt.y)}, key.params}, c);
  }
  return out;
}

LocalModelRing local_model_relations(const LocalModelInput& in, std::int64_t k) {
  LocalModelRing ring;
  ring.data = mutation::canonical_cover_data(in.n, in.q);
  const auto& d = ring.data;
  ring.wall = {d.r, d.r};
  Int box = d.n + d.r;
  // side: +1 for v1 >= v2, -1 for v2 >= v1.
  auto in_side = [&](const Vec2& p, int side) {
    return in_local_lattice(d, p) && (side > 0 ? p.x >= p.y : p.y >= p.x);
  };
  std::vector<Vec2> xs, ys;
  for (int side : {1, -1}) {
    std::vector<Vec2> pts;
    for (Int x = 0; x <= box; ++x)
      for (Int y = 0; y <= box; ++y)
        if ((x != 0 || y != 0) && in_side({x, y}, side)) pts.push_back({x, y});
    for (const auto& p : pts) {
      if (p == ring.wall) continue;
      bool reducible = false;
      for (const auto& u : pts)
        if (u != p && in_side(p - u, side) && p - u != Vec2{0, 0}) reducible = true;
      if (!reducible) (side > 0 ? xs : ys).push_back(p);
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ring.names.push_back("x" + std::to_string(i + 1));
    ring.points.push_back(xs[i]);
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    ring.names.push_back("y" + std::to_string(i + 1));
    ring.points.push_back(ys[i]);
  }
  ring.names.push_back("w");
  ring.points.push_back(ring.wall);
  const std::size_t ng = ring.points.size();

  // Greedy representation of a cone point by the generators of its side.
  std::function<Exp(const Vec2&)> represent = [&](const Vec2& p) {
    Exp a(ng, 0);
    if (p == Vec2{0, 0}) return a;
    int side = p.x >= p.y ? 1 : -1;
    for (std::size_t i = 0; i < ng; ++i) {
      const Vec2& g = ring.points[i];
      if (!in_side(g, side)) continue;
      Vec2 rest = p - g;
      if (rest == Vec2{0, 0} || in_side(rest, side)) {
        a = represent(rest);
        a[i] += 1;
        return a;
      }
    }
    throw DomainError(Errc::NonRepresentable, "local_model_relations", "point " + lattice::to_string(p));
  };

  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      Relation r;
      r.lhs.assign(ng, 0);
      r.lhs[i] = 1;
      r.lhs[xs.size() + j] = 1;
      r.base = represent(xs[i] + ys[j]);
      Int gamma = std::min(local_pairing(d, xs[i]), -local_pairing(d, ys[j]));
      r.d = to_i64(in.l * gamma);
      Series prod = local_model_product(in, xs[i], ys[j], k);
      r.rhs = Series(ng);
      for (const auto& [key, c] : prod.terms())
        r.rhs.add_term(Key{key.t, represent({key.m[0], key.m[1]}), key.params}, c);
      ring.relations.push_back(std::move(r));
    }

  // Toric relations inside each closed side.
  for (int side : {1, -1}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ng; ++i)
      if (in_side(ring.points[i], side)) idx.push_back(i);
    Grading g;
    std::vector<IVec> vecs;
    for (auto i : idx) {
      g.vecs.push_back({ring.points[i].x, ring.points[i].y});
      g.deg.push_back(to_i64(ring.points[i].x + ring.points[i].y));
      vecs.push_back(g.vecs.back());
    }
    std::int64_t bound = 0;
    for (const auto& kv : lattice::lattice_kernel(vecs)) {
      std::int64_t pos = 0;
      for (std::size_t i = 0; i < kv.size(); ++i)
        if (kv[i] > 0) pos += to_i64(kv[i]) * g.deg[i];
      bound = std::max(bound, pos);
    }
    bound += *std::max_element(g.deg.begin(), g.deg.end());
    auto count = [&](std::int64_t deg) {
      std::size_t n = 0;
      for (Int x = 0; x <= deg; ++x)
        if (in_side({x, Int(deg) - x}, side)) ++n;
      return n;
    };
    for (const auto& m : markov_basis(g, bound, ToricMode::Minimal, count, "local_model_relations")) {
      Relation r;
      r.lhs.assign(ng, 0);
      r.base.assign(ng, 0);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        r.lhs[idx[i]] = m.l[i];
        r.base[idx[i]] = m.r[i];
      }
      r.rhs = Series::monomial(r.base);
      ring.relations.push_back(std::move(r));
    }
  }
  return ring;
}

CoverPresentation qg_cover_family(const Int& n, const Int& q, const Series& f, const Int& l) {
  const std::string op = "qg_cover_family";
  CoverPresentation c;
  c.data = mutation::canonical_cover_data(n, q);
  std::int64_t deg = max_exponent(f, op);
  if (Int(deg) > c.data.m)
    throw DomainError(Errc::DegreeExceedsContent, op,
                      "degree " + std::to_string(deg) + " exceeds content " + c.data.m.str());
  c.weights = {mod_floor(1, c.data.r), mod_floor(c.data.q, c.data.r), mod_floor(c.data.a, c.data.r)};
  c.iota[0][0] = c.data.w;
  c.iota[0][1] = 0;
  c.iota[1][0] = 0;
  c.iota[1][1] = c.data.w;
  c.iota[2][0] = 1;
  c.iota[2][1] = 1;
  c.rhs = Series(3);
  for (const auto& [key, coef] : f.terms())
    c.rhs.add_term(Key{key.t + to_i64(l), {0, 0, to_i64(c.data.w0 + c.data.r * Int(key.m[0]))}, key.params}, coef);
  return c;
}

Series cover_product(const CoverPresentation& c, const Vec2& p, const Vec2& q, std::int64_t k) {
  const auto& d = c.data;
  auto lift = [&](const Vec2& v) -> Exp {
    if (!in_local_lattice(d, v))
      throw DomainError(Errc::InvalidArgument, "cover_product", "point outside the local lattice");
    Int s = local_pairing(d, v);
    if (s >= 0) return {to_i64(s), 0, to_i64(v.y)};
    return {0, to_i64(-s), to_i64(v.x)};
  };
  Exp m = plus(lift(p), lift(q));
  std::int64_t s = std::min(m[0], m[1]);
  Series reduced(3);
  Exp rest{m[0] - s, m[1] - s, m[2]};
  Series rhs = c.rhs.pow(s).truncated(k);
  for (const auto& [key, coef] : rhs.terms())
    reduced.add_term(Key{key.t, plus(rest, key.m), key.params}, coef);
  Series out(2);
  for (const auto& [key, coef] : reduced.terms()) {
    if (key.t > k) continue;
    const auto& e = key.m;
    if (mod_floor(Int(e[0]) * c.weights[0] + Int(e[1]) * c.weights[1] + Int(e[2]) * c.weights[2], d.r) != 0)
      throw DomainError(Errc::VerificationFailure, "cover_product", "monomial is not invariant");
    Int v1 = c.iota[0][0] * e[0] + c.iota[1][0] * e[1] + c.iota[2][0] * e[2];
    Int v2 = c.iota[0][1] * e[0] + c.iota[1][1] * e[1] + c.iota[2][1] * e[2];
    out.add_term(Key{key.t, {to_i64(v1), to_i64(v2)}, key.params}, coef);
  }
  return out;
}

namespace {

std::vector<Vec2> basis_points(const mutation::CoverData& d, const Int& box) {
  std::vector<Vec2> out;
  for (Int x = 0; x <= box; ++x)
    for (Int y = 0; y <= box; ++y)
      if (in_local_lattice(d, {x, y})) out.push_back({x, y});
  return out;
}

}  // namespace

MultiplicationTable local_table(const LocalModelInput& in, const Int& box, std::int64_t k) {
  auto d = mutation::canonical_cover_data(in.n, in.q);
  auto pts = basis_points(d, box);
  MultiplicationTable t;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) t[{pts[i], pts[j]}] = local_model_product(in, pts[i], pts[j], k);
  return t;
}

MultiplicationTable cover_table(const CoverPresentation& c, const Int& box, std::int64_t k) {
  auto pts = basis_points(c.data, box);
  MultiplicationTable t;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) t[{pts[i], pts[j]}] = cover_product(c, pts[i], pts[j], k);
  return t;
}

bool VerifyReport::pass() const {
  return !charts.empty() && std::all_of(charts.begin(), charts.end(), [](const ChartReport& c) { return c.pass; });
}

namespace {

ChartReport verify_chart(const DegenerationFamily& fam, const ChartData& ch, std::int64_t k) {
  const std::string op = "verify_family_on_charts";
  ChartReport rep;
  rep.vertex = ch.vertex;
  const auto& gens = fam.gens;
  const std::size_t ng = gens.size();
  std::size_t v = gens.index_of(ch.vertex);
  if (ch.wall_monomial.size() != ng)
    throw DomainError(Errc::LabelMismatch, op, "wall monomial has the wrong number of exponents");
  auto fail = [&](const std::string& why) {
    rep.pass = false;
    rep.witness = why;
    return rep;
  };

  const Relation* rel = nullptr;
  for (const auto& r : fam.relations)
    if (r.lhs.size() == ng && r.lhs[v] > 0) {
      rel = &r;
      break;
    }
  if (!rel) return fail("no relation involves " + ch.vertex);

  Exp lhs = rel->lhs;
  lhs[v] = 0;
  std::vector<std::size_t> sides;
  for (std::size_t i = 0; i < ng; ++i) {
    if (lhs[i] == 1) sides.push_back(i);
    else if (lhs[i] != 0) return fail("localized lhs is not a product of two variables");
  }
  if (sides.size() != 2) return fail("localized lhs is not a product of two variables");
  const std::size_t x = sides[0], y = sides[1];

  Exp wloc = ch.wall_monomial;
  wloc[v] = 0;
  if (wloc[x] != 0 || wloc[y] != 0) return fail("wall monomial involves a side variable");
  std::size_t lead = ng;
  for (std::size_t i = 0; i < ng; ++i)
    if (wloc[i] != 0) {
      lead = i;
      break;
    }
  if (lead == ng) return fail("wall monomial is trivial on the chart");

  auto wall_power = [&](const Exp& a) -> std::optional<std::int64_t> {
    if (a[lead] % wloc[lead] != 0) return std::nullopt;
    std::int64_t j = a[lead] / wloc[lead];
    for (std::size_t i = 0; i < ng; ++i)
      if (i != v && a[i] != j * wloc[i]) return std::nullopt;
    return j;
  };

  // xy = r0 + x ax + y ay is (x - ay)(y - ax) = r0 + ax ay.
  Series r0(1), ax(1), ay(1);
  for (const auto& [key, c] : rel->rhs.terms()) {
    Exp a = key.m;
    a[v] = 0;
    Series* dst = &r0;
    if (a[x] == 1 && a[y] == 0) {
      dst = &ax;
      a[x] = 0;
    } else if (a[y] == 1 && a[x] == 0) {
      dst = &ay;
      a[y] = 0;
    } else if (a[x] != 0 || a[y] != 0) {
      return fail("unsupported term " + algebra::term_text(key, c, nullptr, true));
    }
    auto j = wall_power(a);
    if (!j) return fail("term " + monomial_text(key.m, gens.names()) + " is not a power of the wall monomial");
    dst->add_term(Key{key.t, {*j}, key.params}, c);
  }
  for (const Series* s : {&ax, &ay})
    if (!s->is_zero() && *s->min_t() < 1) return fail("side correction without positive t-order");

  // lhs point = e * W + b * V.
  ConeVector pl = gens.point(rel->lhs), pw = gens.point(ch.wall_monomial), pv = gens.gens[v].v;
  if (pw.h != 0) return fail("wall monomial is not at height zero");
  if (pl.h % pv.h != 0) return fail("relation degree is not a multiple of the vertex weight");
  Int b = pl.h / pv.h;
  Vec2 rest = pl.m - b * pv.m;
  if (det(rest, pw.m) != 0) return fail("relation is not a wall power on this chart");
  Int e = pw.m.x != 0 ? rest.x / pw.m.x : rest.y / pw.m.y;
  if (e * pw.m != rest) return fail("relation is not an integral wall power on this chart");

  if (ch.kink <= 0 || rel->d % ch.kink != 0) return fail("t-order not a multiple of the kink");
  std::int64_t c = to_i64(Int(rel->d) / ch.kink);
  Series expected = (ch.f.pow(c) * Series::monomial({to_i64(e)}, rel->d)).truncated(k);
  Series got = (r0 + ax * ay).truncated(k);
  Series diff = (got - expected).truncated(k);
  if (diff.is_zero()) {
    rep.pass = true;
    return rep;
  }
  const auto& [key, dc] = *diff.terms().begin();
  Key wit = key;
  std::ostringstream os;
  os << "t^" << key.t << " W^" << key.m[0];
  for (const auto& [p, d] : key.params) os << " " << p << "^" << d;
  os << ": got " << to_string(got.coefficient(wit)) << ", expected " << to_string(expected.coefficient(wit));
  return fail(os.str());
}

}  // namespace

VerifyReport verify_family_on_charts(const DegenerationFamily& fam, const std::vector<ChartData>& charts,
                                     std::int64_t k) {
  VerifyReport rep;
  for (const auto& ch : charts) rep.charts.push_back(verify_chart(fam, ch, k));
  return rep;
}

std::string monomial_text(const Exp& a, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names.at(i);
    if (a[i] != 1) out += "^" + std::to_string(a[i]);
  }
  return out.empty() ? "1" : out;
}

std::string relation_text(const Relation& r, const std::vector<std::string>& names) {
  std::string out = monomial_text(r.lhs, names) + " = ";
  if (r.rhs.is_zero()) return out + "0";
  std::int64_t t0 = *r.rhs.min_t();
  if (t0 > 0 && r.rhs.size() > 1) {
    Series rest(r.rhs.dim());
    for (const auto& [key, c] : r.rhs.terms()) rest.add_term(Key{key.t - t0, key.m, key.params}, c);
    out += (t0 == 1 ? std::string("t") : "t^" + std::to_string(t0)) + "*(" + to_text(rest, &names) + ")";
  } else {
    out += to_text(r.rhs, &names);
  }
  return out;
}

Relation parse_relation(const std::string& text, const std::vector<std::string>& names) {
  auto eq = text.find('=');
  if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
    throw ParseError("relation needs exactly one '='", 1, static_cast<int>(text.size()));
  algebra::ParseOptions po;
  po.dim = names.size();
  po.var_names = &names;
  Series lhs = algebra::parse_series(text.substr(0, eq), po);
  Series rhs;
  try {
    rhs = algebra::parse_series(text.substr(eq + 1), po);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), e.line(), e.column() + static_cast<int>(eq) + 1);
  }
  if (lhs.size() != 1) throw ParseError("lhs must be a single monomial", 1, 1);
  const auto& [lk, lc] = *lhs.terms().begin();
  if (lc != 1 || lk.t != 0 || !lk.params.empty()) throw ParseError("lhs must be a bare monomial", 1, 1);
  Relation r;
  r.lhs = lk.m;
  r.rhs = rhs;
  r.d = rhs.is_zero() ? 0 : *rhs.min_t();
  r.base = rhs.is_zero() ? Exp(names.size(), 0) : rhs.terms().begin()->first.m;
  return r;
}

std::string family_text(const DegenerationFamily& f) {
  std::ostringstream os;
  auto names = f.gens.names();
  os << "weights";
  for (const auto& w : f.gens.weights()) os << " " << w;
  os << "\nbase " << base_ring_name(f.base) << "\n";
  if (!f.parameters.empty()) {
    os << "parameters";
    for (const auto& p : f.parameters) os << " " << p;
    os << "\n";
  }
  os << "generators\n";
  for (const auto& g : f.gens.gens)
    os << "  " << g.name << " " << lattice::to_string(g.v.m) << " " << g.v.h << " " << region_name(g.region) << "\n";
  os << "relations\n";
  for (const auto& r : f.relations) os << "  " << relation_text(r, names) << "\n";
  return os.str();
}

}  // namespace fanodeg::degen
