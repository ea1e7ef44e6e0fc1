#include "fanodeg/mutation.hpp"

#include "fanodeg/errors.hpp"

#include <deque>
#include <map>

namespace fanodeg::mutation {

using lattice::det;
using lattice::dot;
using lattice::primitive;
using lattice::rot90;

ConeType cone_type(const Vec2& a0, const Vec2& b0) {
  Vec2 a = primitive(a0), b = primitive(b0);
  Int n = det(a, b);
  if (n <= 0) throw DomainError(Errc::InvalidType, "cone_type", "generators not counterclockwise");
  if (n == 1) return {1, 0};
  Int s, t;
  ext_gcd(b.y, -b.x, s, t);
  Vec2 u{s, t};
  return {n, mod_floor(-det(u, a), n)};
}

EdgeStandardForm edge_standard_form(const Vec2& p1, const Vec2& p2) {
  Int n = det(p1, p2);
  if (n <= 0)
    throw DomainError(Errc::InvalidArgument, "edge_standard_form", "edge does not face away from the origin");
  Int theta = lattice::content(p2 - p1);
  Vec2 e = primitive(p2 - p1);
  Int s, t;
  ext_gcd(e.x, e.y, s, t);
  EdgeStandardForm f;
  f.theta = theta;
  f.h = n / theta;
  f.a1 = mod_floor(s * p1.x + t * p1.y, f.h);
  f.a2 = f.a1 + theta;
  ConeType ct = cone_type(p1, p2);
  f.n = ct.n;
  f.q = ct.q;
  return f;
}

EdgeStandardForm standard_form_for_type(const Int& n, const Int& q) {
  if (n < 1 || q < 0 || (n > 1 && (q == 0 || q >= n)) || gcd(n, q) != 1)
    throw DomainError(Errc::InvalidType, "standard_form_for_type", "invalid type 1/" + n.str() + "(1," + q.str() + ")");
  return edge_standard_form(Vec2{n, -q}, Vec2{0, 1});
}

SingularityContent edge_singularity_content(const EdgeStandardForm& e) {
  SingularityContent c;
  c.m = e.theta / e.h;
  c.residual_width = e.theta % e.h;
  if (c.residual_width > 0)
    c.residual_type = cone_type(Vec2{e.a1, -e.h}, Vec2{e.a1 + c.residual_width, -e.h});
  return c;
}

ConeRay make_cone_ray(const Vec2& a0, const Vec2& b0, const Vec2& ell0) {
  Vec2 a = primitive(a0), b = primitive(b0), ell = primitive(ell0);
  if (det(a, b) < 0) std::swap(a, b);
  if (det(a, b) == 0)
    throw DomainError(Errc::InvalidArgument, "make_cone_ray", "degenerate cone");
  if (det(a, ell) <= 0 || det(ell, b) <= 0)
    throw DomainError(Errc::InvalidArgument, "make_cone_ray", "ray is not interior to the cone");
  Vec2 n0 = rot90(ell);
  if (dot(n0, a) < 0) n0 = -n0;
  return ConeRay{Cone2{a, b, false}, ell, n0};
}

ConeRay corner_cone_ray(const Polygon& q, std::size_t i) {
  const Point& v = q.vertex(i);
  Vec2 to_prev = primitive(q.vertex(i + q.size() - 1) - v);
  Vec2 to_next = primitive(q.vertex(i + 1) - v);
  return make_cone_ray(to_next, to_prev, primitive(Point{-v.x, -v.y}));
}

ConeRay dual_corner_cone_ray(const Vec2& p1, const Vec2& p2) {
  // The dual corner u solves <u,p1> = <u,p2> = -1; its two edges lie on
  // <x,p1> = -1 and <x,p2> = -1.
  Int d = det(p1, p2);
  Point u{Rat(p1.y - p2.y, d), Rat(p2.x - p1.x, d)};
  return make_cone_ray(rot90(p1), -rot90(p2), primitive(Point{-u.x, -u.y}));
}

Int cone_ray_content(const ConeRay& cr) {
  const Vec2& v1 = cr.cone.v1;
  const Vec2& v2 = cr.cone.v2;
  Int step = abs(dot(cr.n0, v2));
  Int k = 0;
  for (;;) {
    Vec2 w = v2 - (k + 1) * step * cr.ell;
    Int d = det(v1, w);
    bool is_line = d == 0 && dot(v1, w) < 0;
    bool holds_ray = d > 0 && det(v1, cr.ell) >= 0 && det(cr.ell, w) >= 0;
    if (!is_line && !holds_ray) break;
    ++k;
  }
  return k;
}

bool is_fano(const Polygon& p) {
  if (!p.is_integral() || !p.origin_interior()) return false;
  for (const auto& v : p.vertices())
    if (lattice::content(Vec2{numer(v.x), numer(v.y)}) != 1) return false;
  return true;
}

namespace {

Vec2 as_vec(const Point& p) { return {numer(p.x), numer(p.y)}; }

void require_fano(const Polygon& p, const char* op) {
  if (!is_fano(p)) throw DomainError(Errc::NotFano, op, "polygon is not Fano");
}

}  // namespace

std::vector<EdgeReport> singularity_basket(const Polygon& p) {
  require_fano(p, "singularity_basket");
  std::vector<EdgeReport> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    EdgeStandardForm f = edge_standard_form(as_vec(p.vertex(i)), as_vec(p.vertex(i + 1)));
    out.push_back({i, f, edge_singularity_content(f)});
  }
  return out;
}

Int total_content(const std::vector<EdgeReport>& basket) {
  Int s = 0;
  for (const auto& e : basket) s += e.content.m;
  return s;
}

bool is_qg_rigid(const Polygon& p) {
  require_fano(p, "is_qg_rigid");
  return total_content(singularity_basket(p)) == 0;
}

CoverData canonical_cover_data(const Int& n, const Int& q) {
  if (n < 2 || q <= 0 || q >= n || gcd(n, q) != 1)
    throw DomainError(Errc::InvalidType, "canonical_cover_data",
                      "need 0 < q < n with gcd(n,q) = 1, got (" + n.str() + "," + q.str() + ")");
  CoverData c;
  c.n = n;
  c.q = q;
  c.p = q + 1;
  c.w = gcd(n, c.p);
  c.r = n / c.w;
  c.a = c.p / c.w;
  c.m = c.w / c.r;
  c.w0 = c.w % c.r;
  return c;
}

SingularFiber family_singular_points(const ConeRay& cr, const Int& k, const Rat& t) {
  if (k < 0 || t < 0)
    throw DomainError(Errc::InvalidArgument, "family_singular_points", "negative k or t");
  if (k > cone_ray_content(cr))
    throw DomainError(Errc::ContentExceeded, "family_singular_points", "k exceeds the content");
  SingularFiber out;
  if (t == 0) {
    out.apex = k > 0;
    return out;
  }
  for (Int i = 1; i <= k; ++i)
    out.points.push_back(Rat(i) * t * lattice::to_point(cr.ell));
  return out;
}

Polygon pl_shear(const Polygon& q, const Vec2& n0, const Vec2& shear, const Int& k) {
  auto image = [&](const Point& x) {
    Rat s = dot(n0, x);
    if (s <= 0) return x;
    return x + (Rat(k) * s) * lattice::to_point(shear);
  };
  std::vector<Point> seq;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Point& a = q.vertex(i);
    const Point& b = q.vertex(i + 1);
    seq.push_back(image(a));
    Rat sa = dot(n0, a), sb = dot(n0, b);
    if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) {
      Rat lambda = sa / (sa - sb);
      seq.push_back(a + lambda * (b - a));
    }
  }
  Polygon out = Polygon::hull(seq);
  // The image of the boundary must be the boundary of the image.
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Point& prev = seq[(i + seq.size() - 1) % seq.size()];
    const Point& next = seq[(i + 1) % seq.size()];
    if (lattice::det(seq[i] - prev, next - seq[i]) < 0 || out.contains_strictly(seq[i]))
      throw DomainError(Errc::NonConvexImage, "mutate", "image is not convex at " + lattice::to_string(seq[i]));
  }
  return out;
}

Polygon mutate(const Polygon& q, const MutationData& mu) {
  if (mu.corner >= q.size())
    throw DomainError(Errc::InvalidArgument, "mutate", "corner index out of range");
  if (mu.k < 0) throw DomainError(Errc::InvalidArgument, "mutate", "negative shear");
  const Point& v = q.vertex(mu.corner);
  if (v.x == 0 && v.y == 0)
    throw DomainError(Errc::InvalidArgument, "mutate", "corner at the origin");
  Int c = cone_ray_content(corner_cone_ray(q, mu.corner));
  if (mu.k > c)
    throw DomainError(Errc::ContentExceeded, "mutate",
                      "shear " + mu.k.str() + " exceeds corner content " + c.str());
  if (mu.k == 0) return q;
  Vec2 dir = primitive(v);
  Vec2 n0 = mu.n0 ? *mu.n0 : rot90(dir);
  if (dot(n0, dir) != 0 || lattice::content(n0) != 1)
    throw DomainError(Errc::InvalidArgument, "mutate", "n0 must be a primitive annihilator of the corner ray");
  return pl_shear(q, n0, dir, mu.k);
}

MutationGraph mutation_graph(const Polygon& p, std::size_t node_budget, std::size_t depth_budget) {
  require_fano(p, "mutation_graph");
  MutationGraph g;
  std::map<Polygon, std::size_t> index;
  Polygon root = lattice::unimodular_normal_form(p);
  index.emplace(root, 0);
  g.nodes.push_back({0, root, 0});
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t id = frontier.front();
    frontier.pop_front();
    const GraphNode node = g.nodes[id];
    Polygon q = lattice::polar_dual(node.polygon);
    for (std::size_t i = 0; i < q.size(); ++i) {
      Int c = cone_ray_content(corner_cone_ray(q, i));
      for (Int k = 1; k <= c; ++k) {
        Polygon target = lattice::unimodular_normal_form(lattice::polar_dual(mutate(q, {i, k, std::nullopt})));
        auto it = index.find(target);
        if (it == index.end()) {
          if (node.depth >= depth_budget || g.nodes.size() >= node_budget) {
            g.verdict = GraphVerdict::BudgetExceeded;
            continue;
          }
          std::size_t nid = g.nodes.size();
          it = index.emplace(target, nid).first;
          g.nodes.push_back({nid, target, node.depth + 1});
          frontier.push_back(nid);
        }
        g.edges.push_back({id, it->second, i, k});
      }
    }
  }
  return g;
}

}  // namespace fanodeg::mutation
