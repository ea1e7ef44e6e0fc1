#include "fanodeg/algebra.hpp"

#include "fanodeg/errors.hpp"

#include <algorithm>

namespace fanodeg::algebra {

using lattice::det;
using lattice::dot;
using lattice::primitive;
using lattice::rot90;

namespace {

// Counterclockwise angular order starting at the direction of `base`.
bool angle_less(const Vec2& base, const Vec2& a, const Vec2& b) {
  auto half = [&](const Vec2& v) {
    Int d = det(base, v);
    return (d > 0 || (d == 0 && dot(base, v) > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return det(a, b) > 0;
}

}  // namespace

PLFunction PLFunction::from_kinks(const std::vector<Vec2>& rays_in, const std::vector<Int>& kinks_in,
                                  std::size_t base) {
  if (rays_in.size() != kinks_in.size() || rays_in.size() < 2 || base >= rays_in.size())
    throw DomainError(Errc::InvalidArgument, "PLFunction", "need matching rays and kinks");
  std::vector<std::pair<Vec2, Int>> rk;
  for (std::size_t i = 0; i < rays_in.size(); ++i) rk.emplace_back(primitive(rays_in[i]), kinks_in[i]);
  Vec2 first = rk[base].first;
  std::sort(rk.begin(), rk.end(), [&](const auto& a, const auto& b) { return angle_less(first, a.first, b.first); });
  PLFunction phi;
  for (std::size_t i = 0; i < rk.size(); ++i) {
    if (i > 0 && rk[i].first == rk[i - 1].first)
      throw DomainError(Errc::InvalidArgument, "PLFunction", "repeated ray");
    phi.rays_.push_back(rk[i].first);
    phi.kinks_.push_back(rk[i].second);
  }
  for (std::size_t i = 0; i < phi.rays_.size(); ++i) {
    const Vec2& a = phi.rays_[i];
    const Vec2& b = phi.rays_[(i + 1) % phi.rays_.size()];
    if (det(a, b) < 0 || (det(a, b) == 0 && dot(a, b) > 0))
      throw DomainError(Errc::InvalidArgument, "PLFunction", "fan cells must be convex");
  }
  Vec2 slope{0, 0};
  phi.slopes_.push_back(slope);
  for (std::size_t i = 1; i <= phi.rays_.size(); ++i) {
    slope = slope + phi.kinks_[i % phi.rays_.size()] * rot90(phi.rays_[i % phi.rays_.size()]);
    if (i < phi.rays_.size()) phi.slopes_.push_back(slope);
  }
  if (!(slope == Vec2{0, 0}))
    throw DomainError(Errc::NonIntegralPhi, "PLFunction", "kinks do not define a single-valued function");
  return phi;
}

PLFunction PLFunction::wall(const Vec2& direction, const Vec2& n0, const Int& kink) {
  Vec2 d = primitive(direction);
  if (dot(n0, d) != 0) throw DomainError(Errc::InvalidArgument, "PLFunction::wall", "n0 must annihilate the wall");
  // Counterclockwise from the base ray the cell must be the side n0 <= 0.
  Vec2 start = dot(n0, rot90(d)) < 0 ? d : -d;
  PLFunction phi = from_kinks({start, -start}, {kink, kink}, 0);
  return phi;
}

std::vector<std::size_t> PLFunction::cells_containing(const Vec2& m) const {
  std::vector<std::size_t> out;
  const std::size_t n = rays_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = rays_[i];
    const Vec2& b = rays_[(i + 1) % n];
    bool inside;
    if (det(a, b) > 0)
      inside = det(a, m) >= 0 && det(m, b) >= 0;
    else  // half-plane cell
      inside = det(a, m) >= 0 || (det(a, m) == 0);
    if (inside) out.push_back(i);
  }
  return out;
}

Int PLFunction::value_on(std::size_t cell, const Vec2& m) const { return dot(slopes_.at(cell), m); }

Int PLFunction::value(const Vec2& m) const {
  auto cells = cells_containing(m);
  if (cells.empty()) throw DomainError(Errc::InvalidArgument, "PLFunction::value", "point outside fan");
  return value_on(cells.front(), m);
}

Int order_of(const Exponent& e, std::size_t cell, const PLFunction& phi) {
  return e.r - phi.value_on(cell, e.m_bar);
}

Int order_on_face(const Exponent& e, const Vec2& tau, const PLFunction& phi) {
  auto cells = phi.cells_containing(tau);
  if (cells.empty()) throw DomainError(Errc::InvalidArgument, "order_on_face", "face outside fan");
  Int best = order_of(e, cells.front(), phi);
  for (std::size_t c : cells) best = std::max(best, order_of(e, c, phi));
  return best;
}

Series wall_cross(const WallCrossing& theta, const Series& g) {
  if (theta.n.size() != g.dim() || theta.f.dim() != g.dim())
    throw DomainError(Errc::InvalidArgument, "wall_cross", "dimension mismatch");
  std::map<std::int64_t, Series> powers;
  Series out = g.empty_like();
  for (const auto& [k, c] : g.terms()) {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < k.m.size(); ++i) e += theta.n[i] * k.m[i];
    Series mono = g.empty_like();
    mono.add_term(k, c);
    if (e == 0) {
      out += mono;
      continue;
    }
    auto it = powers.find(e);
    if (it == powers.end()) {
      Series f = theta.f;
      if (g.order()) f = f.truncated(*g.order());
      if (g.ideal()) f = f.with_ideal(g.ideal());
      it = powers.emplace(e, f.pow(e)).first;
    }
    out += mono * it->second;
  }
  return out;
}

Series compose(const std::vector<WallCrossing>& thetas, const Series& g) {
  Series h = g;
  for (auto it = thetas.rbegin(); it != thetas.rend(); ++it) h = wall_cross(*it, h);
  return h;
}

WallCrossing inverse_crossing(const WallCrossing& theta) {
  WallCrossing inv = theta;
  for (auto& x : inv.n) x = -x;
  return inv;
}

Series evaluate_parameters(const Series& g, const std::map<std::string, Rat>& assignment, bool partial) {
  Series out = g.empty_like();
  for (const auto& [k, c] : g.terms()) {
    Rat coeff = c;
    Key nk{k.t, k.m, {}};
    for (const auto& [p, d] : k.params) {
      auto it = assignment.find(p);
      if (it == assignment.end()) {
        if (!partial)
          throw DomainError(Errc::MissingParameter, "evaluate_parameters", "no value for parameter '" + p + "'");
        nk.params[p] = d;
        continue;
      }
      for (int i = 0; i < d; ++i) coeff *= it->second;
    }
    out.add_term(nk, coeff);
  }
  return out;
}

Series change_of_vertex(const Series& f, std::int64_t k, const Exp& m) {
  Exp km = m;
  for (auto& x : km) x *= k;
  Series mono = f.empty_like();
  mono.add_term(Key{0, km, {}}, 1);
  return f * mono;
}

}  // namespace fanodeg::algebra
