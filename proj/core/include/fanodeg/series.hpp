// Truncated polynomials in lattice monomials z^m, the degeneration
// variable t and named formal parameters.
#pragma once

#include "fanodeg/arith.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fanodeg::algebra {

using Exp = std::vector<std::int64_t>;
using ParamMono = std::map<std::string, int>;

struct Key {
  std::int64_t t = 0;
  Exp m;
  ParamMono params;
  friend bool operator==(const Key&, const Key&) = default;
  friend bool operator<(const Key& a, const Key& b);
};

// Monomial ideal in the parameters. A monomial lies in the ideal when some
// generator divides it.
class ParamIdeal {
 public:
  ParamIdeal() = default;
  explicit ParamIdeal(std::vector<ParamMono> gens);
  const std::vector<ParamMono>& generators() const { return gens_; }
  bool contains(const ParamMono& p) const;
  // Exponent a with p^a in the ideal, if any.
  std::optional<int> nilpotency(const std::string& p) const;
  ParamIdeal merged(const ParamIdeal& other) const;
  friend bool operator==(const ParamIdeal&, const ParamIdeal&) = default;

 private:
  std::vector<ParamMono> gens_;
};

ParamMono mul(const ParamMono& a, const ParamMono& b);
int degree(const ParamMono& p);
bool divides(const ParamMono& a, const ParamMono& b);

class Series {
 public:
  using TermMap = std::map<Key, Rat>;

  explicit Series(std::size_t dim = 2) : dim_(dim) {}

  static Series constant(std::size_t dim, const Rat& c);
  static Series one(std::size_t dim) { return constant(dim, 1); }
  static Series monomial(const Exp& m, std::int64_t t = 0, const ParamMono& params = {},
                         const Rat& c = 1);
  static Series variable(std::size_t dim, std::size_t index, std::int64_t power = 1);
  static Series parameter(std::size_t dim, const std::string& name, int power = 1);
  static Series t_power(std::size_t dim, std::int64_t power);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  std::size_t size() const { return terms_.size(); }

  std::optional<std::int64_t> order() const { return order_; }
  const std::shared_ptr<const ParamIdeal>& ideal() const { return ideal_; }

  // Drops terms of t-order above k; subsequent products stay truncated.
  Series truncated(std::int64_t k) const;
  Series with_ideal(std::shared_ptr<const ParamIdeal> ideal) const;
  Series untruncated() const;

  void add_term(const Key& k, const Rat& c);
  Rat coefficient(const Key& k) const;
  Rat constant_term() const;
  std::optional<std::int64_t> min_t() const;
  std::set<std::string> parameters() const;

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series& operator*=(const Rat& c);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Rat& c) { return a *= c; }
  friend Series operator*(const Rat& c, Series a) { return a *= c; }
  friend bool operator==(const Series& a, const Series& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  Series pow(std::int64_t k) const;
  // Geometric-series inverse; throws NonInvertibleWallFunction when the
  // non-constant part is not nilpotent in the truncated ring.
  Series inverse() const;

  // Terms whose key satisfies pred.
  template <class Pred>
  Series filtered(Pred pred) const {
    Series out = empty_like();
    for (const auto& [k, c] : terms_)
      if (pred(k)) out.terms_.emplace(k, c);
    return out;
  }

  Series empty_like() const;

 private:
  bool kept(const Key& k) const;
  void set_truncation(const Series& o);

  std::size_t dim_;
  TermMap terms_;
  std::optional<std::int64_t> order_;
  std::shared_ptr<const ParamIdeal> ideal_;
};

// Text emission. With var_names, terms use the compact form "c*t^r*a*x^2";
// without, the lattice form "c * z^(a,b) * t^r * a^i * b^j".
std::string to_text(const Series& s, const std::vector<std::string>* var_names = nullptr);
std::string term_text(const Key& k, const Rat& c, const std::vector<std::string>* var_names,
                      bool leading);

struct ParseOptions {
  std::size_t dim = 2;
  const std::vector<std::string>* var_names = nullptr;
  std::optional<std::int64_t> order;
};

// Parses sums and products of rationals, t, parameters, named variables,
// z^(a,b) monomials and parenthesized subexpressions. Throws ParseError.
Series parse_series(std::string_view text, const ParseOptions& opts);

}  // namespace fanodeg::algebra
