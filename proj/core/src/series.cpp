#include "fanodeg/series.hpp"

#include "fanodeg/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fanodeg::algebra {

bool operator<(const Key& a, const Key& b) {
  if (a.t != b.t) return a.t < b.t;
  if (a.m != b.m) return a.m < b.m;
  return a.params < b.params;
}

ParamMono mul(const ParamMono& a, const ParamMono& b) {
  ParamMono out = a;
  for (const auto& [p, d] : b) out[p] += d;
  return out;
}

int degree(const ParamMono& p) {
  int d = 0;
  for (const auto& [name, e] : p) d += e;
  return d;
}

bool divides(const ParamMono& a, const ParamMono& b) {
  for (const auto& [p, d] : a) {
    auto it = b.find(p);
    if (it == b.end() || it->second < d) return false;
  }
  return true;
}

ParamIdeal::ParamIdeal(std::vector<ParamMono> gens) : gens_(std::move(gens)) {
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

bool ParamIdeal::contains(const ParamMono& p) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const ParamMono& g) { return divides(g, p); });
}

std::optional<int> ParamIdeal::nilpotency(const std::string& p) const {
  std::optional<int> best;
  for (const auto& g : gens_)
    if (g.size() == 1 && g.begin()->first == p && (!best || g.begin()->second < *best))
      best = g.begin()->second;
  return best;
}

ParamIdeal ParamIdeal::merged(const ParamIdeal& other) const {
  std::vector<ParamMono> all = gens_;
  all.insert(all.end(), other.gens_.begin(), other.gens_.end());
  return ParamIdeal(std::move(all));
}

Series Series::constant(std::size_t dim, const Rat& c) {
  Series s(dim);
  s.add_term(Key{0, Exp(dim, 0), {}}, c);
  return s;
}

Series Series::monomial(const Exp& m, std::int64_t t, const ParamMono& params, const Rat& c) {
  Series s(m.size());
  s.add_term(Key{t, m, params}, c);
  return s;
}

Series Series::variable(std::size_t dim, std::size_t index, std::int64_t power) {
  Exp m(dim, 0);
  m.at(index) = power;
  return monomial(m);
}

Series Series::parameter(std::size_t dim, const std::string& name, int power) {
  return monomial(Exp(dim, 0), 0, ParamMono{{name, power}});
}

Series Series::t_power(std::size_t dim, std::int64_t power) { return monomial(Exp(dim, 0), power); }

bool Series::is_one() const {
  return terms_.size() == 1 && terms_.begin()->second == 1 && terms_.begin()->first.t == 0 &&
         terms_.begin()->first.params.empty() &&
         std::all_of(terms_.begin()->first.m.begin(), terms_.begin()->first.m.end(),
                     [](std::int64_t x) { return x == 0; });
}

Series Series::empty_like() const {
  Series s(dim_);
  s.order_ = order_;
  s.ideal_ = ideal_;
  return s;
}

bool Series::kept(const Key& k) const {
  if (order_ && k.t > *order_) return false;
  if (ideal_ && !k.params.empty() && ideal_->contains(k.params)) return false;
  return true;
}

void Series::add_term(const Key& k, const Rat& c) {
  if (c == 0 || !kept(k)) return;
  if (k.m.size() != dim_)
    throw DomainError(Errc::InvalidArgument, "Series::add_term", "exponent dimension mismatch");
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat Series::coefficient(const Key& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat Series::constant_term() const { return coefficient(Key{0, Exp(dim_, 0), {}}); }

std::optional<std::int64_t> Series::min_t() const {
  std::optional<std::int64_t> best;
  for (const auto& [k, c] : terms_)
    if (!best || k.t < *best) best = k.t;
  return best;
}

std::set<std::string> Series::parameters() const {
  std::set<std::string> out;
  for (const auto& [k, c] : terms_)
    for (const auto& [p, d] : k.params) out.insert(p);
  return out;
}

Series Series::truncated(std::int64_t k) const {
  Series s = *this;
  s.order_ = order_ ? std::min(*order_, k) : k;
  for (auto it = s.terms_.begin(); it != s.terms_.end();)
    it = s.kept(it->first) ? std::next(it) : s.terms_.erase(it);
  return s;
}

Series Series::with_ideal(std::shared_ptr<const ParamIdeal> ideal) const {
  Series s = *this;
  if (s.ideal_ && ideal && !(*s.ideal_ == *ideal))
    s.ideal_ = std::make_shared<const ParamIdeal>(s.ideal_->merged(*ideal));
  else if (ideal)
    s.ideal_ = std::move(ideal);
  for (auto it = s.terms_.begin(); it != s.terms_.end();)
    it = s.kept(it->first) ? std::next(it) : s.terms_.erase(it);
  return s;
}

Series Series::untruncated() const {
  Series s = *this;
  s.order_.reset();
  s.ideal_.reset();
  return s;
}

void Series::set_truncation(const Series& o) {
  if (o.order_) order_ = order_ ? std::min(*order_, *o.order_) : *o.order_;
  if (o.ideal_) {
    if (!ideal_)
      ideal_ = o.ideal_;
    else if (ideal_ != o.ideal_ && !(*ideal_ == *o.ideal_))
      ideal_ = std::make_shared<const ParamIdeal>(ideal_->merged(*o.ideal_));
  }
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& [k, c] : s.terms_) c = -c;
  return s;
}

Series& Series::operator+=(const Series& o) {
  if (o.dim_ != dim_) throw DomainError(Errc::InvalidArgument, "Series::+", "dimension mismatch");
  set_truncation(o);
  for (auto it = terms_.begin(); it != terms_.end();)
    it = kept(it->first) ? std::next(it) : terms_.erase(it);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series& Series::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  if (a.dim_ != b.dim_) throw DomainError(Errc::InvalidArgument, "Series::*", "dimension mismatch");
  Series out = a.empty_like();
  out.set_truncation(b);
  Key k;
  k.m.resize(a.dim_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      k.t = ka.t + kb.t;
      if (out.order_ && k.t > *out.order_) continue;
      for (std::size_t i = 0; i < a.dim_; ++i) k.m[i] = ka.m[i] + kb.m[i];
      k.params = kb.params.empty() ? ka.params : mul(ka.params, kb.params);
      out.add_term(k, ca * cb);
    }
  }
  return out;
}

Series& Series::operator*=(const Series& o) { return *this = *this * o; }

Series Series::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  Series result = one(dim_);
  result.set_truncation(*this);
  Series base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Series Series::inverse() const {
  Rat c0 = constant_term();
  if (c0 == 0)
    throw DomainError(Errc::NonInvertibleWallFunction, "inverse", "no unit constant term");
  Series nil = *this - constant(dim_, c0);
  nil *= Rat(1) / c0;
  for (const auto& [k, c] : nil.terms_) {
    bool t_positive = k.t > 0 && order_;
    bool param_nilpotent = false;
    if (ideal_)
      for (const auto& [p, d] : k.params)
        if (ideal_->nilpotency(p)) param_nilpotent = true;
    if (!t_positive && !param_nilpotent)
      throw DomainError(Errc::NonInvertibleWallFunction, "inverse",
                        "term " + term_text(k, c, nullptr, true) + " is not nilpotent");
  }
  // 1/(c0 (1 + N)) = (1/c0) sum (-N)^j
  Series sum = one(dim_);
  sum.set_truncation(*this);
  Series power = sum;
  Series neg = -nil;
  for (int guard = 0; guard < 100000; ++guard) {
    power *= neg;
    if (power.is_zero()) {
      sum *= Rat(1) / c0;
      return sum;
    }
    sum += power;
  }
  throw DomainError(Errc::NonInvertibleWallFunction, "inverse", "geometric series did not terminate");
}

namespace {

std::string rat_text(const Rat& c) { return fanodeg::to_string(c); }

}  // namespace

std::string term_text(const Key& k, const Rat& c, const std::vector<std::string>* names,
                      bool leading) {
  std::vector<std::string> factors;
  if (names) {
    if (k.t == 1)
      factors.push_back("t");
    else if (k.t != 0)
      factors.push_back("t^" + std::to_string(k.t));
    for (const auto& [p, d] : k.params) factors.push_back(d == 1 ? p : p + "^" + std::to_string(d));
    for (std::size_t i = 0; i < k.m.size(); ++i) {
      if (k.m[i] == 0) continue;
      factors.push_back(k.m[i] == 1 ? (*names)[i] : (*names)[i] + "^" + std::to_string(k.m[i]));
    }
  } else {
    if (std::any_of(k.m.begin(), k.m.end(), [](std::int64_t x) { return x != 0; })) {
      std::string z = "z^(";
      for (std::size_t i = 0; i < k.m.size(); ++i) z += (i ? "," : "") + std::to_string(k.m[i]);
      factors.push_back(z + ")");
    }
    if (k.t == 1)
      factors.push_back("t");
    else if (k.t != 0)
      factors.push_back("t^" + std::to_string(k.t));
    for (const auto& [p, d] : k.params) factors.push_back(d == 1 ? p : p + "^" + std::to_string(d));
  }
  const std::string sep = names ? "*" : " * ";
  Rat mag = abs(c);
  std::string body;
  if (factors.empty() || mag != 1) body = rat_text(mag);
  for (const auto& f : factors) body += (body.empty() ? "" : sep) + f;
  if (leading) return c < 0 ? "-" + body : body;
  return (c < 0 ? " - " : " + ") + body;
}

std::string to_text(const Series& s, const std::vector<std::string>* names) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    out += term_text(k, c, names, first);
    first = false;
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : s_(text), opts_(opts) {}

  Series run() {
    Series v = expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (opts_.order) v = v.truncated(*opts_.order);
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("series: " + msg, line, col);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || (static_cast<unsigned char>(c) & 0x80);
  }
  static bool ident_char(char c) {
    return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
  }

  bool atom_ahead() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '(';
  }

  Series expr() {
    Series acc(opts_.dim);
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Series t = term();
    acc += neg ? -t : t;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Series term() {
    Series acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (atom_ahead()) {
        acc *= factor();
      } else {
        break;
      }
    }
    return acc;
  }

  std::int64_t integer(bool allow_sign) {
    skip_ws();
    bool neg = false;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
      skip_ws();
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    std::int64_t v = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      if (v > (INT64_MAX - 9) / 10) fail("integer too large");
      v = v * 10 + (s_[i] - '0');
    }
    return neg ? -v : v;
  }

  Series factor() {
    Series base = atom();
    if (accept('^')) {
      std::int64_t e = integer(true);
      if (e < 0) {
        bool monomial = base.size() == 1;
        if (!monomial) fail("negative power of a non-monomial");
        const auto& [k, c] = *base.terms().begin();
        if (!k.params.empty()) fail("negative power of a parameter");
        Key nk{k.t * e, k.m, {}};
        for (auto& x : nk.m) x *= e;
        Series s(opts_.dim);
        s.add_term(nk, pow_rat(Rat(1) / c, -e));
        return s;
      }
      return base.pow(e);
    }
    return base;
  }

  static Rat pow_rat(const Rat& r, std::int64_t e) {
    Rat out = 1;
    for (std::int64_t i = 0; i < e; ++i) out *= r;
    return out;
  }

  Series atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Series v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected denominator");
      }
      Rat r;
      try {
        r = parse_rat(s_.substr(start, pos_ - start));
      } catch (const std::invalid_argument& e) {
        pos_ = start;
        fail(e.what());
      }
      return Series::constant(opts_.dim, r);
    }
    if (!ident_start(c)) fail("unexpected '" + std::string(1, c) + "'");
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    std::string id(s_.substr(start, pos_ - start));
    if (opts_.var_names) {
      const auto& names = *opts_.var_names;
      auto it = std::find(names.begin(), names.end(), id);
      if (it != names.end())
        return Series::variable(opts_.dim, static_cast<std::size_t>(it - names.begin()));
    }
    if (id == "t") return Series::t_power(opts_.dim, 1);
    if (id == "z") {
      skip_ws();
      if (pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '(') {
        pos_ += 2;
        Exp m;
        do {
          m.push_back(integer(true));
        } while (accept(','));
        if (!accept(')')) fail("expected ')' after exponent");
        if (m.size() != opts_.dim) fail("exponent has wrong dimension");
        return Series::monomial(m);
      }
    }
    return Series::parameter(opts_.dim, id);
  }

  std::string_view s_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
};

}  // namespace

Series parse_series(std::string_view text, const ParseOptions& opts) {
  return Parser(text, opts).run();
}

}  // namespace fanodeg::algebra
