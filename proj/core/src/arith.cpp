#include "fanodeg/arith.hpp"

#include <limits>
#include <stdexcept>

namespace fanodeg {

Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  Int g = gcd(a, b);
  Int r = a / g * b;
  return r < 0 ? Int(-r) : r;
}

Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int old_r = a, r = b;
  Int old_s = 1, cur_s = 0;
  Int old_t = 0, cur_t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod_floor(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

Int numer(const Rat& r) { return boost::multiprecision::numerator(r); }
Int denom(const Rat& r) { return boost::multiprecision::denominator(r); }

Int floor_rat(const Rat& r) { return floor_div(numer(r), denom(r)); }

Int ceil_rat(const Rat& r) { return -floor_div(-numer(r), denom(r)); }

int sign(const Int& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }
int sign(const Rat& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

std::int64_t to_i64(const Int& a) {
  if (a > std::numeric_limits<std::int64_t>::max() ||
      a < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer exceeds 64-bit range: " + a.str());
  return a.convert_to<std::int64_t>();
}

std::string to_string(const Int& a) { return a.str(); }

std::string to_string(const Rat& r) {
  if (denom(r) == 1) return numer(r).str();
  return numer(r).str() + "/" + denom(r).str();
}

namespace {

bool parse_int_literal(std::string_view s, Int& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return false;
  Int v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = neg ? Int(-v) : v;
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  Int p, q = 1;
  if (slash == std::string_view::npos) {
    if (!parse_int_literal(text, p))
      throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
  } else {
    if (!parse_int_literal(text.substr(0, slash), p) ||
        !parse_int_literal(text.substr(slash + 1), q))
      throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
    if (q == 0)
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  return Rat(p, q);
}

}  // namespace fanodeg
