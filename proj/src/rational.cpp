#include "credal/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "credal/errors.hpp"

namespace credal {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational literal", 0);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
    if (s.empty()) throw ParseError("sign without digits in rational literal", 1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed fraction '" + std::string(text) + "'", 0);
    Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
    value = Rational(Integer{std::string(num)}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw ParseError("malformed decimal '" + std::string(text) + "'", 0);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer units = whole.empty() ? Integer(0) : Integer{std::string(whole)};
    Integer cents = frac.empty() ? Integer(0) : Integer{std::string(frac)};
    value = Rational(units * scale + cents, scale);
  } else {
    if (!all_digits(s)) throw ParseError("malformed rational '" + std::string(text) + "'", 0);
    value = Rational(Integer{std::string(s)});
  }
  return negative ? -value : value;
}

std::string format_rational(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += '/';
    out += denominator(r).str();
  }
  return out;
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw PreconditionError("cannot convert non-finite double to rational");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  Integer m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(m);
  if (exp > 0)
    r *= Rational(Integer(1) << exp);
  else if (exp < 0)
    r /= Rational(Integer(1) << -exp);
  return r;
}

std::optional<Rational> snap_to_rational(double x, std::int64_t max_den) {
  if (!std::isfinite(x) || max_den < 1) return std::nullopt;
  bool neg = x < 0;
  double v = std::fabs(x);
  // Stern-Brocot style continued fraction expansion.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double a_floor = std::floor(frac);
    if (a_floor > 1e18) break;
    auto a = static_cast<std::int64_t>(a_floor);
    if (q0 + a * q1 > max_den || (p1 > 0 && a > (INT64_MAX - p0) / p1)) break;
    std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - a_floor;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return std::nullopt;
  Rational r{Integer(p1), Integer(q1)};
  if (neg) r = -r;
  return r;
}

}  // namespace credal
