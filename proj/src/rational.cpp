#include "gconv/rational.hpp"

#include <cctype>

#include "gconv/error.hpp"

namespace gconv {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(ErrorKind::InvalidArgument, "malformed integer '" + std::string(s) + "'");
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorKind::InvalidArgument, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    bool negative = text.front() == '-';
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw Error(ErrorKind::InvalidArgument, "malformed decimal '" + std::string(text) + "'");
    Integer scale = pow(Integer(10), static_cast<unsigned>(frac.size()));
    Integer num = Integer(std::string(whole), 10) * scale + (frac.empty() ? Integer(0) : Integer(std::string(frac), 10));
    Rational q(negative ? Integer(-num) : num, scale);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::optional<Integer> mod_inverse(const Integer& a, const Integer& m) {
  Integer r;
  if (m == 1) return Integer(0);
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return mod(r, m);
}

bool denominator_is_base_power(const Rational& q, const Integer& base) {
  Integer d = q.get_den();
  Integer g;
  while (d != 1) {
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), base.get_mpz_t());
    if (g == 1) return false;
    d /= g;
  }
  return true;
}

std::optional<unsigned> base_exponent(const Rational& q, const Integer& base) {
  if (!denominator_is_base_power(q, base)) return std::nullopt;
  unsigned e = 0;
  Integer scale = 1;
  while (Integer(scale % q.get_den()) != 0) {
    scale *= base;
    ++e;
  }
  return e;
}

std::pair<Integer, unsigned> nadic_parts(const Rational& q, const Integer& base) {
  auto e = base_exponent(q, base);
  if (!e) throw Error(ErrorKind::InvalidArgument, to_string(q) + " is not a " + base.get_str() + "-adic rational");
  Integer num = q.get_num() * (pow(base, *e) / q.get_den());
  return {num, *e};
}

Rational root_upper_bound(const Rational& q, unsigned m, unsigned precision_bits) {
  if (q < 0) throw Error(ErrorKind::InvalidArgument, "root of a negative number");
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "zeroth root");
  if (m == 1) return q;
  // smallest integer u with u^m >= q * K^m, then u / K.
  Integer k = pow(Integer(2), precision_bits);
  Integer target = ceil(Rational(q * Rational(pow(k, m))));
  Integer u;
  mpz_root(u.get_mpz_t(), target.get_mpz_t(), m);
  if (pow(u, m) < target) u += 1;
  Rational r(u, k);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& q, unsigned e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

Integer pow(const Integer& z, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), z.get_mpz_t(), e);
  return r;
}

}  // namespace gconv
