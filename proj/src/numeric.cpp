#include "prc/numeric.hpp"

#include <cctype>

#include "prc/errors.hpp"

namespace prc {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

mpz_class parse_integer(std::string_view text) {
  if (!is_integer_literal(text)) {
    throw Error(ErrorKind::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return mpz_class(s, 10);
}

mpq_class parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return mpq_class(parse_integer(text));
  const mpz_class num = parse_integer(text.substr(0, slash));
  const mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string format_rational(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpz_class ipow(const mpz_class& base, unsigned long exp) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

mpz_class floor_rational_power(const mpz_class& x, unsigned long num, unsigned long den) {
  if (x < 0 || den == 0) throw Error(ErrorKind::InvalidArgument, "floor_rational_power: bad arguments");
  const mpz_class p = ipow(x, num);
  mpz_class r;
  mpz_root(r.get_mpz_t(), p.get_mpz_t(), den);
  return r;
}

mpz_class ceil_rational_power(const mpz_class& x, unsigned long num, unsigned long den) {
  if (x < 0 || den == 0) throw Error(ErrorKind::InvalidArgument, "ceil_rational_power: bad arguments");
  const mpz_class p = ipow(x, num);
  mpz_class r;
  const int exact = mpz_root(r.get_mpz_t(), p.get_mpz_t(), den);
  if (!exact) ++r;
  return r;
}

unsigned long to_ulong(const mpz_class& z, const char* what) {
  if (z < 0 || !z.fits_ulong_p()) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " out of range: " + z.get_str());
  }
  return z.get_ui();
}

mpq_class nearest_integer_distance(const mpq_class& q) {
  // q = n/d with d > 0; r = n mod d in [0, d).
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  const mpz_class& d = q.get_den();
  mpz_class dist = (2 * r <= d) ? r : mpz_class(d - r);
  mpq_class out(dist, d);
  out.canonicalize();
  return out;
}

}  // namespace prc
