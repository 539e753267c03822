#pragma once

// Outward-rounded interval arithmetic over MPFR.
//
// Every operation rounds the lower endpoint toward -inf and the upper
// endpoint toward +inf, so an interval computed from enclosures of the
// inputs always encloses the exact result.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace prc {

/// Owning wrapper around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Exact value as a rational (MPFR numbers are dyadic).
  mpq_class to_rational() const;
  /// Scientific notation with `digits` significant digits, rounded in `rnd`.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t value_;
};

int compare(const BigFloat& a, const BigFloat& b);

/// Precision schedule shared by every auto-refining computation.
struct PrecisionPolicy {
  mpfr_prec_t start_bits = 64;
  mpfr_prec_t cap_bits = mpfr_prec_t{1} << 20;
};

/// Closed interval [lo, hi] with directed rounding.
class RealInterval {
 public:
  explicit RealInterval(mpfr_prec_t prec = 64);
  RealInterval(BigFloat lo, BigFloat hi);

  static RealInterval from_integer(const mpz_class& z, mpfr_prec_t prec);
  static RealInterval from_integer(long z, mpfr_prec_t prec);
  static RealInterval from_rational(const mpq_class& q, mpfr_prec_t prec);
  /// [lo, hi] from two exact rationals, rounded outward.
  static RealInterval hull(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const;

  /// Upper bound on hi - lo.
  BigFloat width() const;
  /// Upper bound on the midpoint; used as a representative value.
  BigFloat mid() const;

  bool contains(const mpq_class& q) const;
  bool contains(const RealInterval& inner) const;
  /// inner.lo > lo and inner.hi < hi.
  bool strictly_contains(const RealInterval& inner) const;
  bool contains_zero() const;
  bool positive() const;  // lo > 0
  bool negative() const;  // hi < 0

  /// Certainly less: every point of *this is below every point of other.
  bool certainly_less(const RealInterval& other) const;

  RealInterval operator-() const;
  RealInterval& operator+=(const RealInterval& o);
  RealInterval& operator-=(const RealInterval& o);
  RealInterval& operator*=(const RealInterval& o);
  RealInterval& operator/=(const RealInterval& o);

  std::string to_string(int digits) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

RealInterval operator+(RealInterval a, const RealInterval& b);
RealInterval operator-(RealInterval a, const RealInterval& b);
RealInterval operator*(RealInterval a, const RealInterval& b);
RealInterval operator/(RealInterval a, const RealInterval& b);

RealInterval exp(const RealInterval& x);
/// Requires x.lo > 0.
RealInterval log(const RealInterval& x);
/// Negative parts of x are clamped to zero; requires x.hi >= 0.
RealInterval sqrt(const RealInterval& x);
RealInterval abs(const RealInterval& x);
RealInterval pow(const RealInterval& x, unsigned long n);
/// x^e for x > 0 and arbitrary real exponent e, as exp(e log x).
RealInterval pow(const RealInterval& x, const RealInterval& e);
/// Interval hull of a and b.
RealInterval join(const RealInterval& a, const RealInterval& b);

/// Rectangular complex enclosure.
struct ComplexInterval {
  RealInterval re;
  RealInterval im;

  ComplexInterval(RealInterval re_part, RealInterval im_part)
      : re(std::move(re_part)), im(std::move(im_part)) {}

  ComplexInterval operator+(const ComplexInterval& o) const;
  ComplexInterval operator*(const ComplexInterval& o) const;
  RealInterval norm() const;  // re^2 + im^2
  RealInterval modulus() const;
};

ComplexInterval pow(const ComplexInterval& z, unsigned long n);

/// floor(x) for an exact dyadic value.
mpz_class floor_of(const BigFloat& x);

}  // namespace prc
