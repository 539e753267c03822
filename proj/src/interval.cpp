#include "prc/interval.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "prc/errors.hpp"

namespace prc {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Swap with a minimal fresh value so the moved-from object stays valid.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

mpq_class BigFloat::to_rational() const {
  if (!mpfr_number_p(value_)) throw std::domain_error("non-finite BigFloat has no rational value");
  if (mpfr_zero_p(value_)) return mpq_class(0);
  mpz_class mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
  mpq_class q(mant);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

std::string BigFloat::to_string(int digits, mpfr_rnd_t rnd) const {
  if (mpfr_zero_p(value_)) return "0";
  std::unique_ptr<char, void (*)(char*)> buf(nullptr, [](char* p) { mpfr_free_str(p); });
  mpfr_exp_t exp10 = 0;
  buf.reset(mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), value_, rnd));
  std::string mant(buf.get());
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  return sign + mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(exp10 - 1);
}

int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.get(), b.get()); }

mpz_class floor_of(const BigFloat& x) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDD);
  return z;
}

namespace {

mpfr_prec_t max_prec(const RealInterval& a, const RealInterval& b) {
  return std::max(a.precision(), b.precision());
}

BigFloat make(mpfr_prec_t prec) { return BigFloat(prec); }

}  // namespace

RealInterval::RealInterval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

RealInterval::RealInterval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get())) throw std::domain_error("NaN interval endpoint");
  if (compare(lo_, hi_) > 0) throw std::domain_error("interval lower endpoint exceeds upper endpoint");
}

RealInterval RealInterval::from_integer(const mpz_class& z, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::from_integer(long z, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_si(r.lo_.get(), z, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), z, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::from_rational(const mpq_class& q, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::hull(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
  if (lo > hi) throw std::domain_error("hull: lo > hi");
  RealInterval r(prec);
  mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

mpfr_prec_t RealInterval::precision() const { return std::max(lo_.precision(), hi_.precision()); }

BigFloat RealInterval::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

BigFloat RealInterval::mid() const {
  BigFloat m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

bool RealInterval::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool RealInterval::contains(const RealInterval& inner) const {
  return compare(lo_, inner.lo_) <= 0 && compare(inner.hi_, hi_) <= 0;
}

bool RealInterval::strictly_contains(const RealInterval& inner) const {
  return compare(lo_, inner.lo_) < 0 && compare(inner.hi_, hi_) < 0;
}

bool RealInterval::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
bool RealInterval::positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool RealInterval::negative() const { return mpfr_sgn(hi_.get()) < 0; }

bool RealInterval::certainly_less(const RealInterval& other) const { return compare(hi_, other.lo_) < 0; }

RealInterval RealInterval::operator-() const {
  RealInterval r(precision());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

RealInterval& RealInterval::operator+=(const RealInterval& o) {
  const auto prec = max_prec(*this, o);
  BigFloat lo = make(prec), hi = make(prec);
  mpfr_add(lo.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

RealInterval& RealInterval::operator-=(const RealInterval& o) {
  const auto prec = max_prec(*this, o);
  BigFloat lo = make(prec), hi = make(prec);
  mpfr_sub(lo.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

RealInterval& RealInterval::operator*=(const RealInterval& o) {
  const auto prec = max_prec(*this, o);
  BigFloat lo = make(prec), hi = make(prec), t = make(prec);
  const mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
  const mpfr_srcptr ys[2] = {o.lo_.get(), o.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

RealInterval& RealInterval::operator/=(const RealInterval& o) {
  if (o.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  const auto prec = max_prec(*this, o);
  BigFloat lo = make(prec), hi = make(prec), t = make(prec);
  const mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
  const mpfr_srcptr ys[2] = {o.lo_.get(), o.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

std::string RealInterval::to_string(int digits) const {
  return "[" + lo_.to_string(digits, MPFR_RNDD) + ", " + hi_.to_string(digits, MPFR_RNDU) + "]";
}

RealInterval operator+(RealInterval a, const RealInterval& b) { return a += b; }
RealInterval operator-(RealInterval a, const RealInterval& b) { return a -= b; }
RealInterval operator*(RealInterval a, const RealInterval& b) { return a *= b; }
RealInterval operator/(RealInterval a, const RealInterval& b) { return a /= b; }

RealInterval exp(const RealInterval& x) {
  const auto prec = x.precision();
  BigFloat lo(prec), hi(prec);
  mpfr_exp(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealInterval log(const RealInterval& x) {
  if (!x.positive()) throw std::domain_error("log of an interval not strictly positive");
  const auto prec = x.precision();
  BigFloat lo(prec), hi(prec);
  mpfr_log(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealInterval sqrt(const RealInterval& x) {
  if (x.negative()) throw std::domain_error("sqrt of a negative interval");
  const auto prec = x.precision();
  BigFloat lo(prec), hi(prec);
  if (mpfr_sgn(x.lo().get()) <= 0) {
    mpfr_set_zero(lo.get(), 1);
  } else {
    mpfr_sqrt(lo.get(), x.lo().get(), MPFR_RNDD);
  }
  mpfr_sqrt(hi.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealInterval abs(const RealInterval& x) {
  if (mpfr_sgn(x.lo().get()) >= 0) return x;
  if (mpfr_sgn(x.hi().get()) <= 0) return -x;
  const auto prec = x.precision();
  BigFloat lo(prec), hi(prec);
  mpfr_set_zero(lo.get(), 1);
  mpfr_neg(hi.get(), x.lo().get(), MPFR_RNDU);
  if (mpfr_cmp(x.hi().get(), hi.get()) > 0) mpfr_set(hi.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

RealInterval pow(const RealInterval& x, unsigned long n) {
  const auto prec = x.precision();
  if (n == 0) return RealInterval::from_integer(1L, prec);
  if (mpfr_sgn(x.lo().get()) >= 0) {
    BigFloat lo(prec), hi(prec);
    mpfr_pow_ui(lo.get(), x.lo().get(), n, MPFR_RNDD);
    mpfr_pow_ui(hi.get(), x.hi().get(), n, MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
  }
  if (mpfr_sgn(x.hi().get()) <= 0) {
    RealInterval r = pow(-x, n);
    return (n % 2 == 0) ? r : -r;
  }
  // Straddles zero.
  if (n % 2 == 1) {
    BigFloat lo(prec), hi(prec);
    mpfr_pow_ui(lo.get(), x.lo().get(), n, MPFR_RNDD);
    mpfr_pow_ui(hi.get(), x.hi().get(), n, MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
  }
  return pow(abs(x), n);
}

RealInterval pow(const RealInterval& x, const RealInterval& e) { return exp(e * log(x)); }

RealInterval join(const RealInterval& a, const RealInterval& b) {
  BigFloat lo = compare(a.lo(), b.lo()) <= 0 ? a.lo() : b.lo();
  BigFloat hi = compare(a.hi(), b.hi()) >= 0 ? a.hi() : b.hi();
  return {std::move(lo), std::move(hi)};
}

ComplexInterval ComplexInterval::operator+(const ComplexInterval& o) const { return {re + o.re, im + o.im}; }

ComplexInterval ComplexInterval::operator*(const ComplexInterval& o) const {
  return {re * o.re - im * o.im, re * o.im + im * o.re};
}

RealInterval ComplexInterval::norm() const { return pow(re, 2) + pow(im, 2); }

RealInterval ComplexInterval::modulus() const { return sqrt(norm()); }

ComplexInterval pow(const ComplexInterval& z, unsigned long n) {
  const auto prec = z.re.precision();
  ComplexInterval result(RealInterval::from_integer(1L, prec), RealInterval::from_integer(0L, prec));
  ComplexInterval base = z;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace prc
