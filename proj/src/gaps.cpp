#include "prc/gaps.hpp"

#include "prc/errors.hpp"
#include "prc/numeric.hpp"
#include "prc/sieve.hpp"

namespace prc {

namespace {

RealInterval real_power(const mpz_class& x, const mpq_class& e, mpfr_prec_t prec) {
  return exp(RealInterval::from_rational(e, prec) * log(RealInterval::from_integer(x, prec)));
}

struct Counted {
  std::uint64_t count = 0;
  std::uint64_t max_gap = 0;
  mpz_class max_gap_at;
};

Counted count_primes(const mpz_class& lo, const mpz_class& hi, const GapOptions& options) {
  Counted out;
  std::optional<mpz_class> last;
  const auto visit = [&](const mpz_class& p) {
    ++out.count;
    if (last) {
      const mpz_class gap = p - *last;
      if (gap > out.max_gap) {
        out.max_gap = gap.get_ui();
        out.max_gap_at = *last;
      }
    }
    last = p;
  };
  if (hi <= SegmentedSieve::kMaxHi) {
    const SegmentedSieve sieve(options.threads);
    for (auto p : sieve.primes(lo.get_ui(), hi.get_ui())) visit(mpz_class(std::to_string(p)));
  } else {
    for (mpz_class n = lo; n <= hi; ++n) {
      if (is_prime(n, options.policy).accepted()) visit(n);
    }
  }
  return out;
}

}  // namespace

std::vector<GapSurveyRecord> gap_survey(const std::vector<mpz_class>& xs, const mpq_class& theta,
                                        const GapOptions& options) {
  if (theta <= 0 || theta > 1) throw Error(ErrorKind::InvalidArgument, "theta must lie in (0, 1]");
  const unsigned long num = to_ulong(theta.get_num(), "theta numerator");
  const unsigned long den = to_ulong(theta.get_den(), "theta denominator");
  std::vector<GapSurveyRecord> out;
  for (const auto& x : xs) {
    if (x < 100) throw Error(ErrorKind::InvalidArgument, "gap_survey requires x >= 100");
    GapSurveyRecord rec;
    rec.x = x;
    rec.theta = theta;
    rec.interval_width = floor_rational_power(x, num, den);
    if (rec.interval_width == 0) throw Error(ErrorKind::InvalidArgument, "interval width floor(x^theta) is 0");
    const Counted c = count_primes(x, x + rec.interval_width, options);
    rec.prime_count = c.count;
    rec.max_gap = c.max_gap;
    rec.max_gap_at = c.max_gap_at;
    const mpfr_prec_t prec = options.precision;
    rec.density_ratio = RealInterval::from_integer(mpz_class(std::to_string(c.count)), prec) *
                        log(RealInterval::from_integer(x, prec)) / real_power(x, theta, prec);
    out.push_back(std::move(rec));
  }
  return out;
}

ExceptionalSurvey exceptional_survey(std::uint64_t x, const mpq_class& gamma, const mpq_class& d,
                                     const mpq_class& D, const GapOptions& options) {
  if (gamma < mpq_class(1, 2) || gamma > 1) throw Error(ErrorKind::InvalidArgument, "gamma must lie in [1/2, 1]");
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "threshold d must be >= 0");
  if (D <= 0) throw Error(ErrorKind::InvalidArgument, "D must be positive");
  if (x < 4) throw Error(ErrorKind::InvalidArgument, "x must satisfy x^gamma >= 2");
  if (x > SegmentedSieve::kMaxHi / 2) throw Error(ErrorKind::InvalidArgument, "2x exceeds the sieve range");
  const unsigned long num = to_ulong(gamma.get_num(), "gamma numerator");
  const unsigned long den = to_ulong(gamma.get_den(), "gamma denominator");

  ExceptionalSurvey s;
  s.x = x;
  s.gamma = gamma;
  s.d = d;
  s.D = D;
  const mpfr_prec_t prec = options.precision;
  const mpz_class xz(std::to_string(x));
  s.matomaki_bound = RealInterval::from_rational(D, prec) * real_power(xz, mpq_class(2, 3) - gamma, prec);

  const std::uint64_t top = 2 * x;
  const SegmentedSieve sieve(options.threads);
  const std::vector<bool> flags = sieve.flags(x, top);
  std::vector<std::uint64_t> prefix(flags.size() + 1, 0);
  for (std::size_t i = 0; i < flags.size(); ++i) prefix[i + 1] = prefix[i] + (flags[i] ? 1 : 0);

  std::uint64_t n = x;
  while (n <= top) {
    const mpz_class nz(std::to_string(n));
    const std::uint64_t len = floor_rational_power(nz, num, den).get_ui();
    const std::uint64_t end = n + len;
    if (end > top) break;
    const std::uint64_t count = prefix[end - x + 1] - prefix[n - x];
    ++s.intervals;
    bool sparse;
    if (count == 0) {
      sparse = true;
    } else if (d == 0) {
      sparse = false;
    } else {
      // count log n versus d n^gamma; the two sides are transcendental vs.
      // algebraic-times-rational, so widening precision separates them.
      mpfr_prec_t p = prec;
      for (;;) {
        const RealInterval lhs =
            RealInterval::from_integer(mpz_class(std::to_string(count)), p) * log(RealInterval::from_integer(nz, p));
        const RealInterval rhs = RealInterval::from_rational(d, p) * real_power(nz, gamma, p);
        if (!rhs.certainly_less(lhs) && !lhs.certainly_less(rhs) && p < 4096) {
          p *= 2;
          continue;
        }
        sparse = !rhs.certainly_less(lhs);
        break;
      }
    }
    if (sparse) {
      ++s.exceptional_count;
      s.exceptional_starts.push_back(n);
    }
    n = end + 1;
  }
  return s;
}

}  // namespace prc
