#include "prc/evaluator.hpp"

#include <algorithm>

#include "prc/errors.hpp"
#include "prc/numeric.hpp"

namespace prc {

namespace {

// Enclosure of x^(1/M) for M >= 1, as exp(log(x) / M).
RealInterval root_enclosure(const mpz_class& x, const mpz_class& M, mpfr_prec_t prec) {
  const RealInterval xi = RealInterval::from_integer(x, prec);
  if (M == 1) return xi;
  return exp(log(xi) / RealInterval::from_integer(M, prec));
}

mpq_class ten_to_minus(unsigned long e) {
  mpq_class q(mpz_class(1), ipow(10, e));
  return q;
}

mpfr_prec_t next_precision(mpfr_prec_t prec, const PrecisionPolicy& policy, const char* what) {
  if (prec >= policy.cap_bits) {
    throw Error(ErrorKind::Undecidable,
                std::string(what) + ": precision cap of " + std::to_string(policy.cap_bits) + " bits reached");
  }
  return std::min(prec * 2, policy.cap_bits);
}

void check_index(const PrimeChain& chain, std::size_t k) {
  if (k < 1 || k > chain.length()) {
    throw Error(ErrorKind::InvalidArgument, "chain index " + std::to_string(k) + " out of range");
  }
}

}  // namespace

RealInterval bounds(const PrimeChain& chain, std::size_t k, unsigned long digits, const PrecisionPolicy& precision) {
  check_index(chain, k);
  const mpz_class C = chain.exps.product(k);
  const mpz_class& p = chain.p(k);
  const mpq_class tolerance = ten_to_minus(digits + 2);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(precision.start_bits, 64 + 4 * static_cast<mpfr_prec_t>(digits));
  prec = std::min(prec, precision.cap_bits);
  for (;;) {
    const RealInterval lower = root_enclosure(p, C, prec);
    const RealInterval upper = root_enclosure(p + 1, C, prec);
    const mpq_class slack = std::max(lower.width().to_rational(), upper.width().to_rational());
    if (slack < tolerance) return RealInterval(lower.lo(), upper.hi());
    prec = next_precision(prec, precision, "bounds");
  }
}

std::string common_decimal_prefix(const mpq_class& lo, const mpq_class& hi) {
  if (lo < 0 || lo > hi) throw Error(ErrorKind::InvalidArgument, "common_decimal_prefix needs 0 <= lo <= hi");
  // Decimals beyond -log10(hi - lo) + 1 cannot be shared.
  std::size_t decimals = 40;
  if (hi > lo) {
    const mpq_class inv = 1 / mpq_class(hi - lo);
    const mpz_class whole = inv.get_num() / inv.get_den();
    decimals = mpz_sizeinbase(whole.get_mpz_t(), 10) + 2;
  }
  const mpz_class scale = ipow(10, decimals);
  const mpq_class ls = lo * scale, hs = hi * scale;
  const mpz_class L = ls.get_num() / ls.get_den();  // floor, both nonnegative
  const mpz_class H = hs.get_num() / hs.get_den();
  std::string sl = L.get_str(), sh = H.get_str();
  // Pad so both carry at least one integer digit.
  const auto pad = [&](std::string& s) {
    if (s.size() < decimals + 1) s.insert(0, decimals + 1 - s.size(), '0');
  };
  pad(sl);
  pad(sh);
  if (sl.size() != sh.size()) return "";
  const std::size_t int_len = sl.size() - decimals;
  std::size_t common = 0;
  while (common < sl.size() && sl[common] == sh[common]) ++common;
  if (common < int_len) return "";
  const std::size_t frac = common - int_len;
  std::string out = sl.substr(0, int_len);
  if (frac > 0) out += "." + sl.substr(int_len, frac);
  return out;
}

CertifiedDigits certified_digits(const PrimeChain& chain, const PrecisionPolicy& precision) {
  if (chain.length() < 1) throw Error(ErrorKind::InvalidArgument, "certified_digits requires a nonempty chain");
  const std::size_t k = chain.length();
  // The enclosure width is about xi / (C_k p_k), so this many digits is the most attainable.
  const mpz_class scale = chain.exps.product(k) * (chain.p(k) + 1);
  const unsigned long digits = static_cast<unsigned long>(mpz_sizeinbase(scale.get_mpz_t(), 10)) + 2;
  const RealInterval enc = bounds(chain, k, digits, precision);
  CertifiedDigits out;
  out.digits = common_decimal_prefix(enc.lo().to_rational(), enc.hi().to_rational());
  out.depth = k;
  out.precision_bits = enc.precision();
  out.conditional = chain.certainty != Certainty::Proven;
  return out;
}

RealInterval closed_form_gamma(const mpz_class& p1, const mpq_class& theta, mpfr_prec_t prec) {
  const mpq_class factor = (2 - 3 * theta) / 6;
  return RealInterval::from_rational(factor, prec) * log(RealInterval::from_integer(p1, prec));
}

namespace {

struct DistanceResult {
  RealInterval distance;
  mpfr_prec_t prec;
};

DistanceResult distance_enclosure(const PrimeChain& chain, std::size_t k, const PrecisionPolicy& policy) {
  const std::size_t j = chain.length();
  mpz_class M = 1;  // C_j / C_k
  for (std::size_t i = k + 1; i <= j; ++i) M *= chain.exps.c(i);
  const mpz_class& pk = chain.p(k);
  const mpz_class& pj = chain.p(j);
  mpfr_prec_t prec = std::max<mpfr_prec_t>(policy.start_bits, 2 * static_cast<mpfr_prec_t>(bit_length(pk)) + 128);
  prec = std::min(prec, policy.cap_bits);
  for (;;) {
    const RealInterval lower = root_enclosure(pj, M, prec);
    const RealInterval upper = root_enclosure(pj + 1, M, prec);
    const RealInterval pk_i = RealInterval::from_integer(pk, prec);
    RealInterval dist(lower.lo(), upper.hi());
    dist -= pk_i;
    // Accept once rounding slack is negligible next to the distance itself.
    BigFloat slack = compare(lower.width(), upper.width()) >= 0 ? lower.width() : upper.width();
    mpfr_mul_2ui(slack.get(), slack.get(), 40, MPFR_RNDU);
    if (dist.positive() && compare(slack, dist.lo()) < 0) return {std::move(dist), prec};
    prec = next_precision(prec, policy, "nearness");
  }
}

NearnessRecord base_record(const PrimeChain& chain, std::size_t k, const NearnessOptions& options) {
  if (k < 1 || k >= chain.length()) {
    throw Error(ErrorKind::InvalidArgument, "nearness requires 1 <= k < chain length");
  }
  auto [dist, prec] = distance_enclosure(chain, k, options.precision);
  const unsigned long c = chain.exps.c(k + 1);
  const mpq_class exponent = c * (options.theta - 1) + 1;
  const RealInterval pk = RealInterval::from_integer(chain.p(k), prec);
  RealInterval simple =
      RealInterval::from_integer(2L, prec) * exp(RealInterval::from_rational(exponent, prec) * log(pk));
  NearnessRecord rec{k, chain.exps.product(k), std::move(dist), std::move(simple),
                     RealInterval(prec), RealInterval(prec), false};
  return rec;
}

void apply_gamma(NearnessRecord& rec, const RealInterval& gamma, bool fitted) {
  const auto prec = rec.distance.precision();
  rec.gamma = gamma;
  rec.gamma_fitted = fitted;
  rec.bound_gamma = exp(-(gamma * RealInterval::from_integer(rec.C_k, prec)));
}

RealInterval chosen_gamma(const PrimeChain& chain, const NearnessOptions& options, mpfr_prec_t prec,
                          const std::vector<NearnessRecord>* table, bool& fitted) {
  fitted = false;
  if (options.gamma) return RealInterval::from_rational(*options.gamma, prec);
  if (chain.exps.is_constant(3)) return closed_form_gamma(chain.p(1), options.theta, prec);
  fitted = true;
  if (table) return fit_gamma(*table);
  std::vector<NearnessRecord> all;
  for (std::size_t i = 1; i < chain.length(); ++i) all.push_back(base_record(chain, i, options));
  return fit_gamma(all);
}

}  // namespace

RealInterval fit_gamma(const std::vector<NearnessRecord>& records) {
  if (records.empty()) throw Error(ErrorKind::InvalidArgument, "fit_gamma needs at least one record");
  std::optional<BigFloat> best;
  for (const auto& r : records) {
    const auto prec = r.distance.precision();
    const RealInterval hi(r.distance.hi(), r.distance.hi());
    const RealInterval g = -log(hi) / RealInterval::from_integer(r.C_k, prec);
    if (!best || compare(g.lo(), *best) < 0) best = g.lo();
  }
  return RealInterval(*best, *best);
}

NearnessRecord nearness(const PrimeChain& chain, std::size_t k, const NearnessOptions& options) {
  NearnessRecord rec = base_record(chain, k, options);
  bool fitted = false;
  const RealInterval gamma = chosen_gamma(chain, options, rec.distance.precision(), nullptr, fitted);
  apply_gamma(rec, gamma, fitted);
  return rec;
}

std::vector<NearnessRecord> nearness_table(const PrimeChain& chain, const NearnessOptions& options) {
  if (chain.length() < 2) throw Error(ErrorKind::InvalidArgument, "nearness_table requires at least two primes");
  std::vector<NearnessRecord> out;
  for (std::size_t k = 1; k < chain.length(); ++k) out.push_back(base_record(chain, k, options));
  mpfr_prec_t prec = 0;
  for (const auto& r : out) prec = std::max(prec, r.distance.precision());
  bool fitted = false;
  const RealInterval gamma = chosen_gamma(chain, options, prec, &out, fitted);
  for (auto& r : out) apply_gamma(r, gamma, fitted);
  return out;
}

std::vector<MahlerRow> mahler_table(const mpz_class& num, const mpz_class& den, unsigned long n_max,
                                    const mpq_class& eps, const PrecisionPolicy& precision) {
  if (den < 2) throw Error(ErrorKind::InvalidArgument, "mahler_table: alpha must not be an integer (den >= 2)");
  if (num <= den) throw Error(ErrorKind::InvalidArgument, "mahler_table: alpha must exceed 1");
  if (gcd(num, den) != 1) throw Error(ErrorKind::InvalidArgument, "mahler_table: num/den must be in lowest terms");
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "mahler_table: eps must be positive");

  std::vector<MahlerRow> rows;
  mpz_class num_pow = 1, den_pow = 1;
  for (unsigned long n = 1; n <= n_max; ++n) {
    num_pow *= num;
    den_pow *= den;
    MahlerRow row;
    row.n = n;
    row.distance = nearest_integer_distance(mpq_class(num_pow, den_pow));
    row.trivial_bound_holds = row.distance >= mpq_class(mpz_class(1), den_pow);
    mpfr_prec_t prec = std::max<mpfr_prec_t>(precision.start_bits, 128);
    for (;;) {
      RealInterval bound =
          exp(-(RealInterval::from_rational(eps, prec) * RealInterval::from_integer(mpz_class(n), prec)));
      if (mpfr_cmp_q(bound.hi().get(), row.distance.get_mpq_t()) < 0) {
        row.mahler_holds = true;
        row.bound = std::move(bound);
        break;
      }
      if (mpfr_cmp_q(bound.lo().get(), row.distance.get_mpq_t()) >= 0) {
        row.mahler_holds = false;
        row.bound = std::move(bound);
        break;
      }
      prec = next_precision(prec, precision, "mahler_table");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace prc
