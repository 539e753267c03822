#pragma once

// Certified real-number layer on top of prime chains: interval enclosures of
// the limiting constant, certified decimal digits, and near-integer distances.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "prc/chain.hpp"
#include "prc/interval.hpp"

namespace prc {

/// Enclosure of [p_k^(1/C_k), (p_k+1)^(1/C_k)] whose outward rounding slack is
/// below 10^-(digits+2). Working precision doubles until that holds.
RealInterval bounds(const PrimeChain& chain, std::size_t k, unsigned long digits,
                    const PrecisionPolicy& precision = {});

struct CertifiedDigits {
  std::string digits;
  std::size_t depth = 0;
  mpfr_prec_t precision_bits = 0;
  /// True when some chain entry is only a probable prime.
  bool conditional = false;
};

/// Longest decimal prefix shared by every point of bounds(chain, last).
CertifiedDigits certified_digits(const PrimeChain& chain, const PrecisionPolicy& precision = {});

/// Longest decimal prefix shared by all points of [lo, hi] (0 <= lo <= hi).
/// Empty when the integer parts differ. A decimal boundary inside the interval
/// truncates the prefix; nothing is rounded.
std::string common_decimal_prefix(const mpq_class& lo, const mpq_class& hi);

struct NearnessRecord {
  std::size_t k = 0;
  mpz_class C_k;
  RealInterval distance;      // encloses xi^{C_k} - p_k
  RealInterval bound_simple;  // 2 p_k^{c(k+1)(theta-1)+1}
  RealInterval bound_gamma;   // exp(-gamma C_k)
  RealInterval gamma;
  bool gamma_fitted = false;
};

struct NearnessOptions {
  mpq_class theta = mpq_class(21, 40);
  /// Overrides the decay constant; otherwise closed form for c = 3 chains, fitted elsewhere.
  std::optional<mpq_class> gamma;
  PrecisionPolicy precision;
};

/// Distance of xi^{C_k} from p_k using the deepest chain entry for the enclosure.
NearnessRecord nearness(const PrimeChain& chain, std::size_t k, const NearnessOptions& options = {});

/// nearness for k = 1 .. length-1 sharing one gamma.
std::vector<NearnessRecord> nearness_table(const PrimeChain& chain, const NearnessOptions& options = {});

/// gamma = ((2 - 3 theta) / 6) log p_1, as an interval.
RealInterval closed_form_gamma(const mpz_class& p1, const mpq_class& theta, mpfr_prec_t prec);

/// Largest gamma with distance.hi <= exp(-gamma C_k) at every record (min of
/// -log(distance.hi)/C_k), reported as a rounded-down value.
RealInterval fit_gamma(const std::vector<NearnessRecord>& records);

struct MahlerRow {
  unsigned long n = 0;
  mpq_class distance;   // ||(num/den)^n||, exact
  RealInterval bound;   // exp(-eps n)
  bool mahler_holds = false;   // distance > exp(-eps n)
  bool trivial_bound_holds = false;  // distance >= den^-n
};

std::vector<MahlerRow> mahler_table(const mpz_class& num, const mpz_class& den, unsigned long n_max,
                                    const mpq_class& eps, const PrecisionPolicy& precision = {});

}  // namespace prc
