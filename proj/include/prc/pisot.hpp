#pragma once

// Pisot tests, degree bounds, power-sum traces and the cubic trace scan for
// monic integer polynomials of degree 2 and 3.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prc/chain.hpp"
#include "prc/interval.hpp"

namespace prc {

/// x^3 - A x^2 + B x - C (degree 3) or x^2 - A x + B (degree 2).
struct MonicIntPoly {
  int degree = 3;
  mpz_class A, B, C;

  static MonicIntPoly quadratic(mpz_class a, mpz_class b);
  static MonicIntPoly cubic(mpz_class a, mpz_class b, mpz_class c);

  /// Coefficients from x^0 up to the leading 1.
  std::vector<mpz_class> coefficients() const;
  mpz_class discriminant() const;
  /// Exact rational-root test (the only way degree <= 3 can factor over Q).
  bool irreducible() const;
  /// Product of all roots: C for cubics, B for quadratics.
  mpz_class root_product() const { return degree == 3 ? C : B; }

  std::string to_string() const;
  bool operator==(const MonicIntPoly&) const = default;
};

struct Conjugate {
  ComplexInterval value;
  RealInterval modulus;
  bool real = false;
};

struct ConjugateSet {
  /// Ordered by modulus, largest first.
  std::vector<Conjugate> roots;
  /// Lower bound on the distance of every modulus from 1 (may be <= 0 if unresolved).
  BigFloat unit_margin;
  /// False when two adjacent modulus enclosures overlap and are not a conjugate pair.
  bool resolved = true;
  mpfr_prec_t precision = 0;
};

/// Certified enclosures of all roots at the given working precision.
/// Throws Reducible for polynomials with a rational root.
ConjugateSet conjugates(const MonicIntPoly& poly, mpfr_prec_t prec);

struct PisotOptions {
  PrecisionPolicy precision;
  /// Root enclosures are refined until every modulus width is below this.
  double margin = 1e-10;
};

struct PisotVerdict {
  bool pisot = false;
  ConjugateSet conjugates;
};

PisotVerdict is_pisot(const MonicIntPoly& poly, const PisotOptions& options = {});

struct DegreeBound {
  mpq_class theta_b;
  mpq_class bound;
  std::vector<unsigned> allowed_degrees;
};

/// theta_b = 1 - theta - 1/b, bound = (b theta_b)^-1 + 1, allowed = {2 <= l <= bound}.
DegreeBound degree_bound(unsigned long b, const mpq_class& theta = mpq_class(21, 40));

/// Exact s(n) = sum of n-th powers of the roots; recurrence for moderate n,
/// companion-matrix squaring beyond.
mpz_class power_sum(const MonicIntPoly& poly, unsigned long n);
mpz_class power_sum_recurrence(const MonicIntPoly& poly, unsigned long n);
mpz_class power_sum_matrix(const MonicIntPoly& poly, unsigned long n);

/// Power sums on demand with memoisation.
class TraceSequence {
 public:
  explicit TraceSequence(MonicIntPoly poly);
  mpz_class operator()(unsigned long n);
  const MonicIntPoly& poly() const { return poly_; }

 private:
  MonicIntPoly poly_;
  std::vector<mpz_class> values_;
};

struct TraceMatchRow {
  std::size_t k = 0;
  mpz_class exponent;  // C_k / C_m
  mpz_class trace;
  mpz_class prime;
  bool equal = false;
};

std::vector<TraceMatchRow> trace_match(const MonicIntPoly& poly, const PrimeChain& chain, std::size_t m);

struct ExclusionStep {
  std::size_t k = 0;
  mpz_class p_k, p_next;
  bool divisible = false;     // p_k | p_{k+1}: a quadratic Pisot power is not excluded
  mpz_class residue;          // (p_{k+1} - p_k^3) mod 3 p_k
  bool next_is_prime = true;
};

struct ExclusionReport {
  std::vector<ExclusionStep> steps;
  std::vector<std::size_t> skipped;  // steps with c(k+1) != 3
  std::size_t divisibility_hits = 0;
};

ExclusionReport quadratic_exclusion(const PrimeChain& chain, std::size_t m, const PrimalityPolicy& policy = {});

struct ScanOptions {
  /// B ranges over [-B_limit, B_limit]; default 2 p_m + 3.
  std::optional<mpz_class> b_limit;
  /// Skip the first `slack` trace comparisons s(3^j) = p_{m+j}, j = 1, 2, ...
  /// (j = 1 always holds by construction of C).
  unsigned slack = 0;
  unsigned threads = 1;
  PisotOptions pisot;
};

struct ScanSurvivor {
  MonicIntPoly poly;
  std::vector<double> moduli;
};

struct ScanResult {
  std::vector<ScanSurvivor> survivors;  // sorted by (A, B)
  std::uint64_t examined = 0;           // (A, B) pairs with integral C
  std::uint64_t irreducible = 0;
  std::uint64_t trace_matched = 0;
  mpz_class b_limit;
  std::vector<mpz_class> a_values;
};

/// Cubic candidates beta = xi^{C_m} whose traces reproduce the chain.
ScanResult cubic_scan(const PrimeChain& chain, std::size_t m, const ScanOptions& options = {});

struct TailRecord {
  unsigned long n = 0;
  RealInterval tail;                  // |s(n) - beta_1^n|
  std::optional<RealInterval> lambda; // log(|beta_2|^n / tail) / log n, n >= 2
  bool vanished = false;              // tail not separated from 0 at the precision cap
};

struct TailReport {
  std::vector<TailRecord> records;
  double lambda = 0.0;   // least lambda >= 0 valid over the range
  unsigned long lambda_at = 0;
  std::vector<unsigned long> flagged;
};

TailReport tail_bound_check(const MonicIntPoly& poly, unsigned long n_lo, unsigned long n_hi,
                            const PisotOptions& options = {});

}  // namespace prc
