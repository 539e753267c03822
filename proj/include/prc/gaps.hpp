#pragma once

// Prime counts in short intervals [x, x + x^theta] and a greedy survey of
// sparse intervals [n, n + n^gamma] inside [x, 2x].

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "prc/interval.hpp"
#include "prc/primality.hpp"

namespace prc {

struct GapSurveyRecord {
  mpz_class x;
  mpq_class theta;
  mpz_class interval_width;  // floor(x^theta)
  std::uint64_t prime_count = 0;
  RealInterval density_ratio;  // count log x / x^theta
  /// Largest distance between consecutive primes inside the interval (0 if fewer than two).
  std::uint64_t max_gap = 0;
  mpz_class max_gap_at;  // prime that starts the largest gap
};

struct GapOptions {
  unsigned threads = 1;
  /// Used above the sieve range, where counts come from primality tests.
  PrimalityPolicy policy;
  mpfr_prec_t precision = 128;
};

std::vector<GapSurveyRecord> gap_survey(const std::vector<mpz_class>& xs, const mpq_class& theta,
                                        const GapOptions& options = {});

struct ExceptionalSurvey {
  std::uint64_t x = 0;
  mpq_class gamma;
  mpq_class d;
  mpq_class D = 1;
  std::uint64_t intervals = 0;          // tiles examined
  std::uint64_t exceptional_count = 0;  // tiles with count log n <= d n^gamma
  std::vector<std::uint64_t> exceptional_starts;
  RealInterval matomaki_bound;  // D x^(2/3 - gamma)
};

/// Tiles [x, 2x] left to right with [n, n + floor(n^gamma)], the next tile
/// starting one past the previous end, and counts the sparse tiles.
ExceptionalSurvey exceptional_survey(std::uint64_t x, const mpq_class& gamma, const mpq_class& d,
                                     const mpq_class& D = 1, const GapOptions& options = {});

}  // namespace prc
