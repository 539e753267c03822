#pragma once

// Minimal admissible prime chains.
//
// A chain p_1, p_2, ... with exponents c(1), c(2), ... determines the nested
// intervals [p_k^(1/C_k), (p_k+1)^(1/C_k)], C_k = c(1)...c(k). Consecutive
// entries must satisfy p_k^c <= p_{k+1} <= (p_k+1)^c - 2 with c = c(k+1).

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prc/primality.hpp"

namespace prc {

class ExponentSeq {
 public:
  enum class Kind { Constant, Explicit, Periodic };

  /// c(1) = first (defaults to c), c(k) = c for k >= 2.
  static ExponentSeq constant(unsigned long c, std::optional<unsigned long> first = std::nullopt);
  /// c(k) = values[k-1]; defined only for k <= values.size().
  static ExponentSeq explicit_list(std::vector<unsigned long> values);
  /// c(1) = first (defaults to pattern[0]), c(k) = pattern[(k-1) mod len] for k >= 2.
  static ExponentSeq periodic(std::vector<unsigned long> pattern, std::optional<unsigned long> first = std::nullopt);

  Kind kind() const { return kind_; }
  unsigned long c(std::size_t k) const;
  /// C_k = c(1) ... c(k), exact.
  mpz_class product(std::size_t k) const;
  /// Declared bound sup c(k).
  unsigned long bound() const { return bound_; }
  /// Largest accessible index, or nullopt when unbounded.
  std::optional<std::size_t> max_index() const;
  /// True when every exponent (including c(1)) equals `c`.
  bool is_constant(unsigned long c) const;

  const std::vector<unsigned long>& values() const { return values_; }
  std::optional<unsigned long> first() const { return first_; }

  bool operator==(const ExponentSeq&) const = default;

 private:
  ExponentSeq(Kind kind, std::vector<unsigned long> values, std::optional<unsigned long> first);
  void validate() const;

  Kind kind_;
  std::vector<unsigned long> values_;
  std::optional<unsigned long> first_;
  unsigned long bound_ = 0;
};

enum class Certainty { Proven, Probable };

const char* to_string(Certainty c);

struct PrimeChain {
  ExponentSeq exps;
  std::vector<mpz_class> primes;
  Certainty certainty = Certainty::Proven;
  /// Generator metadata carried into the chain file.
  PrimalityPolicy policy;

  std::size_t length() const { return primes.size(); }
  /// 1-based access, matching p_k.
  const mpz_class& p(std::size_t k) const { return primes.at(k - 1); }
};

struct Window {
  mpz_class lo;
  mpz_class hi;
};

/// [p^c, (p+1)^c - 2]. (p+1)^c - 1 is never prime for c >= 2 since p divides it.
Window admissible_window(const mpz_class& p, unsigned long c);

/// Extra admissibility predicate used to model dead windows; default accepts all.
using PrimeFilter = std::function<bool(const mpz_class&)>;

struct BuildOptions {
  PrimalityPolicy policy;
  mpz_class start = 2;
  /// Upper end of the first window; defaults to `start` (p_1 fixed).
  std::optional<mpz_class> first_window_hi;
  PrimeFilter filter;
};

/// Appends the least admissible prime in the next window, or throws DeadWindow.
PrimeChain extend_min(const PrimeChain& chain, const PrimalityPolicy& policy = {});

/// Lexicographically smallest chain of `depth` primes, backtracking on dead windows.
PrimeChain build_min_chain(const ExponentSeq& exps, std::size_t depth, const BuildOptions& options = {});

struct StepRecord {
  std::size_t k = 0;  // step from p_k to p_{k+1}
  bool key1_ok = false;
  bool key2_ok = false;
  Window window;
  mpz_class key2_limit;  // p_k^c + ceil(p_k^(theta c))
  mpz_class chosen;
};

struct VerificationReport {
  std::vector<StepRecord> steps;
  std::size_t key1_failures = 0;
  std::size_t key2_failures = 0;
  bool all_prime = true;

  bool key1_all() const { return key1_failures == 0; }
};

/// Checks both chain inequalities at every step with exact integer comparisons.
/// theta defaults to 21/40.
VerificationReport verify_chain(const PrimeChain& chain, const mpq_class& theta = mpq_class(21, 40),
                                const PrimalityPolicy& policy = {});

}  // namespace prc
