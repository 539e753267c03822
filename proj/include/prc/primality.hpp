#pragma once

// Big-integer primality decisions.
//
// Below 2^64 the answer is deterministic (trial division plus a fixed
// Miller-Rabin base set known to have no strong pseudoprimes in range).
// Above 2^64 a composite verdict is still unconditional, but "prime" means
// Baillie-PSW plus `extra_rounds` seeded random-base strong-probable-prime
// rounds.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace prc {

enum class PrimalityStatus { ProvenPrime, ProbablePrime, Composite };

const char* to_string(PrimalityStatus status);

struct PrimalityPolicy {
  unsigned extra_rounds = 5;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  std::string describe() const;
};

struct PrimalityVerdict {
  mpz_class value;
  PrimalityStatus status = PrimalityStatus::Composite;
  /// e.g. "deterministic-small", "deterministic-mr64", "bpsw+5-rounds",
  /// or for composites the reason: "factor 3", "mr-witness 2", "lucas".
  std::string method;

  bool accepted() const { return status != PrimalityStatus::Composite; }
};

PrimalityVerdict is_prime(const mpz_class& n, const PrimalityPolicy& policy = {});

/// Strong probable-prime test to base a. Requires odd n > 3 and 1 < a < n - 1.
bool strong_probable_prime(const mpz_class& n, const mpz_class& a);

/// Strong Lucas probable-prime test with Selfridge parameters.
/// Requires odd n > 2 that is not a perfect square.
bool strong_lucas_probable_prime(const mpz_class& n);

struct PrimeSearchResult {
  mpz_class prime;
  PrimalityStatus status;
};

/// Least q in [lo, hi] accepted by is_prime, or nullopt. The result does not
/// depend on policy.threads.
std::optional<PrimeSearchResult> smallest_prime_in(const mpz_class& lo, const mpz_class& hi,
                                                   const PrimalityPolicy& policy = {});

}  // namespace prc
