#pragma once

#include <cstdint>
#include <vector>

namespace prc {

/// All primes <= limit (plain Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Segmented sieve over [lo, hi] for hi up to ~1e12 (base primes up to sqrt(hi)).
class SegmentedSieve {
 public:
  /// Largest hi this sieve accepts.
  static constexpr std::uint64_t kMaxHi = 1'000'000'000'000ULL;

  explicit SegmentedSieve(unsigned threads = 1) : threads_(threads == 0 ? 1 : threads) {}

  /// Primality flags for every n in [lo, hi]; flags[i] refers to lo + i.
  std::vector<bool> flags(std::uint64_t lo, std::uint64_t hi) const;

  std::uint64_t count(std::uint64_t lo, std::uint64_t hi) const;

  std::vector<std::uint64_t> primes(std::uint64_t lo, std::uint64_t hi) const;

 private:
  unsigned threads_;
};

}  // namespace prc
