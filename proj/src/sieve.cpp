#include "prc/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "prc/errors.hpp"

namespace prc {

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

namespace {

constexpr std::uint64_t kChunk = std::uint64_t{1} << 20;

std::uint32_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<std::uint32_t>(r);
}

// Marks primes in [lo, hi] (inclusive) into out[0 .. hi-lo].
void sieve_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint32_t>& base,
                   char* out) {
  const std::uint64_t len = hi - lo + 1;
  std::fill(out, out + len, 1);
  for (std::uint64_t n = lo; n < 2 && n <= hi; ++n) out[n - lo] = 0;
  for (const std::uint32_t p : base) {
    const std::uint64_t pp = std::uint64_t{p} * p;
    if (pp > hi) break;
    std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
    for (std::uint64_t m = start; m <= hi; m += p) out[m - lo] = 0;
  }
}

template <typename Fn>
void parallel_chunks(std::uint64_t lo, std::uint64_t hi, unsigned threads, Fn&& fn) {
  const std::uint64_t chunks = (hi - lo) / kChunk + 1;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t c = w; c < chunks; c += workers) fn(c);
    });
  }
}

void check_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw Error(ErrorKind::RangeInverted, "sieve range inverted");
  if (hi > SegmentedSieve::kMaxHi) {
    throw Error(ErrorKind::InvalidArgument, "sieve upper bound exceeds " + std::to_string(SegmentedSieve::kMaxHi));
  }
}

}  // namespace

std::vector<bool> SegmentedSieve::flags(std::uint64_t lo, std::uint64_t hi) const {
  check_range(lo, hi);
  const auto base = primes_up_to(isqrt(hi));
  std::vector<char> raw(hi - lo + 1);
  parallel_chunks(lo, hi, threads_, [&](std::uint64_t c) {
    const std::uint64_t a = lo + c * kChunk;
    const std::uint64_t b = std::min(hi, a + kChunk - 1);
    sieve_segment(a, b, base, raw.data() + (a - lo));
  });
  return std::vector<bool>(raw.begin(), raw.end());
}

std::uint64_t SegmentedSieve::count(std::uint64_t lo, std::uint64_t hi) const {
  check_range(lo, hi);
  const auto base = primes_up_to(isqrt(hi));
  const std::uint64_t chunks = (hi - lo) / kChunk + 1;
  std::vector<std::uint64_t> counts(chunks, 0);
  parallel_chunks(lo, hi, threads_, [&](std::uint64_t c) {
    const std::uint64_t a = lo + c * kChunk;
    const std::uint64_t b = std::min(hi, a + kChunk - 1);
    std::vector<char> seg(b - a + 1);
    sieve_segment(a, b, base, seg.data());
    counts[c] = static_cast<std::uint64_t>(std::count(seg.begin(), seg.end(), 1));
  });
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> SegmentedSieve::primes(std::uint64_t lo, std::uint64_t hi) const {
  const auto f = flags(lo, hi);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < f.size(); ++i) {
    if (f[i]) out.push_back(lo + i);
  }
  return out;
}

}  // namespace prc
