#include "prc/primality.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <thread>
#include <vector>

#include "prc/errors.hpp"
#include "prc/sieve.hpp"

namespace prc {

const char* to_string(PrimalityStatus status) {
  switch (status) {
    case PrimalityStatus::ProvenPrime: return "proven-prime";
    case PrimalityStatus::ProbablePrime: return "probable-prime";
    case PrimalityStatus::Composite: return "composite";
  }
  return "unknown";
}

std::string PrimalityPolicy::describe() const {
  return "deterministic-mr64 below 2^64; bpsw+" + std::to_string(extra_rounds) + "-rounds above";
}

namespace {

constexpr std::uint32_t kTrialLimit = 1000;

// No strong pseudoprime below 2^64 passes all of these (Sinclair's set).
constexpr std::array<std::uint64_t, 7> kMr64Bases = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(kTrialLimit);
  return primes;
}

const std::vector<std::uint32_t>& prefilter_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(1U << 18);
  return primes;
}

bool below_2_64(const mpz_class& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

void mod_into(mpz_class& x, const mpz_class& n) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t()); }

// x / 2 mod n for odd n.
void half_mod(mpz_class& x, const mpz_class& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  x >>= 1;
}

PrimalityVerdict verdict(const mpz_class& n, PrimalityStatus status, std::string method) {
  return PrimalityVerdict{n, status, std::move(method)};
}

}  // namespace

bool strong_probable_prime(const mpz_class& n, const mpz_class& a) {
  mpz_class d = n - 1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const mpz_class n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = x * x;
    mod_into(x, n);
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool strong_lucas_probable_prime(const mpz_class& n) {
  // Selfridge method A: first D in 5, -7, 9, -11, ... with (D/n) = -1.
  long d_abs = 5;
  long sign = 1;
  long D = 0;
  for (;;) {
    D = sign * d_abs;
    const mpz_class dz(D);
    const int j = mpz_jacobi(dz.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && mpz_cmpabs_ui(n.get_mpz_t(), static_cast<unsigned long>(d_abs)) > 0) return false;
    d_abs += 2;
    sign = -sign;
  }
  const long P = 1;
  const long Q = (1 - D) / 4;

  mpz_class k = n + 1;
  const mp_bitcnt_t s = mpz_scan1(k.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(k.get_mpz_t(), k.get_mpz_t(), s);

  mpz_class U = 1, V = P, Qk = Q;
  mod_into(Qk, n);
  const mpz_class Qz(Q), Dz(D);
  const auto bits = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2));
  for (long i = bits - 2; i >= 0; --i) {
    U = U * V;
    mod_into(U, n);
    V = V * V - 2 * Qk;
    mod_into(V, n);
    Qk = Qk * Qk;
    mod_into(Qk, n);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      mpz_class u2 = P * U + V;
      mod_into(u2, n);
      half_mod(u2, n);
      mpz_class v2 = Dz * U + P * V;
      mod_into(v2, n);
      half_mod(v2, n);
      U = u2;
      V = v2;
      Qk = Qk * Qz;
      mod_into(Qk, n);
    }
  }
  if (U == 0 || V == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    V = V * V - 2 * Qk;
    mod_into(V, n);
    if (V == 0) return true;
    Qk = Qk * Qk;
    mod_into(Qk, n);
  }
  return false;
}

PrimalityVerdict is_prime(const mpz_class& n, const PrimalityPolicy& policy) {
  if (n < 2) return verdict(n, PrimalityStatus::Composite, "below-2");
  for (const std::uint32_t p : trial_primes()) {
    if (n == p) return verdict(n, PrimalityStatus::ProvenPrime, "deterministic-small");
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      return verdict(n, PrimalityStatus::Composite, "factor " + std::to_string(p));
    }
  }
  if (n < mpz_class(kTrialLimit) * kTrialLimit) {
    return verdict(n, PrimalityStatus::ProvenPrime, "deterministic-small");
  }

  if (below_2_64(n)) {
    for (const std::uint64_t b : kMr64Bases) {
      mpz_class a;
      mpz_import(a.get_mpz_t(), 1, 1, sizeof(b), 0, 0, &b);
      mod_into(a, n);
      if (a < 2 || a == n - 1) continue;
      if (!strong_probable_prime(n, a)) {
        return verdict(n, PrimalityStatus::Composite, "mr-witness " + a.get_str());
      }
    }
    return verdict(n, PrimalityStatus::ProvenPrime, "deterministic-mr64");
  }

  if (!strong_probable_prime(n, 2)) return verdict(n, PrimalityStatus::Composite, "mr-witness 2");
  if (mpz_perfect_square_p(n.get_mpz_t())) return verdict(n, PrimalityStatus::Composite, "perfect-square");
  if (!strong_lucas_probable_prime(n)) return verdict(n, PrimalityStatus::Composite, "lucas");

  // Bases depend only on (seed, n), so verdicts are independent of call order.
  gmp_randclass rng(gmp_randinit_default);
  mpz_class seed_value = (n << 64) + mpz_class(std::to_string(policy.seed));
  rng.seed(seed_value);
  const mpz_class span = n - 3;
  for (unsigned round = 0; round < policy.extra_rounds; ++round) {
    const mpz_class a = rng.get_z_range(span) + 2;
    if (!strong_probable_prime(n, a)) {
      return verdict(n, PrimalityStatus::Composite,
                     "mr-witness " + a.get_str() + " (round " + std::to_string(round + 1) + ")");
    }
  }
  return verdict(n, PrimalityStatus::ProbablePrime, "bpsw+" + std::to_string(policy.extra_rounds) + "-rounds");
}

namespace {

// Offsets in [0, len) of block start `a` that survive small-prime sieving.
std::vector<std::uint32_t> prefiltered_offsets(const mpz_class& a, std::uint32_t len) {
  std::vector<char> alive(len, 1);
  const auto& primes = prefilter_primes();
  const bool small_block = mpz_cmp_ui(a.get_mpz_t(), primes.back()) <= 0;
  for (const std::uint32_t p : primes) {
    const std::uint32_t r = static_cast<std::uint32_t>(mpz_fdiv_ui(a.get_mpz_t(), p));
    std::uint64_t off = (p - r) % p;
    for (; off < len; off += p) alive[off] = 0;
    if (small_block) {
      // Keep p itself when it lies inside the block.
      const mpz_class rel = mpz_class(p) - a;
      if (rel >= 0 && rel < len) alive[rel.get_ui()] = 1;
    }
  }
  if (small_block) {
    for (std::uint32_t i = 0; i < len && a + i < 2; ++i) alive[i] = 0;
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < len; ++i) {
    if (alive[i]) out.push_back(i);
  }
  return out;
}

// Index of the first accepted candidate, if any. Deterministic for any thread count.
std::optional<std::size_t> first_accepted(const mpz_class& base, const std::vector<std::uint32_t>& offsets,
                                          const PrimalityPolicy& policy,
                                          std::vector<PrimalityStatus>& statuses) {
  statuses.assign(offsets.size(), PrimalityStatus::Composite);
  if (policy.threads <= 1 || offsets.size() < 2) {
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const auto v = is_prime(base + offsets[i], policy);
      statuses[i] = v.status;
      if (v.accepted()) return i;
    }
    return std::nullopt;
  }
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{kNone};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < policy.threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= offsets.size() || i >= best.load()) return;
          const auto v = is_prime(base + offsets[i], policy);
          statuses[i] = v.status;
          if (v.accepted()) {
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
          }
        }
      });
    }
  }
  const std::size_t b = best.load();
  if (b == kNone) return std::nullopt;
  return b;
}

}  // namespace

std::optional<PrimeSearchResult> smallest_prime_in(const mpz_class& lo, const mpz_class& hi,
                                                   const PrimalityPolicy& policy) {
  if (lo > hi) throw Error(ErrorKind::RangeInverted, "smallest_prime_in: lo > hi");
  if (hi < 2) return std::nullopt;
  mpz_class a = lo < 2 ? mpz_class(2) : lo;

  const unsigned long bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  const std::uint32_t block = static_cast<std::uint32_t>(std::clamp<unsigned long>(8 * bits, 512, 1UL << 16));
  std::vector<PrimalityStatus> statuses;
  while (a <= hi) {
    const mpz_class remaining = hi - a + 1;
    const std::uint32_t len = remaining < block ? static_cast<std::uint32_t>(remaining.get_ui()) : block;
    const auto offsets = prefiltered_offsets(a, len);
    if (const auto idx = first_accepted(a, offsets, policy, statuses)) {
      return PrimeSearchResult{a + offsets[*idx], statuses[*idx]};
    }
    a += len;
  }
  return std::nullopt;
}

}  // namespace prc
