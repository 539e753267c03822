#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "prc/errors.hpp"
#include "prc/gaps.hpp"
#include "prc/sieve.hpp"

using namespace prc;

namespace {

std::uint64_t oracle_count(const std::vector<bool>& flags, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t n = 0;
  for (std::uint64_t i = lo; i <= hi; ++i) n += flags[i] ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("segmented sieve against the plain sieve") {
  const auto flags = oracle::sieve(3000000);
  for (unsigned threads : {1U, 3U}) {
    const SegmentedSieve s(threads);
    CHECK(s.count(0, 3000000) == oracle_count(flags, 0, 3000000));
    CHECK(s.count(999983, 999983) == 1);
    CHECK(s.count(24, 28) == 0);
    const auto ps = s.primes(1000, 1100);
    CHECK(ps.front() == 1009);
    CHECK(ps.back() == 1097);
  }
  CHECK(primes_up_to(30) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("gap survey examples") {
  const auto recs = gap_survey({mpz_class(1000000)}, mpq_class(21, 40));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].interval_width == 1412);
  const auto flags = oracle::sieve(1001412);
  CHECK(recs[0].prime_count == oracle_count(flags, 1000000, 1001412));
  CHECK(recs[0].density_ratio.positive());
  const double ratio = recs[0].prime_count * std::log(1e6) / std::pow(1e6, 21.0 / 40);
  CHECK(std::abs(recs[0].density_ratio.mid().to_double() - ratio) < 1e-9);

  const auto hundred = gap_survey({mpz_class(100)}, mpq_class(1));
  CHECK(hundred[0].prime_count == 21);
  CHECK(hundred[0].interval_width == 100);
  CHECK(mpq_class(6) * mpq_class(21, 40) == mpq_class(63, 20));
}

TEST_CASE("gap survey rejects bad input") {
  CHECK_THROWS_AS(gap_survey({mpz_class(99)}, mpq_class(1, 2)), Error);
  CHECK_THROWS_AS(gap_survey({mpz_class(1000)}, mpq_class(0)), Error);
  CHECK_THROWS_AS(gap_survey({mpz_class(1000)}, mpq_class(3, 2)), Error);
  // x >= 100 and theta > 0 keep x^theta >= 1, so the narrowest window has width 1.
  CHECK(gap_survey({mpz_class(1000)}, mpq_class(1, 100))[0].interval_width == 1);
}

TEST_CASE("gap survey beyond the sieve range uses primality tests") {
  const mpz_class x("1000000000000000000");  // 10^18
  const auto recs = gap_survey({x}, mpq_class(1, 4));
  CHECK(recs[0].interval_width == 31622);
  CHECK(recs[0].prime_count > 0);
}

TEST_CASE("random windows match the oracle") {
  const auto flags = oracle::sieve(10100000);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> d(1000000, 10000000);
  std::vector<mpz_class> xs;
  for (int i = 0; i < 50; ++i) xs.emplace_back(std::to_string(d(rng)));
  for (const auto& r : gap_survey(xs, mpq_class(21, 40))) {
    const std::uint64_t x = r.x.get_ui(), w = r.interval_width.get_ui();
    CHECK(r.prime_count == oracle_count(flags, x, x + w));
    CHECK(r.prime_count >= 1);
  }
}

TEST_CASE("exceptional survey") {
  const auto s = exceptional_survey(1000000, mpq_class(1, 2), mpq_class(1, 2));
  CHECK(s.exceptional_count == 0);
  CHECK(s.intervals > 800);
  CHECK(s.matomaki_bound.contains(mpq_class(10)));

  const auto whole = exceptional_survey(1000000, mpq_class(1), mpq_class(0));
  CHECK(whole.intervals == 1);
  CHECK(whole.exceptional_count == 0);

  // d = 0 counts prime-free tiles; with tiny tiles there are many.
  const auto free = exceptional_survey(1000, mpq_class(1, 2), mpq_class(0));
  const auto flags = oracle::sieve(2000);
  std::uint64_t empty = 0;
  for (std::uint64_t n = 1000; n <= 2000;) {
    const auto len = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    if (n + len > 2000) break;
    if (oracle_count(flags, n, n + len) == 0) ++empty;
    n += len + 1;
  }
  CHECK(free.exceptional_count == empty);

  std::uint64_t last = 0;
  for (const char* d : {"0", "1/4", "1/2", "1", "2", "4"}) {
    const auto r = exceptional_survey(100000, mpq_class(1, 2), mpq_class(d));
    CHECK(r.exceptional_count >= last);
    last = r.exceptional_count;
  }
  CHECK_THROWS_AS(exceptional_survey(1000, mpq_class(1, 3), mpq_class(1)), Error);
  CHECK_THROWS_AS(exceptional_survey(1000, mpq_class(1, 2), mpq_class(-1)), Error);
}
