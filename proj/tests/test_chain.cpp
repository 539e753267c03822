#include <doctest.h>

#include "oracles.hpp"
#include "prc/chain.hpp"
#include "prc/chain_io.hpp"
#include "prc/errors.hpp"

using namespace prc;

namespace {

std::vector<mpz_class> Z(std::initializer_list<const char*> xs) {
  std::vector<mpz_class> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("admissible windows") {
  auto w = admissible_window(2, 3);
  CHECK(w.lo == 8);
  CHECK(w.hi == 25);
  w = admissible_window(2, 2);
  CHECK(w.lo == 4);
  CHECK(w.hi == 7);
  w = admissible_window(11, 3);
  CHECK(w.lo == 1331);
  CHECK(w.hi == 1726);
  CHECK(kind_of([] { admissible_window(2, 1); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("(p+1)^c - 1 is never prime") {
  for (std::uint64_t p = 2; p <= 100; ++p) {
    std::uint64_t v = 1;
    for (unsigned c = 1; c <= 5; ++c) {
      v *= p + 1;
      if (c >= 2) CHECK_MESSAGE(!oracle::trial_division_prime(v - 1), p << "^" << c);
    }
  }
}

TEST_CASE("exponent sequences") {
  const auto c3 = ExponentSeq::constant(3);
  CHECK(c3.c(1) == 3);
  CHECK(c3.c(7) == 3);
  CHECK(c3.product(4) == 81);
  CHECK(c3.is_constant(3));
  CHECK(c3.bound() == 3);
  const auto first1 = ExponentSeq::constant(3, 1);
  CHECK(first1.c(1) == 1);
  CHECK(first1.product(3) == 9);
  CHECK(!first1.is_constant(3));
  const auto per = ExponentSeq::periodic({2, 3});
  CHECK(per.c(1) == 2);
  CHECK(per.c(2) == 3);
  CHECK(per.c(3) == 2);
  CHECK(per.bound() == 3);
  const auto lst = ExponentSeq::explicit_list({1, 2, 5});
  CHECK(lst.product(3) == 10);
  CHECK(lst.bound() == 5);
  CHECK(kind_of([&] { lst.c(4); }) == ErrorKind::DepthInsufficient);
  CHECK(kind_of([] { ExponentSeq::constant(1); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ExponentSeq::explicit_list({2, 1}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ExponentSeq::explicit_list({0, 2}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ExponentSeq::explicit_list({}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("extend_min") {
  PrimeChain chain{ExponentSeq::constant(3), {2}, Certainty::Proven, {}};
  chain = extend_min(chain);
  CHECK(chain.primes == Z({"2", "11"}));
  chain = extend_min(chain);
  CHECK(chain.primes == Z({"2", "11", "1361"}));
  PrimeChain sq{ExponentSeq::constant(2), {2}, Certainty::Proven, {}};
  CHECK(extend_min(sq).primes == Z({"2", "5"}));
  PrimeChain empty{ExponentSeq::constant(2), {}, Certainty::Proven, {}};
  CHECK(kind_of([&] { extend_min(empty); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("minimal chains match the naive window scan") {
  for (unsigned c : {2U, 3U}) {
    const auto expect = oracle::naive_chain(c, 4);
    const auto got = build_min_chain(ExponentSeq::constant(c), 4);
    REQUIRE(got.length() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(got.primes[i] == mpz_class(std::to_string(expect[i])));
    CHECK(got.certainty == Certainty::Proven);
  }
  CHECK(build_min_chain(ExponentSeq::constant(3), 4).primes == Z({"2", "11", "1361", "2521008887"}));
  CHECK(build_min_chain(ExponentSeq::constant(2), 4).primes == Z({"2", "5", "29", "853"}));
  CHECK(build_min_chain(ExponentSeq::constant(3), 1).primes == Z({"2"}));
  CHECK(kind_of([] { build_min_chain(ExponentSeq::constant(3), 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("other exponent sequences") {
  CHECK(build_min_chain(ExponentSeq::explicit_list({1, 2, 3}), 3).primes == Z({"2", "5", "127"}));
  CHECK(kind_of([] { build_min_chain(ExponentSeq::explicit_list({1, 2, 3}), 4); }) ==
        ErrorKind::DepthInsufficient);
  CHECK(build_min_chain(ExponentSeq::periodic({2, 3}), 3).primes == Z({"2", "11", "127"}));
  BuildOptions from5;
  from5.start = 5;
  CHECK(build_min_chain(ExponentSeq::constant(2), 2, from5).primes == Z({"5", "29"}));
}

TEST_CASE("prefix property and determinism") {
  const auto a = build_min_chain(ExponentSeq::constant(3), 5);
  const auto b = build_min_chain(ExponentSeq::constant(3), 5);
  const auto c = build_min_chain(ExponentSeq::constant(3), 6);
  CHECK(a.primes == b.primes);
  CHECK(std::equal(a.primes.begin(), a.primes.end(), c.primes.begin()));
  CHECK(c.certainty == Certainty::Probable);  // p_6 is far above 2^64
}

TEST_CASE("backtracking across a simulated dead window") {
  // Hiding 29 and 31 kills the window [25, 34] after p_2 = 5, forcing p_2 = 7.
  BuildOptions options;
  options.filter = [](const mpz_class& q) { return q != 29 && q != 31; };
  CHECK(build_min_chain(ExponentSeq::constant(2), 3, options).primes == Z({"2", "7", "53"}));

  // With the first window widened, exhausting [2, 3] means trying p_1 = 3.
  BuildOptions wide;
  wide.first_window_hi = 3;
  wide.filter = [](const mpz_class& q) { return q != 5 && q != 7; };
  CHECK(build_min_chain(ExponentSeq::constant(2), 2, wide).primes == Z({"3", "11"}));

  BuildOptions none;
  none.filter = [](const mpz_class& q) { return q == 2; };
  CHECK(kind_of([&] { build_min_chain(ExponentSeq::constant(2), 2, none); }) == ErrorKind::Exhaustion);
}

TEST_CASE("verify_chain") {
  const auto mills = build_min_chain(ExponentSeq::constant(3), 4);
  const auto report = verify_chain(mills);
  CHECK(report.key1_all());
  CHECK(report.all_prime);
  CHECK(report.steps.size() == 3);

  const PrimeChain bad{ExponentSeq::constant(3), {2, 13}, Certainty::Proven, {}};
  const auto r13 = verify_chain(bad);
  CHECK(r13.steps[0].key1_ok);
  CHECK(!r13.steps[0].key2_ok);
  CHECK(r13.steps[0].key2_limit == 11);
  const PrimeChain good{ExponentSeq::constant(3), {2, 11}, Certainty::Proven, {}};
  CHECK(verify_chain(good).steps[0].key2_ok);

  const PrimeChain outside{ExponentSeq::constant(3), {2, 29}, Certainty::Proven, {}};
  CHECK(verify_chain(outside).key1_failures == 1);
  const PrimeChain composite{ExponentSeq::constant(3), {2, 9}, Certainty::Proven, {}};
  CHECK(!verify_chain(composite).all_prime);
  CHECK(kind_of([&] { verify_chain(PrimeChain{ExponentSeq::constant(3), {2}, Certainty::Proven, {}}); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("key1 holds on every built chain for c = 2..5") {
  for (unsigned long c = 2; c <= 5; ++c) {
    const auto chain = build_min_chain(ExponentSeq::constant(c), c == 5 ? 5 : 6);
    CHECK_MESSAGE(verify_chain(chain).key1_all(), "c = " << c);
  }
}

TEST_CASE("chain files round-trip") {
  auto mills = build_min_chain(ExponentSeq::constant(3), 6);
  mills.policy.seed = 42;
  mills.policy.extra_rounds = 9;
  for (const PrimeChain& chain :
       {mills, PrimeChain{ExponentSeq::explicit_list({1, 2, 3}), {2, 5, 127}, Certainty::Proven, {}},
        PrimeChain{ExponentSeq::periodic({2, 3}, 1), {2, 5, 127}, Certainty::Proven, {}},
        PrimeChain{ExponentSeq::constant(3, 2), {7}, Certainty::Proven, {}}}) {
    const std::string text = chain_to_json(chain);
    const PrimeChain back = chain_from_json(text);
    CHECK(back.exps == chain.exps);
    CHECK(back.primes == chain.primes);
    CHECK(back.certainty == chain.certainty);
    CHECK(back.policy.seed == chain.policy.seed);
    CHECK(back.policy.extra_rounds == chain.policy.extra_rounds);
    CHECK(chain_to_json(back) == text);
  }
  CHECK(chain_to_json(mills).find("e+") == std::string::npos);
  CHECK(kind_of([] { chain_from_json("{"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { chain_from_json(R"({"exponents":{"kind":"weird"},"primes":[],"certainty":"proven"})"); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { chain_from_json(R"({"exponents":{"kind":"constant","c":3},"primes":["1.5"],"certainty":"proven"})"); }) ==
        ErrorKind::InvalidArgument);
}
