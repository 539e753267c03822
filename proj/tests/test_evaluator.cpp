#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "prc/chain.hpp"
#include "prc/errors.hpp"
#include "prc/evaluator.hpp"

using namespace prc;

namespace {

const PrimeChain& mills8() {
  static const PrimeChain chain = build_min_chain(ExponentSeq::constant(3), 8);
  return chain;
}

mpq_class dec(const char* s) {
  // "1.3063778838" -> exact rational
  std::string t(s);
  const auto dot = t.find('.');
  const std::size_t places = dot == std::string::npos ? 0 : t.size() - dot - 1;
  if (dot != std::string::npos) t.erase(dot, 1);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, places);
  mpq_class q(mpz_class(t, 10), den);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("bounds enclose the nested-interval endpoints") {
  const PrimeChain two{ExponentSeq::constant(3), {2}, Certainty::Proven, {}};
  const RealInterval b = bounds(two, 1, 10);
  CHECK(b.lo().to_rational() < dec("1.25992105"));
  CHECK(b.lo().to_rational() > dec("1.25992104"));
  CHECK(b.hi().to_rational() > dec("1.44224957"));
  CHECK(b.hi().to_rational() < dec("1.44224958"));

  // From k = 4 on the window sits inside the ten-place decimal cell.
  CHECK(bounds(mills8(), 2, 20).contains(dec("1.3063778838")));
  for (std::size_t k = 4; k <= 8; ++k) {
    const RealInterval w = bounds(mills8(), k, 20);
    CHECK(w.lo().to_rational() > dec("1.3063778838"));
    CHECK(w.hi().to_rational() < dec("1.3063778839"));
  }

  const PrimeChain unit{ExponentSeq::constant(3, 1), {7}, Certainty::Proven, {}};
  const RealInterval u = bounds(unit, 1, 5);
  CHECK(u.lo().to_rational() == 7);
  CHECK(u.hi().to_rational() == 8);
}

TEST_CASE("bounds agree with an independent high-precision evaluator") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> pd(2, 1000000);
  std::uniform_int_distribution<unsigned long> cd(1, 400);
  oracle::Float::default_precision(220);
  for (int i = 0; i < 20; ++i) {
    const long p = pd(rng);
    const unsigned long C = cd(rng);
    const unsigned long digits = 40;
    const PrimeChain chain{ExponentSeq::explicit_list({C}), {mpz_class(p)}, Certainty::Proven, {}};
    const RealInterval b = bounds(chain, 1, digits);
    const oracle::Float lo = boost::multiprecision::pow(oracle::Float(p), oracle::Float(1) / C);
    const oracle::Float hi = boost::multiprecision::pow(oracle::Float(p + 1), oracle::Float(1) / C);
    const oracle::Float slack = boost::multiprecision::pow(oracle::Float(10), -static_cast<long>(digits) - 2);
    const oracle::Float blo(b.lo().get()), bhi(b.hi().get());
    CHECK(blo <= lo);
    CHECK(bhi >= hi);
    CHECK(lo - blo < slack);
    CHECK(bhi - hi < slack);
  }
}

TEST_CASE("bounds stop at the precision cap") {
  PrecisionPolicy tight{64, 64};
  CHECK_THROWS_AS(bounds(mills8(), 8, 500, tight), Error);
  try {
    bounds(mills8(), 8, 500, tight);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Undecidable);
  }
  CHECK_THROWS_AS(bounds(mills8(), 9, 5), Error);
}

TEST_CASE("common decimal prefix") {
  CHECK(common_decimal_prefix(dec("1.25"), dec("1.26")) == "1.2");
  CHECK(common_decimal_prefix(dec("0.999"), dec("1.001")).empty());
  CHECK(common_decimal_prefix(dec("2.236"), dec("2.449")) == "2");
  CHECK(common_decimal_prefix(dec("1.2"), dec("1.3")) == "1");
  CHECK(common_decimal_prefix(dec("3.14159"), dec("3.14159")).rfind("3.14159", 0) == 0);
  CHECK(common_decimal_prefix(dec("12.345"), dec("12.349")) == "12.34");
  CHECK(common_decimal_prefix(dec("9.5"), dec("10.5")).empty());
}

TEST_CASE("certified digits") {
  const auto d8 = certified_digits(mills8());
  CHECK(d8.digits.rfind("1.3063778838", 0) == 0);
  CHECK(d8.depth == 8);
  CHECK(d8.conditional);

  // With C_1 = 1 the enclosure is [sqrt 5, sqrt 6] = [2.236.., 2.449..]:
  // only the integer part is shared.
  const PrimeChain sq{ExponentSeq::constant(2, 1), {2, 5}, Certainty::Proven, {}};
  const auto d2 = certified_digits(sq);
  CHECK(d2.digits == "2");
  CHECK(!d2.conditional);
  // With C_1 = 2 it is [5^(1/4), 6^(1/4)] = [1.495.., 1.565..].
  const PrimeChain sq2{ExponentSeq::constant(2), {2, 5}, Certainty::Proven, {}};
  CHECK(certified_digits(sq2).digits == "1");

  const PrimeChain one{ExponentSeq::constant(3), {2}, Certainty::Proven, {}};
  CHECK(certified_digits(one).digits == "1");

  // Refinement never changes an emitted digit.
  const auto low = certified_digits(build_min_chain(ExponentSeq::constant(3), 5));
  PrecisionPolicy high;
  high.start_bits = 4096;
  const auto more = certified_digits(build_min_chain(ExponentSeq::constant(3), 5), high);
  CHECK(more.digits.rfind(low.digits, 0) == 0);
  CHECK(d8.digits.rfind(low.digits, 0) == 0);
}

TEST_CASE("nesting is strict") {
  const auto& chain = mills8();
  for (std::size_t k = 1; k < chain.length(); ++k) {
    const unsigned long digits = mpz_sizeinbase(mpz_class(chain.exps.product(k + 1) * chain.p(k + 1)).get_mpz_t(), 10) + 4;
    const RealInterval outer = bounds(chain, k, digits);
    const RealInterval inner = bounds(chain, k + 1, digits);
    CHECK_MESSAGE(outer.strictly_contains(inner), "k = " << k);
  }
}

TEST_CASE("nearness on the cubic chain") {
  const auto& chain = mills8();
  const auto table = nearness_table(chain);
  REQUIRE(table.size() == 7);
  // xi^3 = 2.2294947..., so the first distance is about 0.2295.
  CHECK(table[0].distance.lo().to_rational() > dec("0.229"));
  CHECK(table[0].distance.hi().to_rational() < dec("0.230"));
  CHECK(!table[0].gamma_fitted);
  for (const auto& r : table) {
    CHECK(r.distance.positive());
    if (r.k >= 2) CHECK_MESSAGE(compare(r.distance.hi(), r.bound_simple.lo()) <= 0, "k = " << r.k);
  }
  for (std::size_t i = 1; i + 1 < table.size(); ++i) {
    // distance.hi(k+1) < distance.hi(k)^1.5, compared through logarithms.
    const RealInterval lhs = log(RealInterval(table[i + 1].distance.hi(), table[i + 1].distance.hi()));
    const RealInterval rhs = log(RealInterval(table[i].distance.hi(), table[i].distance.hi())) *
                             RealInterval::from_rational(mpq_class(3, 2), 64);
    CHECK_MESSAGE(lhs.certainly_less(rhs), "k = " << table[i].k);
  }
  const mpq_class theta(21, 40);
  CHECK(3 * theta - 2 == mpq_class(-17, 40));
  const RealInterval g = closed_form_gamma(2, theta, 64);
  CHECK(g.lo().to_rational() > mpq_class(490, 10000));
  CHECK(g.hi().to_rational() < mpq_class(492, 10000));

  const auto single = nearness(chain, 3);
  CHECK(compare(single.distance.hi(), table[2].distance.hi()) == 0);
  CHECK_THROWS_AS(nearness(chain, 8), Error);
}

TEST_CASE("fitted gamma on a square chain") {
  const auto chain = build_min_chain(ExponentSeq::constant(2), 6);
  const auto table = nearness_table(chain);
  for (const auto& r : table) {
    CHECK(r.gamma_fitted);
    CHECK(compare(r.distance.hi(), r.bound_gamma.hi()) <= 0);
  }
  NearnessOptions fixed;
  fixed.gamma = mpq_class(1, 100);
  const auto t2 = nearness_table(chain, fixed);
  CHECK(!t2.front().gamma_fitted);
  CHECK(t2.front().gamma.contains(mpq_class(1, 100)));
}

TEST_CASE("mahler table") {
  const auto rows = mahler_table(3, 2, 60, mpq_class(1, 10));
  REQUIRE(rows.size() == 60);
  CHECK(rows[0].distance == mpq_class(1, 2));
  CHECK(rows[4].distance == mpq_class(13, 32));
  for (const auto& r : rows) {
    CHECK(r.distance == oracle::mahler_distance(3, 2, r.n));
    CHECK(r.trivial_bound_holds);
    CHECK(r.mahler_holds == (mpfr_cmp_q(r.bound.hi().get(), r.distance.get_mpq_t()) < 0));
  }
  CHECK_THROWS_AS(mahler_table(4, 1, 5, mpq_class(1, 10)), Error);
  CHECK_THROWS_AS(mahler_table(2, 3, 5, mpq_class(1, 10)), Error);
  CHECK_THROWS_AS(mahler_table(6, 4, 5, mpq_class(1, 10)), Error);
  CHECK_THROWS_AS(mahler_table(3, 2, 5, mpq_class(0)), Error);
}
