// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "prc/chain.hpp"
#include "prc/chain_io.hpp"
#include "prc/cli.hpp"
#include "prc/evaluator.hpp"
#include "prc/gaps.hpp"
#include "prc/pisot.hpp"
#include "prc/residues.hpp"

using namespace prc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

const PrimeChain& mills(std::size_t depth) {
  static std::map<std::size_t, PrimeChain> cache;
  auto it = cache.find(depth);
  if (it == cache.end()) it = cache.emplace(depth, build_min_chain(ExponentSeq::constant(3), depth)).first;
  return it->second;
}

std::string join(const std::vector<mpz_class>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

}  // namespace

int main() {
  criterion(1, "Mills digits", [] {
    const std::string path = (std::filesystem::temp_directory_path() / "prc_acceptance_mills8.json").string();
    std::ostringstream out, err;
    if (run_cli({"build-chain", "--c", "3", "--depth", "8", "--out", path}, out, err) != 0) {
      return Outcome{false, "build-chain failed: " + err.str()};
    }
    std::ostringstream dout;
    const int code = run_cli({"digits", "--chain", path}, dout, err);
    std::filesystem::remove(path);
    const std::string digits = dout.str().substr(0, dout.str().find('\n'));
    const std::string expect = "1.3063778838";
    const bool ok = code == 0 && digits.rfind(expect, 0) == 0;
    return Outcome{ok, "certified " + std::to_string(digits.size() > 2 ? digits.size() - 2 : 0) +
                           " decimals, prefix " + digits.substr(0, expect.size())};
  });

  criterion(2, "chain regression", [] {
    bool ok = true;
    std::string detail;
    for (unsigned c : {3U, 2U}) {
      const auto got = build_min_chain(ExponentSeq::constant(c), 4);
      const auto expect = oracle::naive_chain(c, 4);
      std::vector<mpz_class> e;
      for (auto v : expect) e.emplace_back(std::to_string(v));
      ok = ok && got.primes == e;
      detail += (detail.empty() ? "" : "; ") + std::string("c=") + std::to_string(c) + " [" + join(got.primes) + "]";
    }
    return Outcome{ok, detail + " equal naive window scan"};
  });

  criterion(3, "key1 on built chains", [] {
    std::size_t steps = 0, violations = 0;
    for (unsigned long c = 2; c <= 5; ++c) {
      const auto chain = build_min_chain(ExponentSeq::constant(c), 6);
      const auto report = verify_chain(chain);
      steps += report.steps.size();
      violations += report.key1_failures;
      // Independent restatement: p^c <= q <= (p+1)^c - 2.
      for (std::size_t k = 1; k < chain.length(); ++k) {
        mpz_class lo, hi;
        mpz_pow_ui(lo.get_mpz_t(), chain.p(k).get_mpz_t(), c);
        mpz_class p1 = chain.p(k) + 1;
        mpz_pow_ui(hi.get_mpz_t(), p1.get_mpz_t(), c);
        if (!(lo <= chain.p(k + 1) && chain.p(k + 1) <= hi - 2)) ++violations;
      }
    }
    return Outcome{violations == 0, std::to_string(steps) + " steps over c=2..5 depth 6, " +
                                        std::to_string(violations) + " violations"};
  });

  criterion(4, "strict nesting", [] {
    const auto& chain = mills(8);
    std::size_t bad = 0;
    for (std::size_t k = 1; k < chain.length(); ++k) {
      const mpz_class scale = chain.exps.product(k + 1) * (chain.p(k + 1) + 1);
      const unsigned long digits = mpz_sizeinbase(scale.get_mpz_t(), 10) + 4;
      if (!bounds(chain, k, digits).strictly_contains(bounds(chain, k + 1, digits))) ++bad;
    }
    return Outcome{bad == 0, "k=1..7 on the depth-8 cubic chain, " + std::to_string(bad) + " violations"};
  });

  criterion(5, "nearness decay", [] {
    const auto& chain = mills(8);
    const auto table = nearness_table(chain);
    bool ok = true;
    std::string worst;
    for (const auto& r : table) {
      if (r.k < 2 || r.k > 6) continue;
      const mpfr_prec_t prec = r.distance.precision();
      const RealInterval pk = RealInterval::from_integer(chain.p(r.k), prec);
      const RealInterval rhs = RealInterval::from_integer(2L, prec) *
                               exp(RealInterval::from_rational(mpq_class(-17, 40), prec) * log(pk));
      if (compare(r.distance.hi(), rhs.lo()) > 0) ok = false;
    }
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
      if (compare(table[i + 1].distance.hi(), table[i].distance.hi()) >= 0) ok = false;
    }
    return Outcome{ok, "dist.hi <= 2 p_k^(-17/40) for k=2..6, strictly decreasing over k=1..7; dist(6).hi=" +
                           table[5].distance.hi().to_string(6, MPFR_RNDU)};
  });

  criterion(6, "degree bounds", [] {
    const auto b3 = degree_bound(3), b4 = degree_bound(4), b5 = degree_bound(5);
    const bool ok = b5.bound == mpq_class(19, 11) && b5.allowed_degrees.empty() && b4.bound == mpq_class(19, 9) &&
                    b4.allowed_degrees == std::vector<unsigned>{2} && b3.bound == mpq_class(57, 17) &&
                    b3.allowed_degrees == std::vector<unsigned>{2, 3};
    return Outcome{ok, "b=3 57/17 {2,3}; b=4 19/9 {2}; b=5 19/11 {}"};
  });

  criterion(7, "power-sum consistency", [] {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-20, 20);
    std::size_t polys = 0, exact_mismatch = 0, float_mismatch = 0;
    double worst = 0;
    while (polys < 100) {
      const long a = d(rng), b = d(rng), c = d(rng);
      if (oracle::cubic_has_integer_root(a, b, c)) continue;
      ++polys;
      const auto poly = MonicIntPoly::cubic(a, b, c);
      const auto z = oracle::roots({-c, b, -a}, 120);
      for (unsigned long n = 0; n <= 50; ++n) {
        const mpz_class rec = power_sum_recurrence(poly, n);
        if (rec != power_sum_matrix(poly, n)) ++exact_mismatch;
        const oracle::Float f = oracle::float_power_sum(z, n);
        const oracle::Float exact(rec.get_str());
        const oracle::Float scale = std::max(oracle::Float(1), oracle::Float(boost::multiprecision::abs(exact)));
        const double rel = static_cast<double>(boost::multiprecision::abs(f - exact) / scale);
        worst = std::max(worst, rel);
        if (!(rel <= 1e-6)) ++float_mismatch;
      }
    }
    std::ostringstream s;
    s << polys << " irreducible cubics, n=0..50: " << exact_mismatch << " exact mismatches, worst float relative error "
      << worst;
    return Outcome{exact_mismatch == 0 && float_mismatch == 0, s.str()};
  });

  criterion(8, "quadratic exclusion", [] {
    const auto& chain = mills(6);
    const auto r = quadratic_exclusion(chain, 1);
    std::size_t independent = 0;
    for (std::size_t k = 1; k < chain.length(); ++k) {
      if (mpz_divisible_p(chain.p(k + 1).get_mpz_t(), chain.p(k).get_mpz_t())) ++independent;
    }
    return Outcome{r.divisibility_hits == 0 && independent == 0 && r.steps.size() == 5,
                   std::to_string(r.steps.size()) + " adjacent pairs, " + std::to_string(r.divisibility_hits) +
                       " divisibility hits"};
  });

  criterion(9, "cubic scan vs floating-root oracle", [] {
    const auto& chain = mills(8);
    bool ok = true;
    std::string detail;
    for (std::size_t m = 1; m <= 3; ++m) {
      const ScanResult r = cubic_scan(chain, m);
      std::vector<oracle::ScanHit> lib;
      for (const auto& s : r.survivors) lib.push_back({s.poly.A, s.poly.B, s.poly.C});
      const auto hits = oracle::cubic_scan_oracle(chain.primes, m, 3 * chain.p(m) + 10);
      ok = ok && lib == hits;
      detail += (m > 1 ? "; " : "") + std::string("m=") + std::to_string(m) + " examined " +
                std::to_string(r.examined) + " (B in +-" + r.b_limit.get_str() + ") survivors " +
                std::to_string(lib.size()) + "/" + std::to_string(hits.size());
    }
    return Outcome{ok, detail};
  });

  criterion(10, "residues mod 3", [] {
    const auto& chain = mills(6);
    const auto r = residue_report(chain);
    std::vector<unsigned long> expect;
    std::vector<std::size_t> expect_w;
    for (const auto& p : chain.primes) expect.push_back(oracle::digit_sum_mod3(p.get_str()));
    for (std::size_t k = 1; k < expect.size(); ++k) {
      if (expect[k - 1] != expect[k]) expect_w.push_back(k);
    }
    const PrimeChain pair{ExponentSeq::constant(3), {7, 347}, Certainty::Proven, {}};
    const auto synthetic = residue_report(pair);
    const bool synthetic_ok = synthetic.witness_applicable && synthetic.witness_pairs == std::vector<std::size_t>{1};
    std::string res, wit;
    for (std::size_t i = 0; i < r.residues.size(); ++i) res += (i ? "," : "") + std::to_string(r.residues[i]);
    for (std::size_t i = 0; i < r.witness_pairs.size(); ++i) wit += (i ? "," : "") + std::to_string(r.witness_pairs[i]);
    const bool constant = r.witness_pairs.empty();
    return Outcome{r.residues == expect && r.witness_pairs == expect_w && r.fermat_ok && synthetic_ok,
                   "depth 6 residues [" + res + "] witnesses {" + wit + "} match digit-sum oracle; " +
                       (constant ? "constant" : "NOT constant, contrary to the stated expectation") +
                       "; [7,347] flagged at k=1"};
  });

  criterion(11, "gap survey", [] {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::uint64_t> d(1000000, 10000000);
    std::vector<mpz_class> xs;
    for (int i = 0; i < 200; ++i) xs.emplace_back(std::to_string(d(rng)));
    const auto flags = oracle::sieve(10100000);
    const auto recs = gap_survey(xs, mpq_class(21, 40));
    std::size_t mismatches = 0, empty = 0;
    std::uint64_t least = ~0ULL;
    for (const auto& r : recs) {
      const std::uint64_t x = r.x.get_ui(), hi = x + r.interval_width.get_ui();
      std::uint64_t n = 0;
      for (std::uint64_t i = x; i <= hi; ++i) n += flags[i] ? 1 : 0;
      if (n != r.prime_count) ++mismatches;
      if (r.prime_count == 0) ++empty;
      least = std::min<std::uint64_t>(least, r.prime_count);
    }
    // Exceptional tiles by an independent floating comparison.
    const auto s = exceptional_survey(1000000, mpq_class(1, 2), mpq_class(1, 2));
    std::uint64_t expect = 0, tiles = 0;
    for (std::uint64_t n = 1000000; n <= 2000000;) {
      std::uint64_t len = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
      while ((len + 1) * (len + 1) <= n) ++len;
      while (len * len > n) --len;
      if (n + len > 2000000) break;
      ++tiles;
      std::uint64_t cnt = 0;
      for (std::uint64_t i = n; i <= n + len; ++i) cnt += flags[i] ? 1 : 0;
      if (cnt * std::log(static_cast<long double>(n)) <= 0.5L * std::sqrt(static_cast<long double>(n))) ++expect;
      n += len + 1;
    }
    const bool ok = mismatches == 0 && empty == 0 && s.exceptional_count == expect && s.intervals == tiles;
    return Outcome{ok, "200 windows, " + std::to_string(mismatches) + " count mismatches, min count " +
                           std::to_string(least) + "; exceptional_count=" + std::to_string(s.exceptional_count) +
                           " over " + std::to_string(s.intervals) + " tiles (oracle " + std::to_string(expect) + ")"};
  });

  criterion(12, "Mahler table", [] {
    const auto rows = mahler_table(3, 2, 60, mpq_class(1, 10));
    std::size_t bad = 0, trivial = 0, mahler_fail = 0;
    for (const auto& r : rows) {
      if (r.distance != oracle::mahler_distance(3, 2, r.n)) ++bad;
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 2, r.n);
      if (!r.trivial_bound_holds || r.distance < mpq_class(mpz_class(1), den)) ++trivial;
      if (!r.mahler_holds) ++mahler_fail;
    }
    return Outcome{rows.size() == 60 && bad == 0 && trivial == 0,
                   "n=1..60 exact match, den^-n bound at every row; exp(-n/10) exceeded at " +
                       std::to_string(mahler_fail) + " rows (allowed below n_0)"};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
