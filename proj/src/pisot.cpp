#include "prc/pisot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "prc/errors.hpp"
#include "prc/numeric.hpp"

namespace prc {

// ---------------------------------------------------------------------------
// MonicIntPoly

MonicIntPoly MonicIntPoly::quadratic(mpz_class a, mpz_class b) { return MonicIntPoly{2, std::move(a), std::move(b), 0}; }

MonicIntPoly MonicIntPoly::cubic(mpz_class a, mpz_class b, mpz_class c) {
  return MonicIntPoly{3, std::move(a), std::move(b), std::move(c)};
}

std::vector<mpz_class> MonicIntPoly::coefficients() const {
  if (degree == 2) return {B, -A, 1};
  if (degree == 3) return {-C, B, -A, 1};
  throw Error(ErrorKind::InvalidArgument, "only degrees 2 and 3 are supported");
}

mpz_class MonicIntPoly::discriminant() const {
  if (degree == 2) return A * A - 4 * B;
  // x^3 + a x^2 + b x + c with a = -A, b = B, c = -C.
  const mpz_class a = -A, b = B, c = -C;
  return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

std::string MonicIntPoly::to_string() const {
  const auto term = [](const mpz_class& coef, const char* mono, bool negate) {
    mpz_class v = negate ? mpz_class(-coef) : coef;
    if (v == 0) return std::string();
    std::string s = v < 0 ? " - " : " + ";
    mpz_class mag = abs(v);
    if (mag != 1 || mono[0] == '\0') s += mag.get_str();
    return s + mono;
  };
  if (degree == 2) return "x^2" + term(A, "x", true) + term(B, "", false);
  return "x^3" + term(A, "x^2", true) + term(B, "x", false) + term(C, "", true);
}

// ---------------------------------------------------------------------------
// Exact real-root isolation over Q

namespace {

using QPoly = std::vector<mpq_class>;  // low degree first

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_qpoly(const std::vector<mpz_class>& coeffs) {
  QPoly p;
  for (const auto& c : coeffs) p.emplace_back(c);
  return p;
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const QPoly& p, const mpq_class& x) { return sgn(eval(p, x)); }

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

QPoly remainder(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain{p, derivative(p)};
  while (chain.back().size() > 1) {
    QPoly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int variations(const std::vector<QPoly>& chain, const mpq_class& x) {
  int count = 0, last = 0;
  for (const auto& q : chain) {
    const int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

struct Isolation {
  std::vector<std::pair<mpq_class, mpq_class>> intervals;  // open, one simple root each
  std::vector<mpq_class> rational_roots;
};

Isolation isolate(const QPoly& p) {
  mpq_class bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, mpq_class(abs(p[i] / p.back())));
  bound += 1;
  const auto chain = sturm_chain(p);
  Isolation out;
  std::vector<std::pair<mpq_class, mpq_class>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const int count = variations(chain, a) - variations(chain, b);  // roots in (a, b]
    if (count == 0) continue;
    if (count == 1) {
      if (sign_at(p, b) != 0) out.intervals.emplace_back(a, b);
      continue;
    }
    const mpq_class m = (a + b) / 2;
    if (sign_at(p, m) == 0) out.rational_roots.push_back(m);
    work.emplace_back(a, m);
    work.emplace_back(m, b);
  }
  std::sort(out.intervals.begin(), out.intervals.end());
  return out;
}

// Halve (a, b) keeping the sign change; returns false if the midpoint is a root.
bool bisect_once(const QPoly& p, mpq_class& a, mpq_class& b, int sign_a) {
  const mpq_class m = (a + b) / 2;
  const int s = sign_at(p, m);
  if (s == 0) return false;
  if (s == sign_a) {
    a = m;
  } else {
    b = m;
  }
  return true;
}

bool has_integer_root(const MonicIntPoly& poly) {
  const QPoly p = to_qpoly(poly.coefficients());
  const Isolation iso = isolate(p);
  if (!iso.rational_roots.empty()) return true;
  for (auto [a, b] : iso.intervals) {
    const int sa = sign_at(p, a);
    if (sa == 0) return true;
    while (b - a >= mpq_class(1, 2)) {
      if (!bisect_once(p, a, b, sa)) return true;
    }
    // At most one integer lies in an interval this narrow.
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    if (mpq_class(r) <= b && sign_at(p, mpq_class(r)) == 0) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Interval refinement

RealInterval eval_interval(const std::vector<mpz_class>& coeffs, const RealInterval& x) {
  const auto prec = x.precision();
  RealInterval acc = RealInterval::from_integer(coeffs.back(), prec);
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    acc = acc * x + RealInterval::from_integer(coeffs[i], prec);
  }
  return acc;
}

std::vector<mpz_class> derivative_coeffs(const std::vector<mpz_class>& c) {
  std::vector<mpz_class> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<unsigned long>(i));
  return d;
}

std::optional<RealInterval> intersect(const RealInterval& a, const RealInterval& b) {
  BigFloat lo = compare(a.lo(), b.lo()) >= 0 ? a.lo() : b.lo();
  BigFloat hi = compare(a.hi(), b.hi()) <= 0 ? a.hi() : b.hi();
  if (compare(lo, hi) > 0) return std::nullopt;
  return RealInterval(std::move(lo), std::move(hi));
}

// Enclosure of the unique simple root in (a, b) at `prec` bits: exact bisection
// until the derivative is bounded away from zero, then interval Newton.
RealInterval refine_root(const std::vector<mpz_class>& coeffs, mpq_class a, mpq_class b, mpfr_prec_t prec) {
  const QPoly p = to_qpoly(coeffs);
  const auto dcoeffs = derivative_coeffs(coeffs);
  const int sa = sign_at(p, a);
  for (int guard = 0;; ++guard) {
    const RealInterval X = RealInterval::hull(a, b, prec);
    if (!eval_interval(dcoeffs, X).contains_zero() || guard > static_cast<int>(prec)) break;
    if (!bisect_once(p, a, b, sa)) {
      const mpq_class m = (a + b) / 2;
      return RealInterval::hull(m, m, prec);
    }
  }
  RealInterval X = RealInterval::hull(a, b, prec);
  for (int iter = 0; iter < 4 * static_cast<int>(prec); ++iter) {
    const BigFloat m = X.mid();
    const RealInterval M(m, m);
    const RealInterval dX = eval_interval(dcoeffs, X);
    if (dX.contains_zero()) break;
    const RealInterval N = RealInterval(M) - eval_interval(coeffs, M) / dX;
    auto next = intersect(X, N);
    if (!next) throw std::logic_error("interval Newton lost the root");
    if (compare(next->width(), X.width()) >= 0) break;
    X = std::move(*next);
  }
  return X;
}

RealInterval point(long v, mpfr_prec_t prec) { return RealInterval::from_integer(v, prec); }

Conjugate real_conjugate(RealInterval r) {
  const auto prec = r.precision();
  RealInterval m = abs(r);
  return Conjugate{ComplexInterval(std::move(r), point(0, prec)), std::move(m), true};
}

}  // namespace

bool MonicIntPoly::irreducible() const {
  if (degree != 2 && degree != 3) throw Error(ErrorKind::InvalidArgument, "only degrees 2 and 3 are supported");
  if (discriminant() == 0) return false;  // repeated root, necessarily rational at degree <= 3
  return !has_integer_root(*this);
}

// ---------------------------------------------------------------------------
// Conjugates and the Pisot test

ConjugateSet conjugates(const MonicIntPoly& poly, mpfr_prec_t prec) {
  if (!poly.irreducible()) throw Error(ErrorKind::Reducible, poly.to_string() + " is reducible over Q");
  const auto coeffs = poly.coefficients();
  const Isolation iso = isolate(to_qpoly(coeffs));
  std::vector<RealInterval> reals;
  for (const auto& [a, b] : iso.intervals) reals.push_back(refine_root(coeffs, a, b, prec));

  ConjugateSet set;
  set.precision = prec;
  for (auto& r : reals) set.roots.push_back(real_conjugate(r));

  const bool complex_pair = static_cast<int>(reals.size()) < poly.degree;
  if (complex_pair) {
    RealInterval re(prec), norm(prec);
    if (poly.degree == 2) {
      re = RealInterval::from_rational(mpq_class(poly.A, 2), prec);
      norm = RealInterval::from_integer(poly.B, prec);
    } else {
      // The pair has sum A - r and product C / r.
      const RealInterval& r = reals.at(0);
      re = (RealInterval::from_integer(poly.A, prec) - r) / point(2, prec);
      norm = RealInterval::from_integer(poly.C, prec) / r;
    }
    const RealInterval im = sqrt(norm - pow(re, 2));
    const RealInterval mod = sqrt(norm);
    set.roots.push_back(Conjugate{ComplexInterval(re, im), mod, false});
    set.roots.push_back(Conjugate{ComplexInterval(re, -im), mod, false});
  }

  std::stable_sort(set.roots.begin(), set.roots.end(), [](const Conjugate& x, const Conjugate& y) {
    return compare(x.modulus.mid(), y.modulus.mid()) > 0;
  });
  for (std::size_t i = 0; i + 1 < set.roots.size(); ++i) {
    const auto& x = set.roots[i];
    const auto& y = set.roots[i + 1];
    const bool pair = !x.real && !y.real;
    const bool overlap = !x.modulus.certainly_less(y.modulus) && !y.modulus.certainly_less(x.modulus);
    if (overlap && !pair) set.resolved = false;
  }

  BigFloat margin(prec);
  bool first = true;
  for (const auto& c : set.roots) {
    BigFloat d(prec);
    if (mpfr_cmp_ui(c.modulus.lo().get(), 1) > 0) {
      mpfr_sub_ui(d.get(), c.modulus.lo().get(), 1, MPFR_RNDD);
    } else {
      mpfr_ui_sub(d.get(), 1, c.modulus.hi().get(), MPFR_RNDD);
    }
    if (first || compare(d, margin) < 0) margin = d;
    first = false;
  }
  set.unit_margin = margin;
  return set;
}

PisotVerdict is_pisot(const MonicIntPoly& poly, const PisotOptions& options) {
  if (!poly.irreducible()) throw Error(ErrorKind::Reducible, poly.to_string() + " is reducible over Q");
  mpfr_prec_t prec = std::max<mpfr_prec_t>(options.precision.start_bits, 64);
  for (;;) {
    ConjugateSet cs = conjugates(poly, prec);
    // A Pisot number is real; x^2 - Ax + B with complex roots (e.g. cyclotomic
    // x^2 + x + 1, on the unit circle) is rejected exactly.
    if (std::none_of(cs.roots.begin(), cs.roots.end(), [](const Conjugate& c) { return c.real; })) {
      return PisotVerdict{false, std::move(cs)};
    }
    const bool separated = mpfr_sgn(cs.unit_margin.get()) > 0;
    const bool narrow = std::all_of(cs.roots.begin(), cs.roots.end(),
                                    [&](const Conjugate& c) { return c.modulus.width().to_double() < options.margin; });
    if (separated && narrow) {
      std::size_t outside = 0;
      bool dominant_ok = false;
      for (const auto& c : cs.roots) {
        if (mpfr_cmp_ui(c.modulus.lo().get(), 1) > 0) {
          ++outside;
          dominant_ok = c.real && mpfr_cmp_ui(c.value.re.lo().get(), 1) > 0;
        }
      }
      return PisotVerdict{outside == 1 && dominant_ok, std::move(cs)};
    }
    if (prec >= options.precision.cap_bits) {
      throw Error(ErrorKind::Undecidable, "is_pisot: root of " + poly.to_string() +
                                              " not separated from the unit circle at the precision cap");
    }
    prec = std::min(prec * 2, options.precision.cap_bits);
  }
}

// ---------------------------------------------------------------------------
// Degree bound

DegreeBound degree_bound(unsigned long b, const mpq_class& theta) {
  if (b < 3) throw Error(ErrorKind::InvalidArgument, "degree_bound requires b >= 3");
  DegreeBound out;
  out.theta_b = 1 - theta - mpq_class(1, b);
  out.theta_b.canonicalize();
  if (out.theta_b <= 0) throw Error(ErrorKind::InvalidArgument, "theta_b must be positive");
  out.bound = 1 / (mpq_class(b) * out.theta_b) + 1;
  out.bound.canonicalize();
  for (unsigned l = 2; mpq_class(l) <= out.bound; ++l) out.allowed_degrees.push_back(l);
  return out;
}

// ---------------------------------------------------------------------------
// Power sums

mpz_class power_sum_recurrence(const MonicIntPoly& poly, unsigned long n) {
  TraceSequence seq(poly);
  return seq(n);
}

mpz_class power_sum_matrix(const MonicIntPoly& poly, unsigned long n) {
  using Matrix = std::vector<std::vector<mpz_class>>;
  const std::size_t d = static_cast<std::size_t>(poly.degree);
  const auto mul = [d](const Matrix& x, const Matrix& y) {
    Matrix r(d, std::vector<mpz_class>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        if (x[i][k] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) r[i][j] += x[i][k] * y[k][j];
      }
    return r;
  };
  Matrix companion(d, std::vector<mpz_class>(d, 0));
  if (d == 2) {
    companion = {{poly.A, -poly.B}, {1, 0}};
  } else {
    companion = {{poly.A, -poly.B, poly.C}, {1, 0, 0}, {0, 1, 0}};
  }
  Matrix result(d, std::vector<mpz_class>(d, 0));
  for (std::size_t i = 0; i < d; ++i) result[i][i] = 1;
  while (n > 0) {
    if (n & 1UL) result = mul(result, companion);
    n >>= 1;
    if (n > 0) companion = mul(companion, companion);
  }
  mpz_class trace = 0;
  for (std::size_t i = 0; i < d; ++i) trace += result[i][i];
  return trace;
}

mpz_class power_sum(const MonicIntPoly& poly, unsigned long n) {
  constexpr unsigned long kRecurrenceLimit = 4096;
  return n <= kRecurrenceLimit ? power_sum_recurrence(poly, n) : power_sum_matrix(poly, n);
}

TraceSequence::TraceSequence(MonicIntPoly poly) : poly_(std::move(poly)) {
  if (poly_.degree != 2 && poly_.degree != 3) throw Error(ErrorKind::InvalidArgument, "only degrees 2 and 3");
  values_.emplace_back(poly_.degree);
  values_.push_back(poly_.A);
  // Newton's identity for s(2); the linear recurrence takes over from there.
  values_.push_back(poly_.A * poly_.A - 2 * poly_.B);
}

mpz_class TraceSequence::operator()(unsigned long n) {
  while (values_.size() <= n) {
    const std::size_t i = values_.size();
    if (poly_.degree == 2) {
      values_.push_back(poly_.A * values_[i - 1] - poly_.B * values_[i - 2]);
    } else {
      values_.push_back(poly_.A * values_[i - 1] - poly_.B * values_[i - 2] + poly_.C * values_[i - 3]);
    }
  }
  return values_[n];
}

// ---------------------------------------------------------------------------
// Chain comparisons

namespace {

mpz_class exponent_ratio(const PrimeChain& chain, std::size_t m, std::size_t k) {
  mpz_class e = 1;
  for (std::size_t i = m + 1; i <= k; ++i) e *= chain.exps.c(i);
  return e;
}

}  // namespace

std::vector<TraceMatchRow> trace_match(const MonicIntPoly& poly, const PrimeChain& chain, std::size_t m) {
  if (!poly.irreducible()) throw Error(ErrorKind::Reducible, poly.to_string() + " is reducible over Q");
  if (m < 1 || m > chain.length()) throw Error(ErrorKind::InvalidArgument, "trace_match: m out of range");
  TraceSequence seq(poly);
  std::vector<TraceMatchRow> rows;
  for (std::size_t k = m; k <= chain.length(); ++k) {
    TraceMatchRow row;
    row.k = k;
    row.exponent = exponent_ratio(chain, m, k);
    const unsigned long e = to_ulong(row.exponent, "trace exponent");
    row.trace = e <= 4096 ? seq(e) : power_sum_matrix(poly, e);
    row.prime = chain.p(k);
    row.equal = row.trace == row.prime;
    rows.push_back(std::move(row));
  }
  return rows;
}

ExclusionReport quadratic_exclusion(const PrimeChain& chain, std::size_t m, const PrimalityPolicy& policy) {
  if (m < 1 || m >= chain.length()) throw Error(ErrorKind::InvalidArgument, "quadratic_exclusion: m out of range");
  ExclusionReport report;
  for (std::size_t k = m; k < chain.length(); ++k) {
    if (chain.exps.c(k + 1) != 3) {
      report.skipped.push_back(k);
      continue;
    }
    ExclusionStep step;
    step.k = k;
    step.p_k = chain.p(k);
    step.p_next = chain.p(k + 1);
    step.divisible = mpz_divisible_p(step.p_next.get_mpz_t(), step.p_k.get_mpz_t()) != 0;
    const mpz_class modulus = 3 * step.p_k;
    const mpz_class diff = step.p_next - step.p_k * step.p_k * step.p_k;
    mpz_fdiv_r(step.residue.get_mpz_t(), diff.get_mpz_t(), modulus.get_mpz_t());
    step.next_is_prime = is_prime(step.p_next, policy).accepted();
    if (step.divisible) ++report.divisibility_hits;
    report.steps.push_back(std::move(step));
  }
  return report;
}

ScanResult cubic_scan(const PrimeChain& chain, std::size_t m, const ScanOptions& options) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "cubic_scan: m must be >= 1");
  if (chain.length() < m + 2) {
    throw Error(ErrorKind::DepthInsufficient, "cubic_scan needs chain length >= m + 2");
  }
  for (std::size_t i = m + 1; i <= chain.length(); ++i) {
    if (chain.exps.c(i) != 3) throw Error(ErrorKind::InvalidArgument, "cubic_scan needs c(k) = 3 beyond m");
  }
  const mpz_class& pm = chain.p(m);
  const mpz_class& next = chain.p(m + 1);

  ScanResult result;
  result.b_limit = options.b_limit.value_or(2 * pm + 3);
  if (result.b_limit < 0) throw Error(ErrorKind::InvalidArgument, "cubic_scan: negative B limit");

  // Trace exponents 3^j with the primes they must hit. j = 1 holds by the
  // choice of C; slack drops the first comparisons counted from there.
  std::vector<std::pair<unsigned long, mpz_class>> targets;
  for (std::size_t j = std::max<std::size_t>(2, options.slack + 1); m + j <= chain.length(); ++j) {
    targets.emplace_back(to_ulong(exponent_ratio(chain, m, m + j), "trace exponent"), chain.p(m + j));
  }

  const long limit = static_cast<long>(to_ulong(result.b_limit, "B limit"));
  const unsigned workers = std::max(1U, options.threads);
  std::mutex mu;
  for (mpz_class A = pm - 1; A <= pm + 2; ++A) {
    const mpz_class base = next - A * A * A;
    if (!mpz_divisible_ui_p(base.get_mpz_t(), 3)) continue;
    result.a_values.push_back(A);
    const mpz_class c0 = base / 3;

    std::vector<ScanSurvivor> found;
    std::uint64_t examined = 0, irreducible = 0, matched = 0;
    const auto run = [&](unsigned w) {
      std::vector<ScanSurvivor> local;
      std::uint64_t ex = 0, irr = 0, mt = 0;
      for (long B = -limit + static_cast<long>(w); B <= limit; B += static_cast<long>(workers)) {
        const mpz_class Bz(B);
        MonicIntPoly poly = MonicIntPoly::cubic(A, Bz, c0 + A * Bz);
        ++ex;
        if (!poly.irreducible()) continue;
        ++irr;
        TraceSequence seq(poly);
        const bool traces = std::all_of(targets.begin(), targets.end(),
                                        [&](const auto& t) { return seq(t.first) == t.second; });
        if (!traces) continue;
        ++mt;
        const PisotVerdict v = is_pisot(poly, options.pisot);
        if (!v.pisot) continue;
        ScanSurvivor s{poly, {}};
        for (const auto& c : v.conjugates.roots) s.moduli.push_back(c.modulus.mid().to_double());
        local.push_back(std::move(s));
      }
      std::lock_guard lock(mu);
      for (auto& s : local) found.push_back(std::move(s));
      examined += ex;
      irreducible += irr;
      matched += mt;
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    std::sort(found.begin(), found.end(), [](const ScanSurvivor& x, const ScanSurvivor& y) { return x.poly.B < y.poly.B; });
    for (auto& s : found) result.survivors.push_back(std::move(s));
    result.examined += examined;
    result.irreducible += irreducible;
    result.trace_matched += matched;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Tail bound

TailReport tail_bound_check(const MonicIntPoly& poly, unsigned long n_lo, unsigned long n_hi,
                            const PisotOptions& options) {
  if (n_lo > n_hi) throw Error(ErrorKind::RangeInverted, "tail_bound_check: empty n range");
  const PisotVerdict verdict = is_pisot(poly, options);
  if (!verdict.pisot) throw Error(ErrorKind::InvalidArgument, poly.to_string() + " is not a Pisot polynomial");

  const double log2_b1 = std::log2(verdict.conjugates.roots[0].modulus.mid().to_double());
  const double log2_b2 = std::log2(verdict.conjugates.roots[1].modulus.mid().to_double());

  std::map<mpfr_prec_t, ConjugateSet> cache;
  const auto conj_at = [&](mpfr_prec_t prec) -> const ConjugateSet& {
    auto it = cache.find(prec);
    if (it == cache.end()) it = cache.emplace(prec, conjugates(poly, prec)).first;
    return it->second;
  };

  TailReport report;
  bool have_lambda = false;
  for (unsigned long n = n_lo; n <= n_hi; ++n) {
    TailRecord rec;
    rec.n = n;
    if (n == 0) {
      rec.tail = RealInterval::from_integer(static_cast<long>(poly.degree - 1), 64);
      report.records.push_back(std::move(rec));
      continue;
    }
    const mpz_class s = power_sum(poly, n);
    const double need = static_cast<double>(n) * (log2_b1 - log2_b2) + 96.0;
    mpfr_prec_t prec = 64;
    while (prec < need) prec *= 2;
    prec = std::max(prec, options.precision.start_bits);
    for (;;) {
      const ConjugateSet& cs = conj_at(prec);
      const RealInterval t = RealInterval::from_integer(s, prec) - pow(cs.roots[0].value.re, n);
      rec.tail = abs(t);
      const RealInterval& b2 = cs.roots[1].modulus;
      bool ok = rec.tail.positive();
      if (ok) {
        BigFloat rel = rec.tail.width();
        mpfr_mul_2ui(rel.get(), rel.get(), 20, MPFR_RNDU);
        ok = compare(rel, rec.tail.lo()) < 0;
      }
      if (ok) {
        if (n >= 2) {
          const RealInterval nn = RealInterval::from_integer(static_cast<long>(n), prec);
          rec.lambda = (nn * log(b2) - log(rec.tail)) / log(nn);
          const double l = rec.lambda->hi().to_double();
          if (!have_lambda || l > report.lambda) {
            report.lambda = l;
            report.lambda_at = n;
            have_lambda = true;
          }
        } else if (rec.tail.certainly_less(b2)) {
          report.flagged.push_back(n);  // no lambda can repair n = 1
        }
        break;
      }
      if (prec >= options.precision.cap_bits) {
        rec.vanished = true;
        report.flagged.push_back(n);
        break;
      }
      prec = std::min(prec * 2, options.precision.cap_bits);
    }
    report.records.push_back(std::move(rec));
  }
  if (report.lambda < 0) report.lambda = 0;
  return report;
}

}  // namespace prc
