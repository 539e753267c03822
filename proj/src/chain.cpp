#include "prc/chain.hpp"

#include <algorithm>

#include "prc/errors.hpp"
#include "prc/numeric.hpp"

namespace prc {

ExponentSeq::ExponentSeq(Kind kind, std::vector<unsigned long> values, std::optional<unsigned long> first)
    : kind_(kind), values_(std::move(values)), first_(first) {
  validate();
  bound_ = *std::max_element(values_.begin(), values_.end());
  if (first_) bound_ = std::max(bound_, *first_);
}

ExponentSeq ExponentSeq::constant(unsigned long c, std::optional<unsigned long> first) {
  return ExponentSeq(Kind::Constant, {c}, first);
}

ExponentSeq ExponentSeq::explicit_list(std::vector<unsigned long> values) {
  return ExponentSeq(Kind::Explicit, std::move(values), std::nullopt);
}

ExponentSeq ExponentSeq::periodic(std::vector<unsigned long> pattern, std::optional<unsigned long> first) {
  return ExponentSeq(Kind::Periodic, std::move(pattern), first);
}

void ExponentSeq::validate() const {
  if (values_.empty()) throw Error(ErrorKind::InvalidArgument, "exponent sequence is empty");
  if (first_ && *first_ < 1) throw Error(ErrorKind::InvalidArgument, "c(1) must be >= 1");
  // Explicit lists carry c(1) in position 0; it only needs to be >= 1.
  const std::size_t from = (kind_ == Kind::Explicit) ? 1 : 0;
  if (kind_ == Kind::Explicit && values_[0] < 1) throw Error(ErrorKind::InvalidArgument, "c(1) must be >= 1");
  for (std::size_t i = from; i < values_.size(); ++i) {
    if (values_[i] < 2) throw Error(ErrorKind::InvalidArgument, "c(k) must be >= 2 for k >= 2");
  }
}

unsigned long ExponentSeq::c(std::size_t k) const {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "exponent index starts at 1");
  switch (kind_) {
    case Kind::Constant:
      return (k == 1 && first_) ? *first_ : values_[0];
    case Kind::Explicit:
      if (k > values_.size()) {
        throw Error(ErrorKind::DepthInsufficient,
                    "explicit exponent list has no entry c(" + std::to_string(k) + ")");
      }
      return values_[k - 1];
    case Kind::Periodic:
      if (k == 1 && first_) return *first_;
      return values_[(k - 1) % values_.size()];
  }
  return 0;
}

mpz_class ExponentSeq::product(std::size_t k) const {
  mpz_class C = 1;
  for (std::size_t i = 1; i <= k; ++i) C *= c(i);
  return C;
}

std::optional<std::size_t> ExponentSeq::max_index() const {
  if (kind_ == Kind::Explicit) return values_.size();
  return std::nullopt;
}

bool ExponentSeq::is_constant(unsigned long value) const {
  switch (kind_) {
    case Kind::Constant:
      return values_[0] == value && (!first_ || *first_ == value);
    case Kind::Explicit:
    case Kind::Periodic:
      return std::all_of(values_.begin(), values_.end(), [&](unsigned long v) { return v == value; }) &&
             (!first_ || *first_ == value);
  }
  return false;
}

const char* to_string(Certainty c) { return c == Certainty::Proven ? "proven" : "probable"; }

Window admissible_window(const mpz_class& p, unsigned long c) {
  if (c < 2) throw Error(ErrorKind::InvalidArgument, "admissible_window requires c >= 2");
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "admissible_window requires p >= 2");
  return Window{ipow(p, c), ipow(p + 1, c) - 2};
}

namespace {

Certainty combine(Certainty a, PrimalityStatus s) {
  if (a == Certainty::Probable || s == PrimalityStatus::ProbablePrime) return Certainty::Probable;
  return Certainty::Proven;
}

struct Found {
  mpz_class prime;
  PrimalityStatus status;
};

std::optional<Found> search(mpz_class lo, const mpz_class& hi, const PrimalityPolicy& policy,
                            const PrimeFilter& filter) {
  while (lo <= hi) {
    auto r = smallest_prime_in(lo, hi, policy);
    if (!r) return std::nullopt;
    if (!filter || filter(r->prime)) return Found{r->prime, r->status};
    lo = r->prime + 1;
  }
  return std::nullopt;
}

}  // namespace

PrimeChain extend_min(const PrimeChain& chain, const PrimalityPolicy& policy) {
  if (chain.primes.empty()) throw Error(ErrorKind::InvalidArgument, "extend_min requires a nonempty chain");
  const std::size_t K = chain.length();
  const Window w = admissible_window(chain.primes.back(), chain.exps.c(K + 1));
  const auto r = smallest_prime_in(w.lo, w.hi, policy);
  if (!r) {
    throw Error(ErrorKind::DeadWindow, "no prime in [" + w.lo.get_str() + ", " + w.hi.get_str() + "]");
  }
  PrimeChain out = chain;
  out.primes.push_back(r->prime);
  out.certainty = combine(chain.certainty, r->status);
  out.policy = policy;
  return out;
}

PrimeChain build_min_chain(const ExponentSeq& exps, std::size_t depth, const BuildOptions& options) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be >= 1");
  if (const auto mx = exps.max_index(); mx && *mx < depth) {
    throw Error(ErrorKind::DepthInsufficient, "exponent list shorter than requested depth");
  }
  if (options.start < 2) throw Error(ErrorKind::InvalidArgument, "start must be >= 2");

  const mpz_class first_hi = options.first_window_hi.value_or(options.start);
  if (first_hi < options.start) throw Error(ErrorKind::RangeInverted, "first window inverted");

  std::vector<Found> stack;
  std::vector<Window> windows;  // windows[i] is the window level i was drawn from
  windows.push_back(Window{options.start, first_hi});
  mpz_class lower = options.start;

  while (stack.size() < depth) {
    const std::size_t level = stack.size();
    const Window& w = windows[level];
    if (auto f = search(lower, w.hi, options.policy, options.filter)) {
      stack.push_back(*f);
      if (stack.size() < depth) {
        windows.push_back(admissible_window(f->prime, exps.c(stack.size() + 1)));
        lower = windows.back().lo;
      }
      continue;
    }
    // Dead window at `level`: retry the previous level with its next prime.
    if (level == 0) {
      throw Error(ErrorKind::Exhaustion, "backtracking exhausted the first window [" + windows[0].lo.get_str() +
                                             ", " + windows[0].hi.get_str() + "]");
    }
    windows.pop_back();
    lower = stack.back().prime + 1;
    stack.pop_back();
  }

  PrimeChain chain{exps, {}, Certainty::Proven, options.policy};
  for (const auto& f : stack) {
    chain.primes.push_back(f.prime);
    chain.certainty = combine(chain.certainty, f.status);
  }
  return chain;
}

VerificationReport verify_chain(const PrimeChain& chain, const mpq_class& theta, const PrimalityPolicy& policy) {
  if (chain.length() < 2) throw Error(ErrorKind::InvalidArgument, "verify_chain requires at least two primes");
  if (theta <= 0 || theta > 1) throw Error(ErrorKind::InvalidArgument, "theta must lie in (0, 1]");
  VerificationReport report;
  for (const auto& p : chain.primes) {
    if (!is_prime(p, policy).accepted()) report.all_prime = false;
  }
  const unsigned long tnum = to_ulong(theta.get_num(), "theta numerator");
  const unsigned long tden = to_ulong(theta.get_den(), "theta denominator");
  for (std::size_t k = 1; k < chain.length(); ++k) {
    const mpz_class& p = chain.p(k);
    const mpz_class& next = chain.p(k + 1);
    const unsigned long c = chain.exps.c(k + 1);
    StepRecord rec;
    rec.k = k;
    rec.window = admissible_window(p, c);
    rec.chosen = next;
    rec.key1_ok = rec.window.lo <= next && next <= rec.window.hi;
    // ceil(p^(theta c)) = ceil((p^(tnum c))^(1/tden)), exact.
    rec.key2_limit = rec.window.lo + ceil_rational_power(p, tnum * c, tden);
    rec.key2_ok = rec.window.lo <= next && next <= rec.key2_limit;
    if (!rec.key1_ok) ++report.key1_failures;
    if (!rec.key2_ok) ++report.key2_failures;
    report.steps.push_back(std::move(rec));
  }
  return report;
}

}  // namespace prc
