#include "prc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "prc/chain.hpp"
#include "prc/chain_io.hpp"
#include "prc/errors.hpp"
#include "prc/evaluator.hpp"
#include "prc/gaps.hpp"
#include "prc/numeric.hpp"
#include "prc/pisot.hpp"
#include "prc/residues.hpp"

namespace prc {

namespace {

constexpr int kDigits = 20;  // significant digits for interval endpoints in CSV

struct Common {
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::uint64_t seed = 1;
  unsigned rounds = 5;
  long precision_cap = 0;  // 0: environment or built-in default
  std::string out;

  PrimalityPolicy policy() const { return PrimalityPolicy{rounds, seed, threads}; }

  PrecisionPolicy precision() const {
    PrecisionPolicy p;
    if (const char* env = std::getenv("PRC_LAB_PRECISION_CAP"); env && *env) {
      p.cap_bits = static_cast<mpfr_prec_t>(to_ulong(parse_integer(env), "PRC_LAB_PRECISION_CAP"));
    }
    if (precision_cap > 0) p.cap_bits = precision_cap;
    if (p.cap_bits < p.start_bits) throw Error(ErrorKind::InvalidArgument, "precision cap below 64 bits");
    return p;
  }
};

struct ChainArgs {
  std::optional<unsigned long> c;
  std::string exponents;
  std::string pattern;
  std::optional<unsigned long> first;
  std::size_t depth = 0;
  std::string start = "2";
  std::string chain_path;
};

std::vector<unsigned long> parse_list(const std::string& text) {
  std::vector<unsigned long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_ulong(parse_integer(item), "list entry"));
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty list");
  return out;
}

std::vector<mpz_class> parse_int_list(const std::string& text) {
  std::vector<mpz_class> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(item));
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty list");
  return out;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads, "worker threads");
  sub->add_option("--seed", c.seed, "seed for random primality bases");
  sub->add_option("--rounds", c.rounds, "extra random Miller-Rabin rounds above 2^64");
  sub->add_option("--precision-cap", c.precision_cap, "precision cap in bits");
  sub->add_option("--out", c.out, "output file (default stdout)");
}

void add_chain(CLI::App* sub, ChainArgs& a) {
  sub->add_option("--c", a.c, "constant exponent");
  sub->add_option("--exponents", a.exponents, "explicit exponent list c(1),c(2),...");
  sub->add_option("--pattern", a.pattern, "periodic exponent pattern");
  sub->add_option("--first", a.first, "c(1) for constant or periodic sequences");
  sub->add_option("--depth", a.depth, "chain length");
  sub->add_option("--start", a.start, "first prime (default 2)");
  sub->add_option("--chain", a.chain_path, "read the chain from a JSON file");
}

ExponentSeq exponents_of(const ChainArgs& a) {
  const int given = (a.c ? 1 : 0) + (a.exponents.empty() ? 0 : 1) + (a.pattern.empty() ? 0 : 1);
  if (given != 1) throw Error(ErrorKind::InvalidArgument, "give exactly one of --c, --exponents, --pattern");
  if (a.c) return ExponentSeq::constant(*a.c, a.first);
  if (!a.exponents.empty()) return ExponentSeq::explicit_list(parse_list(a.exponents));
  return ExponentSeq::periodic(parse_list(a.pattern), a.first);
}

PrimeChain resolve_chain(const ChainArgs& a, const Common& common) {
  if (!a.chain_path.empty()) return read_chain_file(a.chain_path);
  if (a.depth < 1) throw Error(ErrorKind::InvalidArgument, "--depth >= 1 is required without --chain");
  BuildOptions options;
  options.policy = common.policy();
  options.start = parse_integer(a.start);
  return build_min_chain(exponents_of(a), a.depth, options);
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + c.out);
  f << text;
}

std::string lo_str(const RealInterval& x) { return x.lo().to_string(kDigits, MPFR_RNDD); }
std::string hi_str(const RealInterval& x) { return x.hi().to_string(kDigits, MPFR_RNDU); }

MonicIntPoly parse_poly(const std::string& text) {
  const auto v = parse_int_list(text);
  if (v.size() == 2) return MonicIntPoly::quadratic(v[0], v[1]);
  if (v.size() == 3) return MonicIntPoly::cubic(v[0], v[1], v[2]);
  throw Error(ErrorKind::InvalidArgument, "--poly takes A,B (x^2 - Ax + B) or A,B,C (x^3 - Ax^2 + Bx - C)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"prime-representing constant laboratory", "prc_lab"};
  app.require_subcommand(1);

  Common common;
  ChainArgs chain_args;
  std::map<std::string, std::function<int()>> handlers;

  // build-chain
  {
    auto* sub = app.add_subcommand("build-chain", "build the minimal admissible prime chain");
    add_common(sub, common);
    add_chain(sub, chain_args);
    handlers["build-chain"] = [&] {
      emit(common, chain_to_json(resolve_chain(chain_args, common)), out);
      return 0;
    };
  }

  // verify
  std::string theta_text = "21/40";
  {
    auto* sub = app.add_subcommand("verify", "check the window inequalities of a chain");
    add_common(sub, common);
    add_chain(sub, chain_args);
    sub->add_option("--theta", theta_text, "gap exponent p/q");
    handlers["verify"] = [&] {
      const PrimeChain chain = resolve_chain(chain_args, common);
      const auto report = verify_chain(chain, parse_rational(theta_text), common.policy());
      std::ostringstream csv;
      csv << "k,key1_ok,key2_ok,window_lo,window_hi,key2_limit,chosen\n";
      for (const auto& s : report.steps) {
        csv << s.k << ',' << s.key1_ok << ',' << s.key2_ok << ',' << s.window.lo.get_str() << ','
            << s.window.hi.get_str() << ',' << s.key2_limit.get_str() << ',' << s.chosen.get_str() << '\n';
      }
      emit(common, csv.str(), out);
      err << "key1_failures=" << report.key1_failures << " key2_failures=" << report.key2_failures
          << " all_prime=" << (report.all_prime ? "true" : "false") << '\n';
      return report.key1_all() && report.all_prime ? 0 : 1;
    };
  }

  // digits
  {
    auto* sub = app.add_subcommand("digits", "certified decimal digits of the chain's constant");
    add_common(sub, common);
    add_chain(sub, chain_args);
    handlers["digits"] = [&] {
      const PrimeChain chain = resolve_chain(chain_args, common);
      const CertifiedDigits d = certified_digits(chain, common.precision());
      const nlohmann::json sidecar = {{"digits", d.digits},
                                      {"depth", d.depth},
                                      {"precision_bits", d.precision_bits},
                                      {"conditional", d.conditional}};
      out << d.digits << '\n';
      if (common.out.empty()) {
        out << sidecar.dump() << '\n';
      } else {
        emit(common, sidecar.dump(2) + "\n", out);
      }
      return 0;
    };
  }

  // nearness
  std::string gamma_text;
  {
    auto* sub = app.add_subcommand("nearness", "distance of xi^C_k from p_k");
    add_common(sub, common);
    add_chain(sub, chain_args);
    sub->add_option("--theta", theta_text, "gap exponent p/q");
    sub->add_option("--gamma", gamma_text, "decay constant p/q (default: closed form or fitted)");
    handlers["nearness"] = [&] {
      const PrimeChain chain = resolve_chain(chain_args, common);
      NearnessOptions options;
      options.theta = parse_rational(theta_text);
      if (!gamma_text.empty()) options.gamma = parse_rational(gamma_text);
      options.precision = common.precision();
      std::ostringstream csv;
      csv << "k,C_k,dist_lo,dist_hi,bound_simple,bound_gamma\n";
      const auto table = nearness_table(chain, options);
      for (const auto& r : table) {
        csv << r.k << ',' << r.C_k.get_str() << ',' << lo_str(r.distance) << ',' << hi_str(r.distance) << ','
            << hi_str(r.bound_simple) << ',' << hi_str(r.bound_gamma) << '\n';
      }
      emit(common, csv.str(), out);
      if (!table.empty()) {
        err << "gamma=" << lo_str(table.front().gamma) << (table.front().gamma_fitted ? " (fitted)" : "") << '\n';
      }
      return 0;
    };
  }

  // mahler
  std::string alpha_text = "3/2", eps_text = "1/10";
  unsigned long n_max = 60;
  {
    auto* sub = app.add_subcommand("mahler", "nearest-integer distances of (p/q)^n");
    add_common(sub, common);
    sub->add_option("--alpha", alpha_text, "rational p/q > 1");
    sub->add_option("--n-max", n_max, "largest exponent");
    sub->add_option("--eps", eps_text, "exponent of the comparison bound exp(-eps n)");
    handlers["mahler"] = [&] {
      const mpq_class alpha = parse_rational(alpha_text);
      const auto rows =
          mahler_table(alpha.get_num(), alpha.get_den(), n_max, parse_rational(eps_text), common.precision());
      std::ostringstream csv;
      csv << "n,distance,bound_lo,bound_hi,mahler_holds,trivial_bound_holds\n";
      for (const auto& r : rows) {
        csv << r.n << ',' << format_rational(r.distance) << ',' << lo_str(r.bound) << ',' << hi_str(r.bound) << ','
            << r.mahler_holds << ',' << r.trivial_bound_holds << '\n';
      }
      emit(common, csv.str(), out);
      return 0;
    };
  }

  // residues
  unsigned long modulus = 3;
  {
    auto* sub = app.add_subcommand("residues", "residue classes of chain primes");
    add_common(sub, common);
    add_chain(sub, chain_args);
    sub->add_option("--modulus", modulus, "modulus (default 3)");
    handlers["residues"] = [&] {
      const PrimeChain chain = resolve_chain(chain_args, common);
      const ResidueReport report = residue_report(chain, modulus);
      emit(common, residue_csv(chain, report), out);
      err << "witnesses=" << (report.witness_applicable ? report.witness_pairs.size() : 0)
          << " constant=" << (report.witness_pairs.empty() ? "true" : "false")
          << " fermat_ok=" << (report.fermat_ok ? "true" : "false") << '\n';
      return 0;
    };
  }

  // degree-bound
  unsigned long b = 3;
  {
    auto* sub = app.add_subcommand("degree-bound", "admissible Pisot degrees for b-steps");
    add_common(sub, common);
    sub->add_option("--b", b, "exponent b >= 3")->required();
    sub->add_option("--theta", theta_text, "gap exponent p/q");
    handlers["degree-bound"] = [&] {
      const DegreeBound d = degree_bound(b, parse_rational(theta_text));
      std::ostringstream line;
      line << "theta_b=" << format_rational(d.theta_b) << " bound=" << format_rational(d.bound) << " degrees=";
      for (std::size_t i = 0; i < d.allowed_degrees.size(); ++i) line << (i ? "," : "") << d.allowed_degrees[i];
      line << '\n';
      emit(common, line.str(), out);
      return 0;
    };
  }

  // pisot-check
  std::string poly_text;
  {
    auto* sub = app.add_subcommand("pisot-check", "decide whether a quadratic or cubic root is Pisot");
    add_common(sub, common);
    sub->add_option("--poly", poly_text, "A,B (x^2 - Ax + B) or A,B,C (x^3 - Ax^2 + Bx - C)")->required();
    handlers["pisot-check"] = [&] {
      const MonicIntPoly poly = parse_poly(poly_text);
      PisotOptions options;
      options.precision = common.precision();
      const PisotVerdict v = is_pisot(poly, options);
      std::ostringstream text;
      text << "poly=" << poly.to_string() << " pisot=" << (v.pisot ? "true" : "false") << '\n';
      text << "re_lo,re_hi,im_lo,im_hi,modulus_lo,modulus_hi\n";
      for (const auto& c : v.conjugates.roots) {
        text << lo_str(c.value.re) << ',' << hi_str(c.value.re) << ',' << lo_str(c.value.im) << ','
             << hi_str(c.value.im) << ',' << lo_str(c.modulus) << ',' << hi_str(c.modulus) << '\n';
      }
      emit(common, text.str(), out);
      return 0;
    };
  }

  // pisot-scan
  std::size_t m = 1;
  std::string b_limit_text;
  unsigned slack = 0;
  bool quadratic = false;
  {
    auto* sub = app.add_subcommand("pisot-scan", "search cubic Pisot candidates matching the chain traces");
    add_common(sub, common);
    add_chain(sub, chain_args);
    sub->add_option("--m", m, "starting index");
    sub->add_option("--b-limit", b_limit_text, "scan B in [-L, L] (default 2 p_m + 3)");
    sub->add_option("--slack", slack, "skip this many leading trace comparisons");
    sub->add_flag("--quadratic", quadratic, "also report the quadratic divisibility exclusion");
    handlers["pisot-scan"] = [&] {
      const PrimeChain chain = resolve_chain(chain_args, common);
      ScanOptions options;
      if (!b_limit_text.empty()) options.b_limit = parse_integer(b_limit_text);
      options.slack = slack;
      options.threads = common.threads;
      options.pisot.precision = common.precision();
      if (m > 3) {
        err << "warning: about " << mpz_class(4 * chain.p(m) + 7).get_str()
            << " candidates per admissible A; scans beyond m = 3 are slow\n";
      }
      const ScanResult r = cubic_scan(chain, m, options);
      nlohmann::json survivors = nlohmann::json::array();
      for (const auto& s : r.survivors) {
        survivors.push_back({{"A", s.poly.A.get_str()},
                             {"B", s.poly.B.get_str()},
                             {"C", s.poly.C.get_str()},
                             {"moduli", s.moduli}});
      }
      std::vector<std::string> a_values;
      for (const auto& a : r.a_values) a_values.push_back(a.get_str());
      const nlohmann::json doc = {{"m", m},
                                  {"b_limit", r.b_limit.get_str()},
                                  {"slack", slack},
                                  {"a_values", a_values},
                                  {"examined", r.examined},
                                  {"irreducible", r.irreducible},
                                  {"trace_matched", r.trace_matched},
                                  {"survivors", survivors}};
      emit(common, doc.dump(2) + "\n", out);
      if (quadratic) {
        const ExclusionReport q = quadratic_exclusion(chain, m, common.policy());
        for (const auto& s : q.steps) {
          err << "k=" << s.k << " divisible=" << (s.divisible ? "true" : "false")
              << " residue=" << s.residue.get_str() << '\n';
        }
        err << "divisibility_hits=" << q.divisibility_hits << '\n';
      }
      return 0;
    };
  }

  // tail-bound
  unsigned long n_lo = 1, n_hi = 50;
  {
    auto* sub = app.add_subcommand("tail-bound", "least lambda with |s(n) - beta^n| >= |beta_2|^n n^-lambda");
    add_common(sub, common);
    sub->add_option("--poly", poly_text, "A,B or A,B,C")->required();
    sub->add_option("--n-lo", n_lo, "first n");
    sub->add_option("--n-hi", n_hi, "last n");
    handlers["tail-bound"] = [&] {
      PisotOptions options;
      options.precision = common.precision();
      const TailReport r = tail_bound_check(parse_poly(poly_text), n_lo, n_hi, options);
      std::ostringstream csv;
      csv << "n,tail_lo,tail_hi,lambda_hi,vanished\n";
      for (const auto& rec : r.records) {
        csv << rec.n << ',' << lo_str(rec.tail) << ',' << hi_str(rec.tail) << ','
            << (rec.lambda ? hi_str(*rec.lambda) : std::string()) << ',' << rec.vanished << '\n';
      }
      emit(common, csv.str(), out);
      err << "lambda=" << r.lambda << " at n=" << r.lambda_at << " flagged=" << r.flagged.size() << '\n';
      return 0;
    };
  }

  // gap-survey
  std::string x_list;
  std::size_t samples = 0;
  std::uint64_t x_lo = 1000000, x_hi = 10000000;
  {
    auto* sub = app.add_subcommand("gap-survey", "prime counts in [x, x + x^theta]");
    add_common(sub, common);
    sub->add_option("--x", x_list, "comma-separated x values");
    sub->add_option("--samples", samples, "draw this many seeded x from [x-lo, x-hi]");
    sub->add_option("--x-lo", x_lo, "sampling range start");
    sub->add_option("--x-hi", x_hi, "sampling range end");
    sub->add_option("--theta", theta_text, "interval exponent p/q");
    handlers["gap-survey"] = [&] {
      std::vector<mpz_class> xs;
      if (!x_list.empty()) xs = parse_int_list(x_list);
      if (samples > 0) {
        if (x_lo > x_hi) throw Error(ErrorKind::RangeInverted, "--x-lo exceeds --x-hi");
        std::mt19937_64 rng(common.seed);
        std::uniform_int_distribution<std::uint64_t> dist(x_lo, x_hi);
        for (std::size_t i = 0; i < samples; ++i) xs.emplace_back(std::to_string(dist(rng)));
      }
      if (xs.empty()) throw Error(ErrorKind::InvalidArgument, "give --x or --samples");
      GapOptions options;
      options.threads = common.threads;
      options.policy = common.policy();
      const auto records = gap_survey(xs, parse_rational(theta_text), options);
      std::ostringstream csv;
      csv << "x,theta,width,prime_count,density_lo,density_hi,max_gap\n";
      for (const auto& r : records) {
        csv << r.x.get_str() << ',' << format_rational(r.theta) << ',' << r.interval_width.get_str() << ','
            << r.prime_count << ',' << lo_str(r.density_ratio) << ',' << hi_str(r.density_ratio) << ','
            << r.max_gap << '\n';
      }
      emit(common, csv.str(), out);
      return 0;
    };
  }

  // exceptional
  std::uint64_t x = 1000000;
  std::string gamma_ex = "1/2", d_text = "1/2", D_text = "1";
  {
    auto* sub = app.add_subcommand("exceptional", "count sparse intervals [n, n + n^gamma] in [x, 2x]");
    add_common(sub, common);
    sub->add_option("--x", x, "range start");
    sub->add_option("--gamma", gamma_ex, "interval exponent p/q in [1/2, 1]");
    sub->add_option("--d", d_text, "density threshold p/q");
    sub->add_option("--D", D_text, "constant in D x^(2/3 - gamma)");
    handlers["exceptional"] = [&] {
      GapOptions options;
      options.threads = common.threads;
      const auto s = exceptional_survey(x, parse_rational(gamma_ex), parse_rational(d_text),
                                        parse_rational(D_text), options);
      std::ostringstream text;
      text << "x=" << s.x << " gamma=" << format_rational(s.gamma) << " d=" << format_rational(s.d)
           << " intervals=" << s.intervals << " exceptional_count=" << s.exceptional_count
           << " matomaki_bound=" << s.matomaki_bound.to_string(12) << '\n';
      emit(common, text.str(), out);
      return 0;
    };
  }

  std::vector<const char*> argv{"prc_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return handlers.at(name)();
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << '\n';
    return is_usage_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace prc
