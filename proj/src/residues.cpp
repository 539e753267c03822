#include "prc/residues.hpp"

#include <algorithm>
#include <sstream>

#include "prc/errors.hpp"

namespace prc {

ResidueReport residue_report(const PrimeChain& chain, unsigned long modulus) {
  if (modulus < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 2");
  ResidueReport report;
  report.modulus = modulus;
  for (const auto& p : chain.primes) {
    report.residues.push_back(mpz_fdiv_ui(p.get_mpz_t(), modulus));
    const mpz_class cube = p * p * p;
    if (mpz_fdiv_ui(cube.get_mpz_t(), 3) != mpz_fdiv_ui(p.get_mpz_t(), 3)) report.fermat_ok = false;
  }
  // The first exponent only fixes p_1, so c(1) does not matter here.
  bool cubic = true;
  for (std::size_t k = 2; k <= chain.length(); ++k) cubic = cubic && chain.exps.c(k) == 3;
  report.witness_applicable = modulus == 3 && cubic;
  for (std::size_t k = 1; k < chain.length(); ++k) {
    if (report.residues[k - 1] != report.residues[k]) report.witness_pairs.push_back(k);
  }
  return report;
}

std::string residue_csv(const PrimeChain& chain, const ResidueReport& report) {
  std::ostringstream out;
  out << "k,p_k,residue,witness\n";
  for (std::size_t k = 1; k <= chain.length(); ++k) {
    const bool w = report.witness_applicable &&
                   std::find(report.witness_pairs.begin(), report.witness_pairs.end(), k) != report.witness_pairs.end();
    out << k << ',' << chain.p(k).get_str() << ',' << report.residues[k - 1] << ',' << (w ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace prc
