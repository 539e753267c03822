#pragma once

// Residue classes of chain primes. For cubic chains a change of class mod 3
// between neighbours rules out a degree-3 Pisot structure at that step.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "prc/chain.hpp"

namespace prc {

struct ResidueReport {
  unsigned long modulus = 3;
  std::vector<unsigned long> residues;     // r_k = p_k mod modulus, k = 1..K
  std::vector<std::size_t> witness_pairs;  // k with r_k != r_{k+1}
  /// Whether witness pairs carry meaning (modulus 3 on an all-cubic chain).
  bool witness_applicable = false;
  /// p_k^3 == p_k (mod 3) held at every entry.
  bool fermat_ok = true;
};

ResidueReport residue_report(const PrimeChain& chain, unsigned long modulus = 3);

/// CSV with header k,p_k,residue,witness.
std::string residue_csv(const PrimeChain& chain, const ResidueReport& report);

}  // namespace prc
