#pragma once

// Chain files: JSON with exact decimal strings for every prime.
//
// {"exponents": {"kind": "constant", "c": 3},
//  "primes": ["2", "11", ...],
//  "certainty": "proven",
//  "generator": {"seed": 1, "rounds": 5, "policy": "..."}}

#include <filesystem>
#include <string>

#include "prc/chain.hpp"

namespace prc {

std::string chain_to_json(const PrimeChain& chain);

/// Throws InvalidArgument on malformed input.
PrimeChain chain_from_json(const std::string& text);

void write_chain_file(const std::filesystem::path& path, const PrimeChain& chain);
PrimeChain read_chain_file(const std::filesystem::path& path);

}  // namespace prc
