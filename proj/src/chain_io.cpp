#include "prc/chain_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "prc/errors.hpp"
#include "prc/numeric.hpp"

namespace prc {

using nlohmann::json;

namespace {

json exponents_json(const ExponentSeq& e) {
  json j;
  switch (e.kind()) {
    case ExponentSeq::Kind::Constant:
      j["kind"] = "constant";
      j["c"] = e.values().front();
      break;
    case ExponentSeq::Kind::Explicit:
      j["kind"] = "explicit";
      j["values"] = e.values();
      break;
    case ExponentSeq::Kind::Periodic:
      j["kind"] = "periodic";
      j["values"] = e.values();
      break;
  }
  if (e.first()) j["first"] = *e.first();
  return j;
}

ExponentSeq exponents_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  std::optional<unsigned long> first;
  if (j.contains("first") && !j["first"].is_null()) first = j["first"].get<unsigned long>();
  if (kind == "constant") return ExponentSeq::constant(j.at("c").get<unsigned long>(), first);
  if (kind == "explicit") return ExponentSeq::explicit_list(j.at("values").get<std::vector<unsigned long>>());
  if (kind == "periodic") return ExponentSeq::periodic(j.at("values").get<std::vector<unsigned long>>(), first);
  throw Error(ErrorKind::InvalidArgument, "unknown exponent kind '" + kind + "'");
}

}  // namespace

std::string chain_to_json(const PrimeChain& chain) {
  json j;
  j["exponents"] = exponents_json(chain.exps);
  json primes = json::array();
  for (const auto& p : chain.primes) primes.push_back(p.get_str());
  j["primes"] = std::move(primes);
  j["certainty"] = to_string(chain.certainty);
  j["generator"] = {{"seed", chain.policy.seed},
                    {"rounds", chain.policy.extra_rounds},
                    {"policy", chain.policy.describe()}};
  return j.dump(2) + "\n";
}

PrimeChain chain_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    PrimeChain chain{exponents_from(j.at("exponents")), {}, Certainty::Proven, {}};
    for (const auto& p : j.at("primes")) {
      chain.primes.push_back(parse_integer(p.get<std::string>()));
    }
    const std::string certainty = j.at("certainty").get<std::string>();
    if (certainty == "probable") {
      chain.certainty = Certainty::Probable;
    } else if (certainty != "proven") {
      throw Error(ErrorKind::InvalidArgument, "unknown certainty '" + certainty + "'");
    }
    if (j.contains("generator")) {
      const json& g = j["generator"];
      if (g.contains("seed")) chain.policy.seed = g["seed"].get<std::uint64_t>();
      if (g.contains("rounds")) chain.policy.extra_rounds = g["rounds"].get<unsigned>();
    }
    return chain;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed chain file: ") + e.what());
  }
}

void write_chain_file(const std::filesystem::path& path, const PrimeChain& chain) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << chain_to_json(chain);
}

PrimeChain read_chain_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return chain_from_json(buf.str());
}

}  // namespace prc
