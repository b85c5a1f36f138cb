#pragma once

#include <iosfwd>
#include <string>

#include "curvcheck/chain.hpp"
#include "curvcheck/example_chains.hpp"

namespace curvcheck {

/// A chain read from a spec file. Explicit specs have family "explicit" and no
/// certificate.
struct LoadedChain {
  Example example;
  std::string text;  // the chain spec as read, hashed into reports

  const MarkovChain& chain() const { return example.chain; }
};

/// Accepts {"states": [...], "rates": [[x, y, k], ...], "pi": [...]} or
/// {"family": name, "params": {...}}. Throws InvalidInput for malformed JSON and
/// the chain errors for invalid chains.
LoadedChain parse_chain_spec(const std::string& text, ChainOptions options = {});

/// Reads `path`, or `in` when path is "-".
std::string read_text(const std::string& path, std::istream& in);

std::string emit_family_spec(const std::string& family, const ExampleParams& params);
std::string emit_explicit_spec(const MarkovChain& chain);

/// A JSON array ordered like the states, a JSON object keyed by label, or
/// whitespace-separated numbers.
StateFunction parse_density(const std::string& text, const MarkovChain& chain);

}  // namespace curvcheck
