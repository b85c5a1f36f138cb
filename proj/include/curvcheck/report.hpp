#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "curvcheck/cd.hpp"
#include "curvcheck/inequalities.hpp"

namespace curvcheck {

std::string sha256_hex(const std::string& data);

/// Report envelope: command, spec SHA-256, seed, tool version, and `body`.
/// Keys are sorted, so equal inputs serialize to identical bytes.
nlohmann::json make_report(const std::string& command, const std::string& spec_text,
                           std::optional<std::uint64_t> seed, nlohmann::json body);

nlohmann::json to_json(const Eigen::VectorXd& values);
nlohmann::json to_json(const MarkovChain& chain, const Eigen::VectorXd& values);
nlohmann::json to_json(const MarkovChain& chain, const CDVerdict& verdict);
nlohmann::json to_json(const MarkovChain& chain, const InequalityReport& report);

/// JSON has no infinities; they become the strings "inf" / "-inf".
nlohmann::json number(double value);

}  // namespace curvcheck
