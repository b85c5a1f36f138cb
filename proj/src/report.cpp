#include "curvcheck/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "curvcheck/error.hpp"

namespace curvcheck {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return out.str();
}

nlohmann::json number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

nlohmann::json make_report(const std::string& command, const std::string& spec_text,
                           std::optional<std::uint64_t> seed, nlohmann::json body) {
  nlohmann::json report;
  report["command"] = command;
  report["spec_sha256"] = sha256_hex(spec_text);
  report["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json();
  report["version"] = CURVCHECK_VERSION;
  report["tool"] = "curvcheck";
  report["result"] = std::move(body);
  return report;
}

nlohmann::json to_json(const Eigen::VectorXd& values) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(number(values(i)));
  return out;
}

nlohmann::json to_json(const MarkovChain& chain, const Eigen::VectorXd& values) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t x = 0; x < chain.size(); ++x) out[chain.label(x)] = number(values(static_cast<Eigen::Index>(x)));
  return out;
}

nlohmann::json to_json(const MarkovChain& chain, const CDVerdict& verdict) {
  nlohmann::json out;
  out["status"] = std::string(to_string(verdict.status));
  out["worst_slack"] = number(verdict.worst_slack);
  out["worst_trial"] = verdict.worst_trial;
  out["worst_state"] = chain.label(verdict.worst_state);
  out["trials"] = verdict.trials;
  out["seed"] = verdict.seed;
  if (verdict.witness) {
    out["witness"] = to_json(chain, *verdict.witness);
    out["witness_state"] = chain.label(verdict.witness_state.value_or(0));
    out["witness_slack"] = number(verdict.witness_slack);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

nlohmann::json to_json(const MarkovChain& chain, const InequalityReport& report) {
  nlohmann::json out;
  out["kind"] = report.kind;
  out["pass"] = report.pass;
  out["worst_slack"] = number(report.worst_slack);
  out["samples"] = report.slacks.size();
  out["quad_error"] = number(report.quad_error);
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : report.params) params[k] = number(v);
  out["params"] = params;
  out["witness"] = report.witness ? to_json(chain, *report.witness) : nlohmann::json();
  return out;
}

}  // namespace curvcheck
