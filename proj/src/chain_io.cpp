#include "curvcheck/chain_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "curvcheck/error.hpp"

namespace curvcheck {
namespace {

using nlohmann::json;

std::string label_of(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number()) {
    const double v = value.get<double>();
    if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
    return value.dump();
  }
  throw Error(ErrorKind::InvalidInput, "state labels must be strings or numbers");
}

double number_of(const json& value, const std::string& what) {
  if (!value.is_number()) throw Error(ErrorKind::InvalidInput, what + " must be a number");
  return value.get<double>();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

ExampleParams params_from_json(const json& params) {
  ExampleParams out;
  if (params.is_null()) return out;
  if (!params.is_object()) throw Error(ErrorKind::InvalidInput, "params must be an object");
  for (const auto& [key, value] : params.items()) {
    if (key == "l") {
      if (!value.is_array()) throw Error(ErrorKind::InvalidInput, "l must be an array");
      for (const auto& w : value) out.weights.push_back(number_of(w, "weight"));
    } else {
      out.values[key] = number_of(value, "parameter '" + key + "'");
    }
  }
  return out;
}

Example explicit_example(const json& doc, ChainOptions options) {
  ChainSpec spec;
  if (!doc.at("states").is_array()) throw Error(ErrorKind::InvalidInput, "states must be an array");
  for (const auto& s : doc.at("states")) spec.states.push_back(label_of(s));
  if (!doc.contains("rates") || !doc.at("rates").is_array())
    throw Error(ErrorKind::InvalidInput, "rates must be an array of [from, to, rate]");
  for (const auto& r : doc.at("rates")) {
    if (!r.is_array() || r.size() != 3) throw Error(ErrorKind::InvalidInput, "each rate is [from, to, rate]");
    spec.rates.push_back({label_of(r[0]), label_of(r[1]), number_of(r[2], "rate")});
  }
  if (doc.contains("pi") && !doc.at("pi").is_null()) {
    std::vector<double> pi;
    for (const auto& p : doc.at("pi")) pi.push_back(number_of(p, "pi entry"));
    spec.pi = std::move(pi);
  }
  return {"explicit", {}, build_chain(spec, options), std::nullopt, {}};
}

}  // namespace

LoadedChain parse_chain_spec(const std::string& text, ChainOptions options) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw Error(ErrorKind::InvalidInput, "a chain spec is a JSON object");
  try {
    if (doc.contains("family")) {
      if (!doc.at("family").is_string()) throw Error(ErrorKind::InvalidInput, "family must be a string");
      Example ex = make_example(doc.at("family").get<std::string>(),
                                params_from_json(doc.value("params", json())));
      const MarkovChain& c = ex.chain;
      ex.chain = MarkovChain(c.labels(), c.generator(), c.pi(), options).with_truncation_flag(c.truncated());
      return {std::move(ex), text};
    }
    if (doc.contains("states")) return {explicit_example(doc, options), text};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("bad chain spec: ") + e.what());
  }
  throw Error(ErrorKind::InvalidInput, "a chain spec needs either \"states\" or \"family\"");
}

std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  buffer << file.rdbuf();
  return buffer.str();
}

std::string emit_family_spec(const std::string& family, const ExampleParams& params) {
  json p = json::object();
  for (const auto& [k, v] : params.values) p[k] = v;
  if (!params.weights.empty()) p["l"] = params.weights;
  return json{{"family", family}, {"params", p}}.dump();
}

std::string emit_explicit_spec(const MarkovChain& chain) {
  json rates = json::array();
  for (std::size_t x = 0; x < chain.size(); ++x)
    for (const auto& t : chain.neighbors(x)) rates.push_back({chain.label(x), chain.label(t.to), t.rate});
  std::vector<double> pi(chain.pi().data(), chain.pi().data() + chain.pi().size());
  return json{{"states", chain.labels()}, {"rates", rates}, {"pi", pi}}.dump();
}

StateFunction parse_density(const std::string& text, const MarkovChain& chain) {
  const auto n = static_cast<Eigen::Index>(chain.size());
  StateFunction f(n);
  json doc;
  bool is_json = true;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error&) {
    is_json = false;
  }
  if (is_json && doc.is_object()) {
    if (doc.size() != chain.size()) throw Error(ErrorKind::InvalidInput, "density needs one value per state");
    for (const auto& [label, value] : doc.items())
      f(static_cast<Eigen::Index>(chain.index_of(label))) = number_of(value, "density value");
    return f;
  }
  std::vector<double> values;
  if (is_json && doc.is_array()) {
    for (const auto& v : doc) values.push_back(number_of(v, "density value"));
  } else if (is_json && !doc.is_number()) {
    throw Error(ErrorKind::InvalidInput, "density must be an array, an object, or plain numbers");
  } else {
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "bad density value '" + token + "'");
      }
    }
  }
  if (values.size() != chain.size()) throw Error(ErrorKind::InvalidInput, "density needs one value per state");
  for (Eigen::Index i = 0; i < n; ++i) f(i) = values[static_cast<std::size_t>(i)];
  return f;
}

}  // namespace curvcheck
