#include "descriptor.hpp"

#include <sstream>

#include "curvcheck/error.hpp"

namespace curvcheck {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

}  // namespace

double parse_number(const std::string& token) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "not a number: '" + token + "'");
  }
  if (used != token.size()) throw Error(ErrorKind::InvalidInput, "not a number: '" + token + "'");
  return value;
}

double Descriptor::number(const std::string& key) const {
  const auto it = named.find(key);
  if (it == named.end()) throw Error(ErrorKind::InvalidInput, "descriptor '" + head + "' needs " + key + "=");
  return it->second;
}

double Descriptor::number_or(const std::string& key, double fallback) const {
  const auto it = named.find(key);
  return it == named.end() ? fallback : it->second;
}

Descriptor parse_descriptor(const std::string& text) {
  Descriptor d;
  const auto colon = text.find(':');
  d.head = text.substr(0, colon);
  if (d.head.empty()) throw Error(ErrorKind::InvalidInput, "empty descriptor");
  if (colon == std::string::npos) return d;
  const std::string rest = text.substr(colon + 1);
  if (rest.find(';') != std::string::npos || d.head == "table") {
    for (const auto& item : split(rest, ';')) {
      const auto sep = item.find(':');
      if (sep == std::string::npos) throw Error(ErrorKind::InvalidInput, "expected a:b in '" + item + "'");
      d.pairs.emplace_back(parse_number(item.substr(0, sep)), parse_number(item.substr(sep + 1)));
    }
    return d;
  }
  for (const auto& item : split(rest, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (!d.named.empty())
        throw Error(ErrorKind::InvalidInput, "positional value after key=value in '" + text + "'");
      d.positional.push_back(parse_number(item));
    } else {
      d.named[item.substr(0, eq)] = parse_number(item.substr(eq + 1));
    }
  }
  return d;
}

}  // namespace curvcheck
