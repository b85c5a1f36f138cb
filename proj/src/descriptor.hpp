#pragma once

// Compact `head:item,item,key=value` strings shared by the CD-function,
// growth-function and time-grid parsers.

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace curvcheck {

struct Descriptor {
  std::string head;
  std::vector<double> positional;
  std::map<std::string, double> named;
  std::vector<std::pair<double, double>> pairs;  // `a:b` items separated by ';'

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
};

/// Strict decimal parse; the whole token must be consumed. `inf` is accepted.
double parse_number(const std::string& token);

Descriptor parse_descriptor(const std::string& text);

}  // namespace curvcheck
