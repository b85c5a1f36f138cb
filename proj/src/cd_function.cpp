#include "curvcheck/cd_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvcheck/error.hpp"
#include "curvcheck/upsilon.hpp"
#include "descriptor.hpp"

namespace curvcheck {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double tail_exponent(const Tabulated& t) {
  const std::size_t m = t.grid.size();
  return std::log(t.values[m - 1] / t.values[m - 2]) / std::log(t.grid[m - 1] / t.grid[m - 2]);
}

void validate(const Tabulated& t) {
  if (t.grid.size() < 3 || t.grid.size() != t.values.size())
    throw Error(ErrorKind::InvalidInput, "tabulated F needs at least three matching nodes");
  if (t.grid.front() != 0.0) throw Error(ErrorKind::InvalidInput, "tabulated F must start at r = 0");
  for (std::size_t i = 1; i < t.grid.size(); ++i)
    if (!(t.grid[i] > t.grid[i - 1]))
      throw Error(ErrorKind::InvalidInput, "tabulated grid must be strictly increasing");
  if (!(t.values[t.values.size() - 2] > 0.0))
    throw Error(ErrorKind::InvalidInput, "tabulated F must be positive at its last two nodes");
}

std::pair<double, double> tabulated_eval(const Tabulated& t, double r) {
  const auto& g = t.grid;
  const auto& v = t.values;
  if (r >= g.back()) {
    const double p = tail_exponent(t);
    const double value = v.back() * std::pow(r / g.back(), p);
    return {value, p * value / r};
  }
  const auto it = std::upper_bound(g.begin(), g.end(), r);
  const auto i = static_cast<std::size_t>(it - g.begin()) - 1;
  const double slope = (v[i + 1] - v[i]) / (g[i + 1] - g[i]);
  return {v[i] + slope * (r - g[i]), slope};
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    grid[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  return grid;
}

}  // namespace

double cd_value(const CDFunction& F, double r) {
  if (!(r > 0.0)) return 0.0;
  return std::visit(Overloaded{
                        [r](const PowerType& p) {
                          return std::isinf(p.n) ? 0.0 : std::pow(r, 1.0 + p.delta) / p.n;
                        },
                        [r](const NuBased& nb) { return nb.out_scale * nu(nb.c, nb.d, -r / nb.arg_scale); },
                        [r](const Tabulated& t) { return tabulated_eval(t, r).first; },
                    },
                    F);
}

double cd_derivative(const CDFunction& F, double r) {
  if (r < 0.0) return 0.0;
  return std::visit(Overloaded{
                        [r](const PowerType& p) {
                          return std::isinf(p.n) ? 0.0 : (1.0 + p.delta) * std::pow(r, p.delta) / p.n;
                        },
                        [r](const NuBased& nb) {
                          return -nb.out_scale / nb.arg_scale * nu_prime(nb.c, nb.d, -r / nb.arg_scale);
                        },
                        [r](const Tabulated& t) { return tabulated_eval(t, r).second; },
                    },
                    F);
}

bool is_zero(const CDFunction& F) {
  return std::visit(Overloaded{
                        [](const PowerType& p) { return std::isinf(p.n); },
                        [](const NuBased& nb) { return nb.out_scale == 0.0; },
                        [](const Tabulated& t) {
                          return std::all_of(t.values.begin(), t.values.end(), [](double v) { return v == 0.0; });
                        },
                    },
                    F);
}

CDFunctionCheck check_cd_function(const CDFunction& F, double lo, double hi, int points) {
  if (const auto* t = std::get_if<Tabulated>(&F)) validate(*t);
  CDFunctionCheck check;
  check.zero_at_origin = std::visit(Overloaded{
                                        [](const Tabulated& t) { return t.values.front() == 0.0; },
                                        [](const auto&) { return true; },
                                    },
                                    F);
  const auto grid = log_grid(lo, hi, points);
  check.nonnegative = true;
  check.ratio_increasing = true;
  check.worst_ratio_step = std::numeric_limits<double>::infinity();
  double previous = -std::numeric_limits<double>::infinity();
  for (double r : grid) {
    const double v = cd_value(F, r);
    if (!(v >= 0.0)) check.nonnegative = false;
    const double ratio = v / r;
    if (std::isfinite(previous)) {
      check.worst_ratio_step = std::min(check.worst_ratio_step, ratio - previous);
      if (!(ratio > previous)) check.ratio_increasing = false;
    }
    previous = ratio;
  }
  check.integrable_tail = std::visit(Overloaded{
                                         [](const PowerType& p) { return std::isfinite(p.n) && p.delta > 0.0; },
                                         [](const NuBased& nb) { return nb.out_scale > 0.0 && nb.arg_scale > 0.0; },
                                         [](const Tabulated& t) { return tail_exponent(t) > 1.0; },
                                     },
                                     F);
  return check;
}

double growth_exponent(const CDFunction& F, double lo, double hi, int points) {
  double worst = std::numeric_limits<double>::infinity();
  for (double r : log_grid(lo, hi, points)) {
    const double v = cd_value(F, r);
    if (!(v > 0.0)) return 0.0;
    worst = std::min(worst, cd_derivative(F, r) * r / v - 1.0);
  }
  return worst;
}

CDFunction parse_cd_function(const std::string& descriptor) {
  const Descriptor d = parse_descriptor(descriptor);
  if (d.head == "zero") return PowerType{};
  if (d.head == "power") {
    PowerType p{d.number("n"), d.number_or("delta", 1.0)};
    if (!(p.n > 0.0) || !(p.delta >= 1.0))
      throw Error(ErrorKind::InvalidInput, "power CD-function needs n > 0 and delta >= 1");
    return p;
  }
  if (d.head == "nu") {
    if (d.positional.size() != 2) throw Error(ErrorKind::InvalidInput, "nu descriptor needs c,d");
    NuBased nb{d.number_or("out", 1.0), d.positional[0], d.positional[1], d.number_or("scale", 1.0)};
    if (!(nb.arg_scale > 0.0) || !(nb.out_scale >= 0.0))
      throw Error(ErrorKind::InvalidInput, "nu descriptor needs scale > 0 and out >= 0");
    return nb;
  }
  if (d.head == "table") {
    Tabulated t;
    for (const auto& [r, v] : d.pairs) {
      t.grid.push_back(r);
      t.values.push_back(v);
    }
    validate(t);
    return t;
  }
  throw Error(ErrorKind::InvalidInput, "unknown CD-function '" + d.head + "'");
}

std::string describe(const CDFunction& F) {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&out](const PowerType& p) {
                   if (std::isinf(p.n))
                     out << "zero";
                   else
                     out << "power:n=" << p.n << ",delta=" << p.delta;
                 },
                 [&out](const NuBased& nb) {
                   out << "nu:" << nb.c << ',' << nb.d << ",scale=" << nb.arg_scale << ",out=" << nb.out_scale;
                 },
                 [&out](const Tabulated& t) {
                   out << "table:";
                   for (std::size_t i = 0; i < t.grid.size(); ++i)
                     out << (i ? ";" : "") << t.grid[i] << ':' << t.values[i];
                 },
             },
             F);
  return out.str();
}

}  // namespace curvcheck
