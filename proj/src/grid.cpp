#include "magnonbath/grid.hpp"

#include <cmath>
#include <cstdio>

namespace magnonbath::grid {

namespace {

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
      throw DomainError("trailing characters in number: " + s);
    return v;
  } catch (const std::invalid_argument&) {
    throw DomainError("not a number: " + s);
  } catch (const std::out_of_range&) {
    throw DomainError("number out of range: " + s);
  }
}

}  // namespace

Grid parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    const double v = parse_double(text);
    return {v, v, 1.0};
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw DomainError("grid must be start:stop:step: " + text);
  const Grid g{parse_double(text.substr(0, c1)),
               parse_double(text.substr(c1 + 1, c2 - c1 - 1)),
               parse_double(text.substr(c2 + 1))};
  if (!(g.step > 0.0))
    throw DomainError("grid step must be positive: " + text);
  if (g.stop < g.start)
    throw DomainError("grid stop precedes start: " + text);
  if ((g.stop - g.start) / g.step > 2e7)
    throw DomainError("grid too large: " + text);
  return g;
}

std::vector<double> Grid::values() const {
  const double n_real = (stop - start) / step;
  long n = std::lround(n_real);
  // Tolerate endpoints that miss an integer multiple by rounding noise only.
  if (std::abs(n_real - static_cast<double>(n)) >
      1e-9 * (1.0 + std::abs(n_real)))
    n = static_cast<long>(std::floor(n_real + 1e-12));
  if (n < 0) n = 0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i)
    out.push_back(start + step * static_cast<double>(i));
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace magnonbath::grid
