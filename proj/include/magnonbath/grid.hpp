// grid.hpp — "start:stop:step" grids and fixed-precision number formatting.
#pragma once

#include <string>
#include <vector>

#include "magnonbath/errors.hpp"

namespace magnonbath::grid {

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;  // inclusive of both endpoints
};

// Parses "start:stop:step" (step > 0) or a bare number as a one-point grid.
Grid parse_grid(const std::string& text);

// 12 significant digits, the CSV cell format.
std::string format_number(double v);

}  // namespace magnonbath::grid
