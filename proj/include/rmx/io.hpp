#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rmx/core.hpp"

namespace rmx {

// 17 significant digits; round-trips exactly.
std::string format_double(double v);

struct Range {
  double min = 0, max = 0;
  int count = 1;
  // Inclusive endpoints; count == 1 yields {min}.
  std::vector<double> values() const;
};

// "min:max:count"
Range parse_range(std::string_view text);
// "xmin:xmax:nx,ymin:ymax:ny"
Grid2D parse_grid(std::string_view text);

}  // namespace rmx
