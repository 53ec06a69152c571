#include "rmx/io.hpp"

#include <charconv>
#include <cmath>

namespace rmx {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<double> Range::values() const {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = min;
    return v;
  }
  for (int i = 0; i < count; ++i) v[i] = min + (max - min) * i / (count - 1);
  v[count - 1] = max;
  return v;
}

namespace {

double parse_number(std::string_view s, std::string_view whole) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw InvalidArgument("malformed number '" + std::string(s) + "' in '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Range parse_range(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
    throw InvalidArgument("range must be min:max:count, got '" + std::string(text) + "'");
  Range r;
  r.min = parse_number(text.substr(0, c1), text);
  r.max = parse_number(text.substr(c1 + 1, c2 - c1 - 1), text);
  const double n = parse_number(text.substr(c2 + 1), text);
  if (n < 1 || std::floor(n) != n || n > 1e8) throw InvalidArgument("range count must be a positive integer");
  r.count = static_cast<int>(n);
  if (r.count > 1 && !(r.min < r.max)) throw InvalidArgument("range requires min < max");
  return r;
}

Grid2D parse_grid(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw InvalidArgument("grid must be xmin:xmax:nx,ymin:ymax:ny");
  const Range rx = parse_range(text.substr(0, comma));
  const Range ry = parse_range(text.substr(comma + 1));
  Grid2D g{rx.min, rx.max, ry.min, ry.max, rx.count, ry.count};
  g.validate();
  return g;
}

}  // namespace rmx
