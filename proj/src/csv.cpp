#include "qw2d/csv.hpp"

#include <array>
#include <charconv>

namespace qw2d {

std::string format_double(double x) {
  std::array<char, 40> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

}  // namespace qw2d
