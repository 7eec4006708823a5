#pragma once

#include <string>

namespace qw2d {

// Shortest decimal form with 17 significant digits, locale independent.
std::string format_double(double x);

}  // namespace qw2d
