#pragma once

// A decimal reference value with `digits` significant digits as a Ball wide
// enough to cover its own truncation.

#include <cmath>
#include <string>

#include "sttrace/ball.hpp"

namespace oracle {

inline sttrace::Ball decimal(const std::string& s, int digits) {
  sttrace::Ball b = sttrace::Ball::from_string(s, 256);
  b.widen(std::fabs(b.mid_double()) * std::pow(10.0, 1 - digits));
  return b;
}

}  // namespace oracle
