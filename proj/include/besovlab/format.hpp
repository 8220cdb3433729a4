#pragma once

#include <cstdio>
#include <string>

namespace besovlab {

/// Decimal text with 17 significant digits (round-trips any double).
inline std::string fmt17(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace besovlab
