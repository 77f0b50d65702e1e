#include "sewkit/ext_distance.hpp"

#include <cmath>
#include <cstdio>

#include "sewkit/errors.hpp"

namespace sewkit {

ExtDistance ExtDistance::finite(double value) {
  if (!(value >= 0.0)) throw DomainError("ExtDistance: value must be non-negative");
  if (std::isinf(value)) return infinite();
  ExtDistance d;
  d.value_ = value;
  return d;
}

double ExtDistance::value() const {
  if (infinite_) throw DomainError("ExtDistance: infinite distance has no finite value");
  return value_;
}

std::string ExtDistance::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

}  // namespace sewkit
