#pragma once

#include <compare>
#include <limits>
#include <string>

namespace sewkit {

/// A distance in [0, +inf]. Infinity is a tag, never a float sentinel.
class ExtDistance {
 public:
  constexpr ExtDistance() = default;

  static ExtDistance finite(double value);
  static constexpr ExtDistance infinite() {
    ExtDistance d;
    d.infinite_ = true;
    return d;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws DomainError when infinite.
  double value() const;

  /// Finite value, or +inf as a plain double for arithmetic against bounds.
  double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend ExtDistance operator+(ExtDistance a, ExtDistance b) {
    if (a.infinite_ || b.infinite_) return infinite();
    ExtDistance r;
    r.value_ = a.value_ + b.value_;
    return r;
  }

  friend constexpr bool operator==(const ExtDistance& a, const ExtDistance& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::partial_ordering operator<=>(const ExtDistance& a,
                                                     const ExtDistance& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

inline ExtDistance max(ExtDistance a, ExtDistance b) { return a < b ? b : a; }

}  // namespace sewkit
