#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace muexp {

using Vertex = std::int32_t;

/// Global tolerance for equality comparisons on weights and measures.
inline constexpr double kEpsilon = 1e-9;

/// Malformed input or a violated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A post-condition that the algorithm guarantees did not hold. Seeing one of
/// these means a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

/// Expansion value that may be infinite (a side with zero measure). The
/// infinite case is a tag, never an IEEE infinity.
class Expansion {
 public:
  static Expansion finite(double v) { return Expansion(false, v); }
  static Expansion infinite() { return Expansion(true, 0.0); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Only meaningful when finite.
  double value() const { return value_; }

  /// Finite value, or the supplied stand-in when infinite (for reporting).
  double value_or(double fallback) const { return infinite_ ? fallback : value_; }

  friend bool operator<(const Expansion& a, const Expansion& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator==(const Expansion& a, const Expansion& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<=(const Expansion& a, const Expansion& b) { return !(b < a); }

  bool at_least(double threshold) const { return infinite_ || value_ >= threshold; }
  bool at_most(double threshold) const { return !infinite_ && value_ <= threshold; }

  friend std::ostream& operator<<(std::ostream& os, const Expansion& e) {
    if (e.infinite_) return os << "inf";
    return os << e.value_;
  }

 private:
  Expansion(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

inline bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace muexp
