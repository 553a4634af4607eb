#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pla {

// Finite union of closed intervals in [0,1]; a single point is [v, v].
class ValueSet {
 public:
  struct Interval {
    double lo, hi;
  };

  ValueSet() = default;
  explicit ValueSet(std::vector<Interval> intervals);
  static ValueSet point(double v) { return ValueSet({{v, v}}); }
  static ValueSet all() { return ValueSet({{0.0, 1.0}}); }

  // Text form: comma-separated items, each "v" or "lo:hi", e.g. "1" or
  // "0.4:0.6,1". Throws InvalidArgument.
  static ValueSet parse(std::string_view text);

  // Membership with absolute slack 1e-12 at the endpoints.
  bool contains(double v) const;
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::string to_string() const;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace pla
