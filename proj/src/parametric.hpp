#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "space.hpp"

namespace genmetric {

struct Interval {
  Rat lo;
  Rat hi;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(const Rat& x) const {
    if (x < lo || x > hi) return false;
    if (lo_open && x == lo) return false;
    if (hi_open && x == hi) return false;
    return true;
  }
  bool empty() const {
    if (lo > hi) return true;
    return lo == hi && (lo_open || hi_open);
  }
};

// A closed set of distance families over a rational interval, evaluated
// exactly at arbitrary rational coordinates. Families are built in, never
// user code, so evaluation stays exact and sandboxed.
//
//   satish_rpm(a, alpha):   x on the diagonal; (3*alpha + x + y)/2 when
//                           {x,y} = {1,2}; (alpha + x + y)/2 otherwise.
//                           Requires alpha >= a >= 3, domain within [0, a].
//   abs_plus_c(c):          |x - y| + c everywhere, c >= 0.
//   shifted(base, alpha):   base distance plus alpha, alpha > 0.
class ParametricSpace {
 public:
  enum class Family { SatishRpm, AbsPlusC, Shifted };

  static ParametricSpace satish_rpm(Rat a, Rat alpha, Interval domain, Rat step);
  static ParametricSpace abs_plus_c(Rat c, Interval domain, Rat step);
  static ParametricSpace shifted(ParametricSpace base, Rat alpha);

  Family family() const { return family_; }
  const Interval& domain() const;
  const Rat& step() const;

  bool in_domain(const Rat& x) const { return domain().contains(x); }

  // Exact family distance. Throws InputError when a coordinate is outside
  // the domain.
  Rat dist(const Rat& x, const Rat& y) const;

  // Samples lo, lo+step, lo+2*step, ... within the domain (open endpoints
  // excluded) into a FiniteSpace. Labels are the exact coordinates rendered
  // as terminating decimals where possible. Throws InputError when the grid
  // is empty.
  FiniteSpace materialize() const;

  std::vector<Rat> grid_points() const;

 private:
  ParametricSpace() = default;

  Family family_ = Family::AbsPlusC;
  Rat param_a_;      // SatishRpm
  Rat param_alpha_;  // SatishRpm / Shifted
  Rat param_c_;      // AbsPlusC
  Interval domain_;
  Rat step_;
  std::shared_ptr<const ParametricSpace> base_;  // Shifted
};

}  // namespace genmetric
