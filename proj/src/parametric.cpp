#include "parametric.hpp"

namespace genmetric {

namespace {

void validate_grid(const Interval& domain, const Rat& step) {
  if (domain.empty()) throw InputError("parametric domain is empty");
  if (step <= 0) {
    throw InputError("grid step must be positive, got " + format_rational(step));
  }
}

}  // namespace

ParametricSpace ParametricSpace::satish_rpm(Rat a, Rat alpha, Interval domain, Rat step) {
  if (a < 3) {
    throw InputError("family satish_rpm requires a >= 3, got a = " + format_rational(a));
  }
  if (alpha < a) {
    throw InputError("family satish_rpm requires alpha >= a, got alpha = " +
                     format_rational(alpha) + ", a = " + format_rational(a));
  }
  if (domain.lo < 0 || domain.hi > a) {
    throw InputError("family satish_rpm domain must lie within [0, a]");
  }
  validate_grid(domain, step);
  ParametricSpace p;
  p.family_ = Family::SatishRpm;
  p.param_a_ = std::move(a);
  p.param_alpha_ = std::move(alpha);
  p.domain_ = std::move(domain);
  p.step_ = std::move(step);
  return p;
}

ParametricSpace ParametricSpace::abs_plus_c(Rat c, Interval domain, Rat step) {
  if (c < 0) {
    throw InputError("family abs_plus_c requires c >= 0, got c = " + format_rational(c));
  }
  validate_grid(domain, step);
  ParametricSpace p;
  p.family_ = Family::AbsPlusC;
  p.param_c_ = std::move(c);
  p.domain_ = std::move(domain);
  p.step_ = std::move(step);
  return p;
}

ParametricSpace ParametricSpace::shifted(ParametricSpace base, Rat alpha) {
  if (alpha <= 0) {
    throw InputError("family shifted requires alpha > 0, got alpha = " +
                     format_rational(alpha));
  }
  ParametricSpace p;
  p.family_ = Family::Shifted;
  p.param_alpha_ = std::move(alpha);
  p.base_ = std::make_shared<const ParametricSpace>(std::move(base));
  return p;
}

const Interval& ParametricSpace::domain() const {
  return family_ == Family::Shifted ? base_->domain() : domain_;
}

const Rat& ParametricSpace::step() const {
  return family_ == Family::Shifted ? base_->step() : step_;
}

Rat ParametricSpace::dist(const Rat& x, const Rat& y) const {
  if (!in_domain(x)) {
    throw InputError("coordinate " + format_rational(x) + " is outside the domain");
  }
  if (!in_domain(y)) {
    throw InputError("coordinate " + format_rational(y) + " is outside the domain");
  }
  switch (family_) {
    case Family::SatishRpm: {
      if (x == y) return x;
      bool one_two = (x == 1 && y == 2) || (x == 2 && y == 1);
      if (one_two) return (3 * param_alpha_ + x + y) / 2;
      return (param_alpha_ + x + y) / 2;
    }
    case Family::AbsPlusC: {
      Rat gap = x - y;
      if (gap < 0) gap = -gap;
      return gap + param_c_;
    }
    case Family::Shifted:
      return base_->dist(x, y) + param_alpha_;
  }
  throw InputError("unknown family");
}

std::vector<Rat> ParametricSpace::grid_points() const {
  if (family_ == Family::Shifted) return base_->grid_points();
  std::vector<Rat> pts;
  for (Rat x = domain_.lo; x <= domain_.hi; x += step_) {
    if (domain_.contains(x)) pts.push_back(x);
  }
  return pts;
}

FiniteSpace ParametricSpace::materialize() const {
  std::vector<Rat> pts = grid_points();
  if (pts.empty()) {
    throw InputError("grid sampling produced no points");
  }
  std::vector<std::string> labels;
  labels.reserve(pts.size());
  for (const Rat& x : pts) labels.push_back(format_point_label(x));
  const size_t n = pts.size();
  std::vector<Rat> table(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      Rat v = dist(pts[i], pts[j]);
      table[i * n + j] = v;
      table[j * n + i] = std::move(v);
    }
  }
  return FiniteSpace(std::move(labels), std::move(table));
}

}  // namespace genmetric
