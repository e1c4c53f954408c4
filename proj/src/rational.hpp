#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace genmetric {

// Raised on malformed or contract-violating input documents and arguments.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All distance arithmetic in this library is exact. Axiom verdicts,
// contraction constants and convergence limits are computed on canonical
// GMP rationals; floating point never enters a decision.
using Rat = mpq_class;

// Accepts integer ("3"), fraction ("5/2", "-7/3") and terminating decimal
// ("2.5", "0.125") forms. Returns nullopt on anything else.
std::optional<Rat> try_parse_rational(const std::string& text);

// Throwing variant; the error message quotes the offending text.
Rat parse_rational(const std::string& text);

// Canonical form: "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rat& q);

// Exact decimal ("0.5", "1.75") when the denominator divides a power of 10,
// canonical fraction otherwise. Grid point labels use this rendering.
std::string format_point_label(const Rat& q);

// q^e by repeated squaring on exact rationals.
Rat pow_rational(const Rat& base, unsigned long exp);

}  // namespace genmetric
