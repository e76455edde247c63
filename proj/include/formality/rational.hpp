#pragma once

#include <gmpxx.h>
#include <string>
#include <string_view>

namespace formality {

/// Exact rational scalar. All engine arithmetic is exact; "nonzero" verdicts
/// are never tolerance-based.
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Canonical text form: "p" or "p/q" with q > 0, e.g. "-3/2".
std::string to_string(const Rational& r);

/// Parses "p" or "p/q" (optional sign). Throws std::invalid_argument on
/// malformed input or zero denominator.
Rational rational_from_string(std::string_view text);

}  // namespace formality
