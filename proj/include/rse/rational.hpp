#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rse {

/// Exact rational scalar. Every coordinate in the library is one of these.
using Rational = mpq_class;

/// Parses "p/q" (q > 0) or an integer string. Non-reduced input is accepted
/// and canonicalized; anything else throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical wire form: reduced "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

}  // namespace rse
