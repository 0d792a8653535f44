#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace abekit {

/// Exact field element. Arbitrary precision numerator and denominator.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws PreconditionError on malformed input or q = 0.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" form.
std::string to_string(const Rational& value);

}  // namespace abekit
