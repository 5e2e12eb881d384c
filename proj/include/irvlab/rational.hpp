#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace irvlab {

using Rational = mpq_class;

// Parses "p/q", an integer, or a finite decimal such as "0.125" or "-3.5e-2"
// into an exact rational. Throws SpecError on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

}  // namespace irvlab
