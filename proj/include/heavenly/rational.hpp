#pragma once

#include <gmpxx.h>

#include <string>

#include "heavenly/errors.hpp"

namespace heavenly {

// Exact rational scalar.  All symbolic modules compute over this type; no
// floating point enters any identity check.
using Rat = mpq_class;

// Parse "num/den" or "num" (optional sign, base 10).  The result is
// canonicalized.  Throws ParseError on malformed input or a zero denominator.
Rat rat_parse(const std::string& text);

// Canonical text form: "num/den", or "num" when the denominator is 1.
std::string rat_str(const Rat& value);

}  // namespace heavenly
