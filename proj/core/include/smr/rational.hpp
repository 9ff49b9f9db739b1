#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace smr {

// Exact rationals everywhere weights, flows or LP values are involved.
using Rational = mpq_class;

std::string to_string(const Rational& value);

// Accepts "3", "-2", "1/2", "-7/4". Throws InvalidArgument otherwise.
Rational parse_rational(std::string_view text);

}  // namespace smr
