#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace mrlab {

using Rational = boost::rational<std::int64_t>;

// Accepts "7", "-3/2" or a finite decimal such as "1.25" (converted exactly).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

std::int64_t floor_of(const Rational& r);
std::int64_t ceil_of(const Rational& r);

double to_double(const Rational& r);

}  // namespace mrlab
