#pragma once

#include <array>
#include <complex>
#include <string_view>

namespace qwalk::cli {

/// Real-valued expression with the constant "pi": numbers, + - * /,
/// parentheses, unary minus, and implicit products such as "5pi/4" or
/// "2(pi-1)". Throws ParseError.
double parse_angle(std::string_view text);

/// "lo:hi" with angle expressions on both sides; lo < hi required.
std::array<double, 2> parse_range(std::string_view text);

/// Complex literal: "x", "yi", "x+yi", "x-yi", "i", "-i". The real and
/// imaginary parts are angle expressions without further +/- at top level.
std::complex<double> parse_complex(std::string_view text);

}  // namespace qwalk::cli
