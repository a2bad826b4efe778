#pragma once

// Arithmetic angle expressions for the experiment files: decimal literals,
// the constant "pi", the operators + - * / with the usual precedence,
// parentheses and unary minus.  "2 * pi" evaluates to 6.283185307179586.

#include <string>
#include <vector>

namespace mdbench {

// Evaluates `src` to radians.  Throws ValidationError with the offending
// 1-based position on syntax errors, on division by zero, and on empty
// input.
double parse_angle_expression(const std::string& src);

// Inclusive uniform grid of `num_steps` angles from start to stop; both
// endpoints are reproduced exactly.  Requires num_steps >= 2, or exactly 1
// when start == stop; throws ValidationError otherwise.
std::vector<double> angle_grid(double start, double stop, int num_steps);

}  // namespace mdbench
