#include "mdbench/angle_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "mdbench/errors.hpp"

namespace mdbench {
namespace {

// Recursive-descent evaluator over the grammar
//   expression := term (('+' | '-') term)*
//   term       := factor (('*' | '/') factor)*
//   factor     := number | "pi" | '-' factor | '(' expression ')'
// with left-associative operators.
class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  double run() {
    skip_spaces();
    if (pos_ == src_.size()) {
      throw ValidationError("angle expression is empty");
    }
    const double value = expression();
    skip_spaces();
    if (pos_ != src_.size()) {
      fail(pos_, "unexpected trailing input");
    }
    return value;
  }

 private:
  double expression() {
    double value = term();
    for (;;) {
      skip_spaces();
      if (consume('+')) {
        value += term();
      } else if (consume('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  double term() {
    double value = factor();
    for (;;) {
      skip_spaces();
      if (consume('*')) {
        value *= factor();
      } else if (consume('/')) {
        const std::size_t slash = pos_ - 1;
        const double divisor = factor();
        if (divisor == 0.0) {
          fail(slash, "division by zero");
        }
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  double factor() {
    skip_spaces();
    if (consume('-')) {
      return -factor();
    }
    if (consume('(')) {
      const double value = expression();
      skip_spaces();
      if (!consume(')')) {
        fail(pos_, "expected ')'");
      }
      return value;
    }
    if (pos_ < src_.size()) {
      const unsigned char c = static_cast<unsigned char>(src_[pos_]);
      if (std::isdigit(c) || c == '.') {
        return number();
      }
      if (std::isalpha(c)) {
        return word();
      }
    }
    fail(pos_, "expected a number, 'pi' or '('");
  }

  double number() {
    double value = 0.0;
    const char* first = src_.data() + pos_;
    const char* last = src_.data() + src_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc{} || ptr == first) {
      fail(pos_, "malformed number");
    }
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    return value;
  }

  double word() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
    if (src_.compare(start, pos_ - start, "pi") == 0) {
      return std::numbers::pi;
    }
    fail(start, "unknown name '" + src_.substr(start, pos_ - start) + "' (only 'pi' is defined)");
  }

  void skip_spaces() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::size_t at, const std::string& reason) const {
    throw ValidationError("angle expression \"" + src_ + "\": " + reason + " at position " +
                          std::to_string(at + 1));
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

}  // namespace

double parse_angle_expression(const std::string& src) {
  const double value = Parser(src).run();
  if (!std::isfinite(value)) {
    throw ValidationError("angle expression \"" + src + "\" does not evaluate to a finite value");
  }
  return value;
}

std::vector<double> angle_grid(double start, double stop, int num_steps) {
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw ValidationError("angle grid endpoints must be finite");
  }
  if (num_steps == 1) {
    if (start != stop) {
      throw ValidationError("num_steps = 1 requires start == stop");
    }
    return {start};
  }
  if (num_steps < 2) {
    throw ValidationError("num_steps must be at least 2 (or 1 when start == stop), got " +
                          std::to_string(num_steps));
  }
  std::vector<double> grid(static_cast<std::size_t>(num_steps));
  for (int i = 0; i < num_steps; ++i) {
    grid[static_cast<std::size_t>(i)] =
        start + (stop - start) * (static_cast<double>(i) / (num_steps - 1));
  }
  grid.front() = start;
  grid.back() = stop;
  return grid;
}

}  // namespace mdbench
