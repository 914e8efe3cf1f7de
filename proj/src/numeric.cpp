#include "spintomo/numeric.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace spintomo {

namespace {

constexpr int kExactMax = 20; // 20! is the largest factorial fitting in int64

constexpr std::array<std::int64_t, kExactMax + 1> kExact = [] {
  std::array<std::int64_t, kExactMax + 1> t{};
  t[0] = 1;
  for (int i = 1; i <= kExactMax; ++i)
    t[i] = t[i - 1] * i;
  return t;
}();

constexpr int kTableMax = 170; // 171! overflows double

const std::array<double, kTableMax + 1> &rounded_table() {
  static const std::array<double, kTableMax + 1> table = [] {
    std::array<double, kTableMax + 1> t{};
    long double acc = 1.0L;
    for (int i = 0; i <= kTableMax; ++i) {
      if (i > 0)
        acc *= i;
      t[i] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

} // namespace

double factorial(int n) {
  if (n < 0)
    throw std::invalid_argument("factorial: negative argument");
  if (n <= kExactMax)
    return static_cast<double>(kExact[n]);
  if (n <= kTableMax)
    return rounded_table()[n];
  return std::numeric_limits<double>::infinity();
}

double log_factorial(int n) {
  if (n < 0)
    throw std::invalid_argument("log_factorial: negative argument");
  if (n <= kExactMax)
    return std::log(static_cast<double>(kExact[n]));
  return std::lgamma(static_cast<double>(n) + 1.0);
}

} // namespace spintomo
