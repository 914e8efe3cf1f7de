#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace spintomo {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// n! — exact (from the integer table) for n <= 20, correctly-rounded double
// up to 170, +inf beyond. Negative arguments throw.
double factorial(int n);

// ln(n!), valid for any n >= 0.
double log_factorial(int n);

// (-1)^n for integer n (possibly negative).
inline double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// x^n for small non-negative integer exponents by repeated multiplication;
// avoids pow() branch cuts for complex bases.
template <typename T> T pow_int(T base, int n) {
  T result{1.0};
  T p = base;
  for (int k = n; k > 0; k >>= 1) {
    if (k & 1)
      result *= p;
    p *= p;
  }
  return result;
}

// Compensated (Kahan) accumulation for alternating sums.
class KahanSum {
public:
  void add(double v) {
    double y = v - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanComplexSum {
public:
  void add(Complex v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

private:
  KahanSum re_, im_;
};

} // namespace spintomo
