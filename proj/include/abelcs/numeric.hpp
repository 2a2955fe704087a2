// numeric.hpp: MPFR-backed reals and complex values for evaluating sums of roots of unity.

#pragma once

#include <mpfr.h>

#include <complex>
#include <string>

#include "abelcs/matrix.hpp"

namespace abelcs {

/// Owning MPFR value with a fixed precision in bits.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = 128);
  Real(double x, mpfr_prec_t precision);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Fixed-point decimal with `decimals` digits after the point; "-0.000…" is printed without sign.
  std::string to_fixed(int decimals) const;

 private:
  mpfr_t value_;
};

/// re + i·im at `precision()` bits, with an a-priori absolute error bound on each part.
struct ComplexValue {
  Real re;
  Real im;
  double error_bound = 0.0;

  explicit ComplexValue(mpfr_prec_t precision = 128) : re(precision), im(precision) {}

  mpfr_prec_t precision() const { return re.precision(); }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

/// e^{2πi·r}.
ComplexValue unit_phase(const Rational& r, mpfr_prec_t precision);

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator-(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator*(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator*(const Real& s, const ComplexValue& a);

Real abs(const ComplexValue& z);

/// |x|^e for a positive integer x and integer or half-integer exponent e = twice_e / 2.
Real half_integer_power(const Integer& x, long twice_e, mpfr_prec_t precision);

/// Decimal places that a value of `precision` bits can honestly display.
int decimal_places(mpfr_prec_t precision);

}  // namespace abelcs
