#include "abelcs/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace abelcs {

Real::Real(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(double x, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, x, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // MPFR has no move; swap with a freshly initialised minimal value.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_fixed(int decimals) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rf", decimals, value_);
  std::string s(buf);
  mpfr_free_str(buf);
  if (!s.empty() && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

int decimal_places(mpfr_prec_t precision) {
  return std::max(1, static_cast<int>(std::floor((precision - 4) * 0.30102999566398120)));
}

ComplexValue unit_phase(const Rational& r, mpfr_prec_t precision) {
  ComplexValue z(precision);
  const mpfr_prec_t wp = precision + 16;
  Real angle(wp);
  mpfr_const_pi(angle.get(), MPFR_RNDN);
  mpfr_mul_2ui(angle.get(), angle.get(), 1, MPFR_RNDN);
  mpfr_mul_z(angle.get(), angle.get(), r.get_num_mpz_t(), MPFR_RNDN);
  mpfr_div_z(angle.get(), angle.get(), r.get_den_mpz_t(), MPFR_RNDN);
  mpfr_sin_cos(z.im.get(), z.re.get(), angle.get(), MPFR_RNDN);
  z.error_bound = std::ldexp(1.0, static_cast<int>(2 - precision));
  return z;
}

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) {
  ComplexValue z(std::max(a.precision(), b.precision()));
  mpfr_add(z.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(z.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  z.error_bound = a.error_bound + b.error_bound + std::ldexp(1.0, static_cast<int>(-z.precision())) *
                                                      (1.0 + std::abs(z.to_complex()));
  return z;
}

ComplexValue operator-(const ComplexValue& a, const ComplexValue& b) {
  ComplexValue z(std::max(a.precision(), b.precision()));
  mpfr_sub(z.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(z.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  z.error_bound = a.error_bound + b.error_bound + std::ldexp(1.0, static_cast<int>(-z.precision())) *
                                                      (1.0 + std::abs(z.to_complex()));
  return z;
}

ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) {
  const mpfr_prec_t p = std::max(a.precision(), b.precision());
  ComplexValue z(p);
  Real t1(p + 8), t2(p + 8);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(z.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(z.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  const double ma = std::abs(a.to_complex()), mb = std::abs(b.to_complex());
  z.error_bound = a.error_bound * mb + b.error_bound * ma + a.error_bound * b.error_bound +
                  std::ldexp(1.0, static_cast<int>(2 - p)) * (1.0 + ma * mb);
  return z;
}

ComplexValue operator*(const Real& s, const ComplexValue& a) {
  ComplexValue z(std::max(s.precision(), a.precision()));
  mpfr_mul(z.re.get(), s.get(), a.re.get(), MPFR_RNDN);
  mpfr_mul(z.im.get(), s.get(), a.im.get(), MPFR_RNDN);
  const double ms = std::abs(s.to_double());
  z.error_bound = a.error_bound * ms + std::ldexp(1.0, static_cast<int>(1 - z.precision())) *
                                           (1.0 + ms * std::abs(a.to_complex()));
  return z;
}

Real abs(const ComplexValue& z) {
  Real r(z.precision());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Real half_integer_power(const Integer& x, long twice_e, mpfr_prec_t precision) {
  if (x <= 0) throw PreconditionError("half_integer_power needs a positive base");
  Real r(precision);
  Real root(precision + 16);
  mpfr_set_z(root.get(), x.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
  mpfr_pow_si(r.get(), root.get(), twice_e, MPFR_RNDN);
  return r;
}

}  // namespace abelcs
