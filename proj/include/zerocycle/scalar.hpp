#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <string>

#include "zerocycle/errors.hpp"

namespace zerocycle {

using cdouble = std::complex<double>;
using Rat = boost::multiprecision::cpp_rational;

/// Gaussian rational: exact complex number with rational real and imaginary
/// parts.  Used as the coefficient type in exact mode.
struct CRat {
  Rat re;
  Rat im;

  CRat() : re(0), im(0) {}
  CRat(int v) : re(v), im(0) {}  // NOLINT: implicit for literals in tests
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  static CRat from_strings(const std::string& r, const std::string& i) {
    try {
      return CRat(Rat(r), Rat(i));
    } catch (const std::exception&) {
      fail(errc::bad_input, "malformed rational literal: '" + r + "' / '" + i + "'");
    }
  }

  bool is_zero() const { return re == 0 && im == 0; }

  CRat operator-() const { return CRat(-re, -im); }
  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRat& operator-=(const CRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend CRat operator+(CRat a, const CRat& b) { return a += b; }
  friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  CRat& operator*=(const CRat& o) { return *this = *this * o; }
  friend CRat operator/(const CRat& a, const CRat& b) {
    Rat n = b.re * b.re + b.im * b.im;
    if (n == 0) fail(errc::bad_input, "division by zero Gaussian rational");
    return CRat((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
  }
  CRat& operator/=(const CRat& o) { return *this = *this / o; }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

  cdouble to_cdouble() const { return cdouble(re.convert_to<double>(), im.convert_to<double>()); }
};

/// Scalar trait layer so polynomial code can be written once for both the
/// exact (CRat) and floating (cdouble) coefficient modes.
template <class C>
struct scalar_ops;

template <>
struct scalar_ops<cdouble> {
  static constexpr bool is_exact = false;
  static bool is_zero(const cdouble& c) { return c == cdouble(0.0, 0.0); }
  static cdouble to_cdouble(const cdouble& c) { return c; }
  static cdouble from_int(long v) { return cdouble(double(v), 0.0); }
  static double abs(const cdouble& c) { return std::abs(c); }
};

template <>
struct scalar_ops<CRat> {
  static constexpr bool is_exact = true;
  static bool is_zero(const CRat& c) { return c.is_zero(); }
  static cdouble to_cdouble(const CRat& c) { return c.to_cdouble(); }
  static CRat from_int(long v) { return CRat(Rat(v), Rat(0)); }
  static double abs(const CRat& c) { return std::abs(c.to_cdouble()); }
};

}  // namespace zerocycle
