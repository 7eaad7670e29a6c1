#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <optional>
#include <string>

namespace momlat::algebra {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational real, Rational imag = 0) : re(std::move(real)), im(std::move(imag)) {}
  GaussianRational(int real) : re(real) {}

  static GaussianRational i() { return {0, 1}; }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  /// Throws std::domain_error for zero.
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational l, const GaussianRational& r) { return l += r; }
  friend GaussianRational operator-(GaussianRational l, const GaussianRational& r) { return l -= r; }
  friend GaussianRational operator*(GaussianRational l, const GaussianRational& r) { return l *= r; }
  friend GaussianRational operator-(const GaussianRational& g) { return {-g.re, -g.im}; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  std::complex<double> to_complex() const;
  std::string to_string() const;
};

/// Laurent polynomial in the spacing symbol a with Gaussian-rational
/// coefficients. Zero terms are never stored, so equality is structural.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(GaussianRational c);  // NOLINT: constants promote implicitly
  Coefficient(int c) : Coefficient(GaussianRational(c)) {}

  /// c * a^power
  static Coefficient monomial(GaussianRational c, int power);
  static Coefficient spacing() { return monomial(1, 1); }

  const std::map<int, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Coefficient of a^power (zero if absent).
  GaussianRational at(int power) const;

  /// Only monomials are invertible; anything else throws std::domain_error.
  Coefficient inverse() const;

  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  Coefficient& operator*=(const Coefficient& o);

  friend Coefficient operator+(Coefficient l, const Coefficient& r) { return l += r; }
  friend Coefficient operator-(Coefficient l, const Coefficient& r) { return l -= r; }
  friend Coefficient operator*(Coefficient l, const Coefficient& r) { return l *= r; }
  friend Coefficient operator-(const Coefficient& c);
  friend bool operator==(const Coefficient&, const Coefficient&) = default;

  std::complex<double> evaluate(double spacing) const;
  std::string to_string() const;

 private:
  void add_term(int power, const GaussianRational& c);

  std::map<int, GaussianRational> terms_;
};

}  // namespace momlat::algebra
