#include "momlat/coefficient.hpp"

#include <cmath>
#include <stdexcept>

namespace momlat::algebra {

namespace {

std::string rational_text(const Rational& r) {
  // cpp_rational prints "n/d", or just "n" for integers.
  return r.str();
}

}  // namespace

GaussianRational GaussianRational::inverse() const {
  const Rational norm = re * re + im * im;
  if (norm == 0) {
    throw std::domain_error("division by zero coefficient");
  }
  return {re / norm, -im / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::complex<double> GaussianRational::to_complex() const {
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string GaussianRational::to_string() const {
  if (im == 0) {
    return rational_text(re);
  }
  std::string imag;
  if (im == 1) {
    imag = "i";
  } else if (im == -1) {
    imag = "-i";
  } else {
    imag = rational_text(im) + "*i";
  }
  if (re == 0) {
    return imag;
  }
  return "(" + rational_text(re) + (im > 0 ? "+" : "") + imag + ")";
}

Coefficient::Coefficient(GaussianRational c) { add_term(0, c); }

Coefficient Coefficient::monomial(GaussianRational c, int power) {
  Coefficient out;
  out.add_term(power, c);
  return out;
}

GaussianRational Coefficient::at(int power) const {
  const auto it = terms_.find(power);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

void Coefficient::add_term(int power, const GaussianRational& c) {
  if (c.is_zero()) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(power, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
}

Coefficient Coefficient::inverse() const {
  if (!is_monomial()) {
    throw std::domain_error(is_zero() ? "division by zero" : "division by a non-monomial in a is not supported");
  }
  const auto& [power, c] = *terms_.begin();
  return monomial(c.inverse(), -power);
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  for (const auto& [power, c] : o.terms_) {
    add_term(power, c);
  }
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
  for (const auto& [power, c] : o.terms_) {
    add_term(power, -c);
  }
  return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& o) {
  Coefficient product;
  for (const auto& [p1, c1] : terms_) {
    for (const auto& [p2, c2] : o.terms_) {
      product.add_term(p1 + p2, c1 * c2);
    }
  }
  *this = std::move(product);
  return *this;
}

Coefficient operator-(const Coefficient& c) {
  Coefficient out;
  for (const auto& [power, g] : c.terms_) {
    out.terms_.emplace(power, -g);
  }
  return out;
}

std::complex<double> Coefficient::evaluate(double spacing) const {
  std::complex<double> sum{};
  for (const auto& [power, c] : terms_) {
    sum += c.to_complex() * std::pow(spacing, power);
  }
  return sum;
}

std::string Coefficient::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::string out;
  // Highest power of a first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [power, c] = *it;
    std::string factor;
    if (power == 1) {
      factor = "a";
    } else if (power != 0) {
      factor = "a^" + std::to_string(power);
    }
    std::string term;
    if (factor.empty()) {
      term = c.to_string();
    } else if (c == GaussianRational(1)) {
      term = factor;
    } else if (c == GaussianRational(-1)) {
      term = "-" + factor;
    } else {
      term = c.to_string() + "*" + factor;
    }
    if (!out.empty() && term.front() != '-') {
      out += "+";
    }
    out += term;
  }
  return out;
}

}  // namespace momlat::algebra
