#include "momlat/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "momlat/operators.hpp"

namespace momlat {

namespace {

constexpr complex kI{0.0, 1.0};

}  // namespace

AlphaValue alpha(double x, double spacing) {
  if (!(spacing > 0.0)) {
    throw std::domain_error("spacing a must be positive");
  }
  const double ax = spacing * x;
  if (!(std::abs(ax) <= 1.0)) {
    throw std::domain_error("eigenvalue outside lattice band");
  }
  return {x, spacing, complex(-std::sqrt(1.0 - ax * ax), ax)};
}

std::string_view to_string(EigenMethod method) {
  return method == EigenMethod::recurrence ? "recurrence" : "closed_form";
}

EigenResult eigenvector_recurrence(const MomentumLattice& lattice, double x, complex phi0) {
  alpha(x, lattice.spacing());  // band check
  const complex step = 2.0 * kI * lattice.spacing() * x;
  GridFunction phi(lattice);
  complex previous = 0.0;  // phi(p_{-1})
  complex current = phi0;
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    phi[j] = current;
    const complex next = previous + step * current;
    previous = current;
    current = next;
  }
  return {lattice, x, std::move(phi), phi0, EigenMethod::recurrence};
}

EigenResult eigenvector_closed_form(const MomentumLattice& lattice, double x, complex phi0) {
  const double ax = lattice.spacing() * x;
  if (!(std::abs(ax) < 1.0)) {
    throw std::domain_error(std::abs(ax) == 1.0 ? "closed form degenerate: alpha + conj(alpha) = 0"
                                                : "eigenvalue outside lattice band");
  }
  const complex al = alpha(x, lattice.spacing()).alpha;
  const complex mirrored = -std::conj(al);
  const double denominator = 2.0 * al.real();
  GridFunction phi(lattice);
  complex power = al;             // alpha^{j+1}
  complex mirrored_power = mirrored;  // (-conj(alpha))^{j+1}
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    phi[j] = phi0 * (power - mirrored_power) / denominator;
    power *= al;
    mirrored_power *= mirrored;
  }
  return {lattice, x, std::move(phi), phi0, EigenMethod::closed_form};
}

double normalization_direct(const EigenResult& result) {
  const double norm = inner_product(result.phi, result.phi).real();
  if (!(norm > 0.0)) {
    throw std::domain_error("cannot normalize the zero vector");
  }
  return 1.0 / std::sqrt(norm);
}

EigenResult normalized(const EigenResult& result) {
  const double s = normalization_direct(result);
  EigenResult out = result;
  out.phi *= s;
  out.phi0 *= s;
  return out;
}

complex normalization_closed_form_squared(double x, double spacing, int n) {
  if (n < 0) {
    throw std::domain_error("N must be non-negative");
  }
  if (!(std::abs(spacing * x) < 1.0)) {
    throw std::domain_error("eigenvalue outside lattice band");
  }
  const complex al = alpha(x, spacing).alpha;
  const complex al2 = al * al;
  const complex bracket =
      2.0 * n + 1.0 + (std::pow(-al2, n + 1) - std::pow(-1.0 / al2, n)) / (al2 + 1.0);
  if (std::abs(bracket) < 1e-300) {
    throw std::domain_error("normalization bracket vanishes");
  }
  const complex sum = al + std::conj(al);
  return sum * sum / (spacing * bracket);
}

double normalization_closed_form(double x, double spacing, int n) {
  return std::sqrt(std::abs(normalization_closed_form_squared(x, spacing, n)));
}

double normalization_partial_sum(double x, double spacing, std::size_t count) {
  if (count == 0) {
    throw std::domain_error("empty partial sum");
  }
  const auto result = eigenvector_closed_form(MomentumLattice(0.0, spacing, count), x, 1.0);
  return normalization_direct(result);
}

std::vector<double> truncated_spectrum(const MomentumLattice& lattice) {
  const auto x = build_operator(lattice, OperatorName::X);
  const std::size_t n = x.size();
  std::vector<double> diagonal(n);
  std::vector<double> off(n > 0 ? n - 1 : 0);
  for (std::size_t j = 0; j < n; ++j) {
    diagonal[j] = x(j, j).real();
  }
  // A diagonal phase similarity maps the Hermitian tridiagonal onto a real
  // symmetric one with off-diagonal |X(j+1, j)|.
  for (std::size_t j = 0; j + 1 < n; ++j) {
    off[j] = std::abs(x(j + 1, j));
  }
  return symmetric_tridiagonal_eigenvalues(std::move(diagonal), std::move(off));
}

std::vector<double> symmetric_tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> off_diagonal) {
  const std::size_t n = d.size();
  if (n == 0) {
    return {};
  }
  if (off_diagonal.size() + 1 != n) {
    throw std::invalid_argument("tridiagonal: off-diagonal must have n-1 entries");
  }
  std::vector<double> e(n, 0.0);
  std::copy(off_diagonal.begin(), off_diagonal.end(), e.begin());

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    scale = std::max(scale, std::abs(d[k]) + std::abs(e[k]) + (k > 0 ? std::abs(e[k - 1]) : 0.0));
  }
  // Deflate relative to the neighbouring diagonal, or absolutely when both are ~0.
  const double floor = eps * scale;
  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor) {
          break;
        }
      }
      if (m == l) {
        break;
      }
      if (++iterations > 64) {
        throw std::runtime_error("tridiagonal QL failed to converge");
      }
      // Wilkinson-style shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) {
        continue;
      }
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace momlat
