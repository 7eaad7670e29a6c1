#pragma once

#include <string_view>
#include <vector>

#include "momlat/lattice.hpp"

namespace momlat {

/// alpha = i*a*x - sqrt(1 - a^2 x^2), unimodular for |a*x| <= 1.
struct AlphaValue {
  double x = 0.0;
  double spacing = 0.0;
  complex alpha;
};

/// Throws std::domain_error("eigenvalue outside lattice band") when |a*x| > 1.
AlphaValue alpha(double x, double spacing);

enum class EigenMethod { recurrence, closed_form };
std::string_view to_string(EigenMethod method);

/// Candidate position eigenvector phi(p_j) for eigenvalue x.
struct EigenResult {
  MomentumLattice lattice;
  double x = 0.0;
  GridFunction phi;
  complex phi0;
  EigenMethod method = EigenMethod::recurrence;
};

/// phi_{j+1} = phi_{j-1} + 2i*a*x*phi_j from phi_0 = phi0 and phi_{-1} = 0.
EigenResult eigenvector_recurrence(const MomentumLattice& lattice, double x, complex phi0 = 1.0);

/// phi_j = phi0 * (alpha^{j+1} - (-conj(alpha))^{j+1}) / (alpha + conj(alpha)).
/// Requires |a*x| < 1; throws std::domain_error otherwise.
EigenResult eigenvector_closed_form(const MomentumLattice& lattice, double x, complex phi0 = 1.0);

/// Positive s with <s*phi|s*phi> = 1 under the lattice inner product.
double normalization_direct(const EigenResult& result);

/// Copy of the result scaled by normalization_direct.
EigenResult normalized(const EigenResult& result);

/// |phi_0|^2 from the closed-form normalization expression
///   (alpha + conj(alpha))^2 / (a * [2N + 1 + ((-alpha^2)^{N+1} - (-alpha^{-2})^N) / (alpha^2 + 1)])
/// evaluated literally. The value is real up to rounding; it equals the
/// direct sum over the first N lattice points (j = 0 .. N-1).
complex normalization_closed_form_squared(double x, double spacing, int n);

/// sqrt(|normalization_closed_form_squared|): the literal |phi_0|.
double normalization_closed_form(double x, double spacing, int n);

/// |phi_0| making the first `count` points of the phi0 = 1 vector unit norm,
/// i.e. 1/sqrt(a * sum_{j<count} |phi_j|^2).
double normalization_partial_sum(double x, double spacing, std::size_t count);

/// Eigenvalues of the truncated X matrix, ascending.
std::vector<double> truncated_spectrum(const MomentumLattice& lattice);

/// Eigenvalues of a real symmetric tridiagonal matrix by implicit QL, ascending.
/// `off_diagonal[k]` couples rows k and k+1 (size n-1).
std::vector<double> symmetric_tridiagonal_eigenvalues(std::vector<double> diagonal, std::vector<double> off_diagonal);

}  // namespace momlat
