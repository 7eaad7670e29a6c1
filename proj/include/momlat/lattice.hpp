#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

namespace momlat {

using complex = std::complex<double>;

/// Uniform momentum grid p_j = p0 + j*a for j = 0 .. n_points-1 (units with hbar = 1).
class MomentumLattice {
 public:
  MomentumLattice(double p0, double spacing, std::size_t n_points);

  double p0() const { return p0_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return n_points_; }

  /// Throws std::domain_error if j is outside the window.
  double momentum_at(std::size_t j) const;

  bool operator==(const MomentumLattice&) const = default;

 private:
  double p0_;
  double spacing_;
  std::size_t n_points_;
};

/// Free-function spelling of MomentumLattice::momentum_at.
double momentum_at(const MomentumLattice& lattice, std::size_t j);

/// Infinite square well of width L: p0 = a = hbar*pi/L, one point per level.
MomentumLattice square_well_lattice(double width, std::size_t n_levels, double hbar = 1.0);

/// Complex samples of a function on a lattice.
class GridFunction {
 public:
  explicit GridFunction(MomentumLattice lattice);
  GridFunction(MomentumLattice lattice, std::vector<complex> values);

  /// Samples f(p_j) at every lattice point.
  static GridFunction sample(MomentumLattice lattice, const std::function<complex(double)>& f);

  const MomentumLattice& lattice() const { return lattice_; }
  const std::vector<complex>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  complex operator[](std::size_t j) const { return values_[j]; }
  complex& operator[](std::size_t j) { return values_[j]; }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator*=(complex scale);

  /// Pointwise product.
  friend GridFunction pointwise(const GridFunction& f, const GridFunction& g);
  friend GridFunction operator+(GridFunction f, const GridFunction& g) { return f += g; }
  friend GridFunction operator*(complex c, GridFunction f) { return f *= c; }

  double max_abs() const;

 private:
  MomentumLattice lattice_;
  std::vector<complex> values_;
};

/// a * sum_j f(p_j), the q -> 1 limit of the Hahn integral.
complex a_integral(const GridFunction& f);

/// a-integral of conj(f) * g. Throws std::domain_error on lattice mismatch.
complex inner_product(const GridFunction& f, const GridFunction& g);

/// Writes the `j,p,re,im` interchange format.
void write_grid_csv(std::ostream& out, const GridFunction& f);

/// Reads the `j,p,re,im` format onto a known lattice; rows must cover the
/// lattice in order and their momenta must match it to 1e-9 relative.
GridFunction read_grid_csv(std::istream& in, const MomentumLattice& lattice);

}  // namespace momlat
