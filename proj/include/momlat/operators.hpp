#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "momlat/lattice.hpp"

namespace momlat {

enum class OperatorName { A, Abar, D, Dbar, P, X, Q, H, I };

/// Accepts the names used in expressions: A, Abar, D, Dbar, P, X, Q, H, I.
OperatorName parse_operator_name(std::string_view name);
std::string_view to_string(OperatorName name);

/// Dense square matrix on a truncated lattice. Entries outside the band
/// |row - col| <= shift_radius are never written, and products only visit
/// the band, so the radius is a structural invariant rather than a hint.
class OperatorMatrix {
 public:
  OperatorMatrix(MomentumLattice lattice, std::size_t shift_radius);

  static OperatorMatrix identity(const MomentumLattice& lattice);

  const MomentumLattice& lattice() const { return lattice_; }
  std::size_t size() const { return n_; }
  std::size_t shift_radius() const { return radius_; }

  complex operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  /// Throws std::out_of_range when (row, col) lies outside the band.
  void set(std::size_t row, std::size_t col, complex value);

  /// Exhaustive check that every entry outside the band is zero.
  bool band_holds() const;

  OperatorMatrix adjoint() const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(complex scale);

  friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
  friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
  friend OperatorMatrix operator*(complex c, OperatorMatrix m) { return m *= c; }
  friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

  /// Largest |entry| over all rows and columns.
  double max_abs() const;

 private:
  void widen_to(std::size_t radius);

  MomentumLattice lattice_;
  std::size_t n_;
  std::size_t radius_;
  std::vector<complex> entries_;
};

OperatorMatrix build_operator(const MomentumLattice& lattice, OperatorName name);

enum class BracketKind { commutator, anticommutator };

/// M1*M2 -/+ M2*M1.
OperatorMatrix bracket(BracketKind kind, const OperatorMatrix& m1, const OperatorMatrix& m2);
inline OperatorMatrix commutator(const OperatorMatrix& m1, const OperatorMatrix& m2) {
  return bracket(BracketKind::commutator, m1, m2);
}
inline OperatorMatrix anticommutator(const OperatorMatrix& m1, const OperatorMatrix& m2) {
  return bracket(BracketKind::anticommutator, m1, m2);
}

GridFunction apply(const OperatorMatrix& m, const GridFunction& f);

/// max |M(j,k)| over rows margin <= j < n - margin. Requires 2*margin <= n
/// (an empty row range yields 0).
double interior_residual(const OperatorMatrix& m, std::size_t margin);

struct ResidualReport {
  std::string identity_name;
  double max_interior_residual = 0.0;
  std::size_t margin_rows = 0;
  MomentumLattice lattice;
};

/// Numeric check of every lattice identity: products of shifts, exchange
/// relations with P, [X,P], both forms of H, both written forms of each
/// Lie-Hamilton bracket, hermiticity, adjointness and the Leibniz rules.
/// Needs at least 8 points. The seed drives the random test functions.
std::vector<ResidualReport> verify_identity_suite(const MomentumLattice& lattice, std::uint64_t seed = 20241019);

struct Window {
  double lo = -8.0;
  double hi = 8.0;
};

struct ConvergenceRow {
  double spacing = 0.0;
  double residual = 0.0;
  double log_spacing = 0.0;
  double log_residual = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log r against log a (NaN when any r is zero).
  double slope = 0.0;
};

/// r(a) = max interior |(([X,P] + iI) f)(p_j)| / max |f| on a lattice from
/// window.lo with spacing a, for strictly decreasing spacings (at least 3).
ConvergenceTable continuum_scan(std::span<const double> spacings, const std::function<complex(double)>& test_function,
                                Window window = {});

/// exp(-p^2/2).
complex unit_gaussian(double p);

}  // namespace momlat
