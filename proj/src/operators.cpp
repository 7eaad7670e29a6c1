#include "momlat/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace momlat {

namespace {

constexpr complex kI{0.0, 1.0};

std::size_t band_lo(std::size_t row, std::size_t radius) { return row > radius ? row - radius : 0; }
std::size_t band_hi(std::size_t row, std::size_t radius, std::size_t n) { return std::min(n - 1, row + radius); }

void require_same_lattice(const MomentumLattice& l1, const MomentumLattice& l2) {
  if (!(l1 == l2)) {
    throw std::domain_error("operators live on different lattices");
  }
}

}  // namespace

OperatorName parse_operator_name(std::string_view name) {
  if (name == "A") return OperatorName::A;
  if (name == "Abar") return OperatorName::Abar;
  if (name == "D") return OperatorName::D;
  if (name == "Dbar") return OperatorName::Dbar;
  if (name == "P") return OperatorName::P;
  if (name == "X") return OperatorName::X;
  if (name == "Q") return OperatorName::Q;
  if (name == "H") return OperatorName::H;
  if (name == "I") return OperatorName::I;
  throw std::domain_error("unknown operator name '" + std::string(name) + "'");
}

std::string_view to_string(OperatorName name) {
  switch (name) {
    case OperatorName::A: return "A";
    case OperatorName::Abar: return "Abar";
    case OperatorName::D: return "D";
    case OperatorName::Dbar: return "Dbar";
    case OperatorName::P: return "P";
    case OperatorName::X: return "X";
    case OperatorName::Q: return "Q";
    case OperatorName::H: return "H";
    case OperatorName::I: return "I";
  }
  return "?";
}

OperatorMatrix::OperatorMatrix(MomentumLattice lattice, std::size_t shift_radius)
    : lattice_(lattice),
      n_(lattice.size()),
      radius_(std::min(shift_radius, lattice.size() - 1)),
      entries_(n_ * n_) {}

OperatorMatrix OperatorMatrix::identity(const MomentumLattice& lattice) {
  OperatorMatrix m(lattice, 0);
  for (std::size_t j = 0; j < m.n_; ++j) {
    m.entries_[j * m.n_ + j] = 1.0;
  }
  return m;
}

void OperatorMatrix::set(std::size_t row, std::size_t col, complex value) {
  if (row >= n_ || col >= n_) {
    throw std::out_of_range("operator matrix: index out of range");
  }
  const std::size_t distance = row > col ? row - col : col - row;
  if (distance > radius_) {
    throw std::out_of_range("operator matrix: entry outside shift radius");
  }
  entries_[row * n_ + col] = value;
}

bool OperatorMatrix::band_holds() const {
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t distance = j > k ? j - k : k - j;
      if (distance > radius_ && entries_[j * n_ + k] != complex{}) {
        return false;
      }
    }
  }
  return true;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix out(lattice_, radius_);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = band_lo(j, radius_); k <= band_hi(j, radius_, n_); ++k) {
      out.entries_[k * n_ + j] = std::conj(entries_[j * n_ + k]);
    }
  }
  return out;
}

void OperatorMatrix::widen_to(std::size_t radius) { radius_ = std::max(radius_, std::min(radius, n_ - 1)); }

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  require_same_lattice(lattice_, other.lattice_);
  widen_to(other.radius_);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = band_lo(j, other.radius_); k <= band_hi(j, other.radius_, n_); ++k) {
      entries_[j * n_ + k] += other.entries_[j * n_ + k];
    }
  }
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  require_same_lattice(lattice_, other.lattice_);
  widen_to(other.radius_);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = band_lo(j, other.radius_); k <= band_hi(j, other.radius_, n_); ++k) {
      entries_[j * n_ + k] -= other.entries_[j * n_ + k];
    }
  }
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(complex scale) {
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = band_lo(j, radius_); k <= band_hi(j, radius_, n_); ++k) {
      entries_[j * n_ + k] *= scale;
    }
  }
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  require_same_lattice(lhs.lattice_, rhs.lattice_);
  const std::size_t n = lhs.n_;
  OperatorMatrix out(lhs.lattice_, lhs.radius_ + rhs.radius_);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = band_lo(j, lhs.radius_); l <= band_hi(j, lhs.radius_, n); ++l) {
      const complex left = lhs.entries_[j * n + l];
      if (left == complex{}) {
        continue;
      }
      for (std::size_t k = band_lo(l, rhs.radius_); k <= band_hi(l, rhs.radius_, n); ++k) {
        out.entries_[j * n + k] += left * rhs.entries_[l * n + k];
      }
    }
  }
  return out;
}

double OperatorMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : entries_) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

OperatorMatrix build_operator(const MomentumLattice& lattice, OperatorName name) {
  const std::size_t n = lattice.size();
  const double inv_a = 1.0 / lattice.spacing();
  switch (name) {
    case OperatorName::I:
      return OperatorMatrix::identity(lattice);
    case OperatorName::P: {
      OperatorMatrix m(lattice, 0);
      for (std::size_t j = 0; j < n; ++j) {
        m.set(j, j, lattice.momentum_at(j));
      }
      return m;
    }
    case OperatorName::A: {
      // (Af)(p_j) = f(p_{j+1}); the last row has nothing to read.
      OperatorMatrix m(lattice, 1);
      for (std::size_t j = 0; j + 1 < n; ++j) {
        m.set(j, j + 1, 1.0);
      }
      return m;
    }
    case OperatorName::Abar: {
      OperatorMatrix m(lattice, 1);
      for (std::size_t j = 1; j < n; ++j) {
        m.set(j, j - 1, 1.0);
      }
      return m;
    }
    case OperatorName::D:
      return inv_a * (build_operator(lattice, OperatorName::A) - OperatorMatrix::identity(lattice));
    case OperatorName::Dbar:
      return inv_a * (OperatorMatrix::identity(lattice) - build_operator(lattice, OperatorName::Abar));
    case OperatorName::X:
      // 1/(2i) = -i/2
      return complex(0.0, -0.5) * (build_operator(lattice, OperatorName::D) + build_operator(lattice, OperatorName::Dbar));
    case OperatorName::Q:
      return build_operator(lattice, OperatorName::Dbar) - build_operator(lattice, OperatorName::D);
    case OperatorName::H: {
      const auto x = build_operator(lattice, OperatorName::X);
      const auto p = build_operator(lattice, OperatorName::P);
      return x * x + p * p;
    }
  }
  throw std::domain_error("unknown operator");
}

OperatorMatrix bracket(BracketKind kind, const OperatorMatrix& m1, const OperatorMatrix& m2) {
  require_same_lattice(m1.lattice(), m2.lattice());
  if (kind == BracketKind::commutator) {
    return m1 * m2 - m2 * m1;
  }
  return m1 * m2 + m2 * m1;
}

GridFunction apply(const OperatorMatrix& m, const GridFunction& f) {
  require_same_lattice(m.lattice(), f.lattice());
  const std::size_t n = m.size();
  GridFunction out(f.lattice());
  for (std::size_t j = 0; j < n; ++j) {
    complex sum{};
    for (std::size_t k = band_lo(j, m.shift_radius()); k <= band_hi(j, m.shift_radius(), n); ++k) {
      sum += m(j, k) * f[k];
    }
    out[j] = sum;
  }
  return out;
}

double interior_residual(const OperatorMatrix& m, std::size_t margin) {
  const std::size_t n = m.size();
  if (2 * margin > n) {
    throw std::domain_error("interior residual: margin " + std::to_string(margin) + " too large for " +
                            std::to_string(n) + " points");
  }
  double worst = 0.0;
  for (std::size_t j = margin; j < n - margin; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      worst = std::max(worst, std::abs(m(j, k)));
    }
  }
  return worst;
}

namespace {

GridFunction random_function(const MomentumLattice& lattice, std::mt19937_64& rng, bool pin_endpoints) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GridFunction f(lattice);
  for (std::size_t j = 0; j < f.size(); ++j) {
    f[j] = complex(dist(rng), dist(rng));
  }
  if (pin_endpoints) {
    f[0] = 0.0;
    f[f.size() - 1] = 0.0;
  }
  return f;
}

// Worst interior deviation of a pointwise Leibniz expansion; shift = +1 for
// the D-rule (f evaluated at p+a), -1 for the Dbar-rule (f at p-a).
double leibniz_residual(const OperatorMatrix& derivative, int shift, const GridFunction& f, const GridFunction& g) {
  const auto lhs = apply(derivative, pointwise(f, g));
  const auto df = apply(derivative, f);
  const auto dg = apply(derivative, g);
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < f.size(); ++j) {
    const complex shifted_f = f[static_cast<std::size_t>(static_cast<long long>(j) + shift)];
    const complex rhs = df[j] * g[j] + shifted_f * dg[j];
    worst = std::max(worst, std::abs(lhs[j] - rhs));
  }
  return worst;
}

}  // namespace

std::vector<ResidualReport> verify_identity_suite(const MomentumLattice& lattice, std::uint64_t seed) {
  if (lattice.size() < 8) {
    throw std::domain_error("identity suite needs at least 8 lattice points");
  }
  const double a = lattice.spacing();
  const auto id = OperatorMatrix::identity(lattice);
  const auto A = build_operator(lattice, OperatorName::A);
  const auto Abar = build_operator(lattice, OperatorName::Abar);
  const auto D = build_operator(lattice, OperatorName::D);
  const auto Dbar = build_operator(lattice, OperatorName::Dbar);
  const auto P = build_operator(lattice, OperatorName::P);
  const auto X = build_operator(lattice, OperatorName::X);
  const auto Q = build_operator(lattice, OperatorName::Q);
  const auto H = build_operator(lattice, OperatorName::H);

  std::vector<ResidualReport> reports;
  auto record = [&](std::string name, const OperatorMatrix& residual, std::size_t margin) {
    reports.push_back({std::move(name), interior_residual(residual, margin), margin, lattice});
  };

  record("A*Abar = I", A * Abar - id, 1);
  record("Abar*A = I", Abar * A - id, 1);
  record("[A,P] = a*A", commutator(A, P) - a * A, 1);
  record("[Abar,P] = -a*Abar", commutator(Abar, P) + a * Abar, 1);
  record("[D,P] = A", commutator(D, P) - A, 1);
  record("[Dbar,P] = Abar", commutator(Dbar, P) - Abar, 1);
  record("[X,P] = -i + (i*a/2)*Q", commutator(X, P) + kI * id - (kI * a / 2.0) * Q, 1);

  const auto shift_difference = A - Abar;
  record("X^2 + P^2 = -(A-Abar)^2/(4*a^2) + P^2",
         H - ((-1.0 / (4.0 * a * a)) * (shift_difference * shift_difference) + P * P), 2);

  const auto xh = commutator(X, H);
  const auto ph = commutator(P, H);
  record("[X,H] = -2i*P + (i*a/2)*{Q,P}", xh - (-2.0 * kI * P + (kI * a / 2.0) * anticommutator(Q, P)), 3);
  record("[X,H] = -2i*P + i*a*P*Q + a^2*X", xh - (-2.0 * kI * P + (kI * a) * (P * Q) + (a * a) * X), 3);
  record("[P,H] = 2i*X - (i*a/2)*{Q,X}", ph - (2.0 * kI * X - (kI * a / 2.0) * anticommutator(Q, X)), 3);
  record("[P,H] = 2i*X - i*a*X*Q", ph - (2.0 * kI * X - (kI * a) * (X * Q)), 3);
  record("(i*a/2)*{Q,P} = i*a*P*Q + a^2*X",
         (kI * a / 2.0) * anticommutator(Q, P) - (kI * a) * (P * Q) - (a * a) * X, 1);
  record("[D,Dbar] = 0", commutator(D, Dbar), 2);

  record("P = P^dagger", P - P.adjoint(), 0);
  record("X = X^dagger", X - X.adjoint(), 0);
  record("Abar = A^dagger", Abar - A.adjoint(), 0);

  std::mt19937_64 rng(seed);
  double adjoint_worst = 0.0;
  double d_rule_worst = 0.0;
  double dbar_rule_worst = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const auto f = random_function(lattice, rng, true);
    const auto g = random_function(lattice, rng, true);
    adjoint_worst = std::max(adjoint_worst, std::abs(inner_product(f, apply(A, g)) - inner_product(apply(Abar, f), g)));
    const auto u = random_function(lattice, rng, false);
    const auto v = random_function(lattice, rng, false);
    d_rule_worst = std::max(d_rule_worst, leibniz_residual(D, +1, u, v));
    dbar_rule_worst = std::max(dbar_rule_worst, leibniz_residual(Dbar, -1, u, v));
  }
  reports.push_back({"<f|A g> = <Abar f|g>", adjoint_worst, 1, lattice});
  reports.push_back({"D-rule: D(fg) = (Df)g + f(p+a)(Dg)", d_rule_worst, 1, lattice});
  reports.push_back({"Dbar-rule: Dbar(fg) = (Dbar f)g + f(p-a)(Dbar g)", dbar_rule_worst, 1, lattice});
  return reports;
}

complex unit_gaussian(double p) { return std::exp(-0.5 * p * p); }

ConvergenceTable continuum_scan(std::span<const double> spacings, const std::function<complex(double)>& test_function,
                                Window window) {
  if (spacings.size() < 3) {
    throw std::domain_error("continuum scan needs at least 3 spacings");
  }
  if (!(window.hi > window.lo)) {
    throw std::domain_error("continuum scan: empty window");
  }
  for (std::size_t k = 0; k < spacings.size(); ++k) {
    if (!(spacings[k] > 0.0)) {
      throw std::domain_error("continuum scan: spacings must be positive");
    }
    if (k > 0 && !(spacings[k] < spacings[k - 1])) {
      throw std::domain_error("continuum scan: spacings must be strictly decreasing");
    }
  }

  ConvergenceTable table;
  bool any_zero = false;
  for (const double a : spacings) {
    const auto count = static_cast<std::size_t>(std::floor((window.hi - window.lo) / a + 1e-9)) + 1;
    if (count < 3) {
      throw std::domain_error("continuum scan: window holds fewer than 3 points at a = " + std::to_string(a));
    }
    const MomentumLattice lattice(window.lo, a, count);
    const auto f = GridFunction::sample(lattice, test_function);
    const auto defect = commutator(build_operator(lattice, OperatorName::X), build_operator(lattice, OperatorName::P)) +
                        complex(0.0, 1.0) * OperatorMatrix::identity(lattice);
    const auto image = apply(defect, f);
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < count; ++j) {
      worst = std::max(worst, std::abs(image[j]));
    }
    const double scale = f.max_abs();
    const double r = scale > 0.0 ? worst / scale : 0.0;
    any_zero = any_zero || r == 0.0;
    table.rows.push_back({a, r, std::log(a), r > 0.0 ? std::log(r) : -std::numeric_limits<double>::infinity()});
  }

  if (any_zero) {
    table.slope = std::numeric_limits<double>::quiet_NaN();
    return table;
  }
  const double m = static_cast<double>(table.rows.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& row : table.rows) {
    sx += row.log_spacing;
    sy += row.log_residual;
    sxx += row.log_spacing * row.log_spacing;
    sxy += row.log_spacing * row.log_residual;
  }
  table.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return table;
}

}  // namespace momlat
