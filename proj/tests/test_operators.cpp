#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "momlat/operators.hpp"

using namespace momlat;

namespace {

constexpr OperatorName kAllNames[] = {OperatorName::A, OperatorName::Abar, OperatorName::D,
                                      OperatorName::Dbar, OperatorName::P,    OperatorName::X,
                                      OperatorName::Q, OperatorName::H,    OperatorName::I};

GridFunction random_grid(const MomentumLattice& lattice, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GridFunction f(lattice);
  for (std::size_t j = 0; j < f.size(); ++j) {
    f[j] = complex(dist(rng), dist(rng));
  }
  return f;
}

bool same_entries(const OperatorMatrix& m, std::initializer_list<std::initializer_list<complex>> rows) {
  std::size_t j = 0;
  for (const auto& row : rows) {
    std::size_t k = 0;
    for (const auto& v : row) {
      if (m(j, k) != v) return false;
      ++k;
    }
    ++j;
  }
  return true;
}

}  // namespace

TEST_CASE("build_operator matrices") {
  const MomentumLattice lattice(0.0, 1.0, 3);
  CHECK(same_entries(build_operator(lattice, OperatorName::A), {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK(same_entries(build_operator(lattice, OperatorName::Abar), {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  CHECK(same_entries(build_operator(MomentumLattice(0.0, 0.5, 2), OperatorName::P), {{0, 0}, {0, 0.5}}));
  CHECK(same_entries(build_operator(MomentumLattice(4.0, 2.0, 1), OperatorName::X), {{0}}));
  CHECK(same_entries(build_operator(MomentumLattice(0.0, 0.5, 2), OperatorName::D), {{-2, 2}, {0, -2}}));
  CHECK(same_entries(build_operator(MomentumLattice(0.0, 0.5, 2), OperatorName::Dbar), {{2, 0}, {-2, 2}}));
  CHECK(same_entries(build_operator(MomentumLattice(0.0, 0.5, 2), OperatorName::X),
                     {{0, complex(0, -1)}, {complex(0, 1), 0}}));
  CHECK(same_entries(build_operator(MomentumLattice(0.0, 0.5, 3), OperatorName::Q),
                     {{4, -2, 0}, {-2, 4, -2}, {0, -2, 4}}));
  CHECK_THROWS_AS(parse_operator_name("Z"), std::domain_error);
}

TEST_CASE("shift radius per operator and band invariant") {
  const MomentumLattice lattice(-1.0, 0.3, 12);
  for (const auto name : kAllNames) {
    const auto m = build_operator(lattice, name);
    CAPTURE(to_string(name));
    CHECK(m.band_holds());
    const std::size_t expected =
        name == OperatorName::P || name == OperatorName::I ? 0 : (name == OperatorName::H ? 2 : 1);
    CHECK(m.shift_radius() == expected);
  }
  const auto x = build_operator(lattice, OperatorName::X);
  const auto h = build_operator(lattice, OperatorName::H);
  const auto xh = commutator(x, h);
  CHECK(xh.shift_radius() == 3);
  CHECK(xh.band_holds());
  // capped by the lattice size
  const MomentumLattice tiny(0.0, 1.0, 2);
  CHECK(build_operator(tiny, OperatorName::H).shift_radius() == 1);

  OperatorMatrix band(lattice, 1);
  CHECK_THROWS_AS(band.set(0, 2, 1.0), std::out_of_range);
}

TEST_CASE("bracket examples") {
  const MomentumLattice lattice(0.5, 0.25, 8);
  const auto P = build_operator(lattice, OperatorName::P);
  const auto A = build_operator(lattice, OperatorName::A);
  const auto I = OperatorMatrix::identity(lattice);
  CHECK(commutator(P, P).max_abs() == 0.0);
  CHECK(interior_residual(commutator(A, P) - lattice.spacing() * A, 1) == 0.0);
  const auto Q = build_operator(lattice, OperatorName::Q);
  CHECK((anticommutator(I, Q) - 2.0 * Q).max_abs() == 0.0);
  CHECK(commutator(A, P).shift_radius() == 1);
  CHECK_THROWS_AS(commutator(P, build_operator(MomentumLattice(0.5, 0.5, 8), OperatorName::P)), std::domain_error);
}

TEST_CASE("apply") {
  const MomentumLattice lattice(0.0, 1.0, 3);
  const GridFunction f(lattice, {1.0, 2.0, 3.0});
  const auto shifted = apply(build_operator(lattice, OperatorName::A), f);
  CHECK(shifted.values() == std::vector<complex>{2.0, 3.0, 0.0});
  const auto back = apply(build_operator(lattice, OperatorName::Abar), f);
  CHECK(back.values() == std::vector<complex>{0.0, 1.0, 2.0});
  CHECK(apply(OperatorMatrix::identity(lattice), f).values() == f.values());
  CHECK_THROWS_AS(apply(OperatorMatrix::identity(MomentumLattice(0.0, 1.0, 4)), f), std::domain_error);
}

TEST_CASE("interior_residual") {
  const MomentumLattice lattice(0.0, 1.0, 8);
  const auto A = build_operator(lattice, OperatorName::A);
  const auto Abar = build_operator(lattice, OperatorName::Abar);
  const auto P = build_operator(lattice, OperatorName::P);
  const auto I = OperatorMatrix::identity(lattice);
  CHECK(interior_residual(commutator(A, P) - lattice.spacing() * A, 1) == 0.0);
  CHECK(interior_residual(A * Abar - I, 1) == 0.0);
  CHECK(interior_residual(A * Abar - I, 0) == 1.0);
  CHECK(interior_residual(OperatorMatrix(lattice, 0), 0) == 0.0);
  CHECK(interior_residual(I, 4) == 0.0);
  CHECK_THROWS_AS(interior_residual(I, 5), std::domain_error);
}

TEST_CASE("exact adjointness and hermiticity") {
  for (const double a : {0.1, 0.37, 1.0, 3.14159}) {
    const MomentumLattice lattice(-2.0, a, 33);
    const auto A = build_operator(lattice, OperatorName::A);
    const auto Abar = build_operator(lattice, OperatorName::Abar);
    const auto P = build_operator(lattice, OperatorName::P);
    const auto X = build_operator(lattice, OperatorName::X);
    CHECK((Abar - A.adjoint()).max_abs() == 0.0);
    CHECK((P - P.adjoint()).max_abs() == 0.0);
    CHECK((X - X.adjoint()).max_abs() == 0.0);
  }
}

TEST_CASE("Leibniz rules on random functions") {
  std::mt19937_64 rng(3);
  for (const double a : {0.05, 0.5, 2.0}) {
    const MomentumLattice lattice(1.0, a, 40);
    const auto D = build_operator(lattice, OperatorName::D);
    const auto Dbar = build_operator(lattice, OperatorName::Dbar);
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_grid(lattice, rng);
      const auto g = random_grid(lattice, rng);
      const auto d_fg = apply(D, pointwise(f, g));
      const auto dbar_fg = apply(Dbar, pointwise(f, g));
      const auto df = apply(D, f);
      const auto dg = apply(D, g);
      const auto dbf = apply(Dbar, f);
      const auto dbg = apply(Dbar, g);
      for (std::size_t j = 1; j + 1 < lattice.size(); ++j) {
        CHECK(std::abs(d_fg[j] - df[j] * g[j] - f[j + 1] * dg[j]) < 1e-12 / a);
        CHECK(std::abs(dbar_fg[j] - dbf[j] * g[j] - f[j - 1] * dbg[j]) < 1e-12 / a);
      }
    }
  }
}

TEST_CASE("identity suite on the reference lattices") {
  const auto reports = verify_identity_suite(MomentumLattice(0.0, 0.1, 64));
  CHECK(reports.size() == 20);
  for (const auto& r : reports) {
    CAPTURE(r.identity_name);
    CHECK(r.max_interior_residual >= 0.0);
    CHECK(r.max_interior_residual < 1e-12);
  }
  for (const auto& r : verify_identity_suite(MomentumLattice(3.141592653589793, 3.141592653589793, 16))) {
    CAPTURE(r.identity_name);
    CHECK(r.max_interior_residual < 1e-10);
  }
  CHECK_THROWS_AS(verify_identity_suite(MomentumLattice(0.0, 0.1, 7)), std::domain_error);
}

TEST_CASE("identity suite margins follow the total shift radius") {
  const auto reports = verify_identity_suite(MomentumLattice(0.0, 0.5, 16));
  for (const auto& r : reports) {
    CAPTURE(r.identity_name);
    if (r.identity_name.rfind("[X,H]", 0) == 0 || r.identity_name.rfind("[P,H]", 0) == 0) {
      CHECK(r.margin_rows == 3);
    } else if (r.identity_name.find("^dagger") != std::string::npos) {
      CHECK(r.margin_rows == 0);
      CHECK(r.max_interior_residual == 0.0);
    }
  }
}

TEST_CASE("identity suite on random lattices with |p| <= 10") {
  // Residuals are rounding only; they scale with the largest entries, which
  // for small a are the 1/a^2 terms of H. The 1e-12 band is pinned for
  // a >= 0.05 (|p| <= 10 keeps n <= 400 there).
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> spacing_dist(0.05, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const double a = spacing_dist(rng);
    const auto n = static_cast<std::size_t>(std::floor(20.0 / a)) + 1;
    const MomentumLattice lattice(-10.0, a, n);
    for (const auto& r : verify_identity_suite(lattice, trial)) {
      CAPTURE(r.identity_name);
      CAPTURE(a);
      CHECK(r.max_interior_residual < 1e-12);
    }
  }
}

TEST_CASE("continuum scan converges at second order") {
  const double spacings[] = {0.1, 0.05, 0.025, 0.0125};
  const auto table = continuum_scan(spacings, unit_gaussian, {-8.0, 8.0});
  REQUIRE(table.rows.size() == 4);
  CHECK(table.slope == doctest::Approx(2.0).epsilon(0.05));
  const double ratio = table.rows[0].residual / table.rows[1].residual;
  CHECK(ratio >= 3.8);
  CHECK(ratio <= 4.2);
  // ([X,P] + i) f = (i a / 2) Q f ~ -(i a^2 / 2) f''; max |f''| = 1 for the unit Gaussian.
  for (const auto& row : table.rows) {
    CHECK(row.residual == doctest::Approx(row.spacing * row.spacing / 2.0).epsilon(0.01));
    CHECK(row.log_spacing == doctest::Approx(std::log(row.spacing)));
  }
}

TEST_CASE("continuum scan of a constant is rounding only") {
  const double spacings[] = {0.2, 0.1, 0.05};
  const auto table = continuum_scan(spacings, [](double) { return complex(1.0); }, {-2.0, 2.0});
  for (const auto& row : table.rows) {
    CHECK(row.residual < 1e-12);
  }
}

TEST_CASE("continuum scan validation") {
  const double two[] = {0.1, 0.05};
  CHECK_THROWS_AS(continuum_scan(two, unit_gaussian), std::domain_error);
  const double increasing[] = {0.05, 0.1, 0.2};
  CHECK_THROWS_AS(continuum_scan(increasing, unit_gaussian), std::domain_error);
  const double negative[] = {0.1, 0.0, -0.1};
  CHECK_THROWS_AS(continuum_scan(negative, unit_gaussian), std::domain_error);
}

TEST_CASE("identity suite down to n ~ 1024 with a scale-relative bound") {
  // Below a ~ 0.04 the absolute rounding of [X,H] (entries ~ |p| / a^3)
  // exceeds 1e-12; relative to |X| * |H| it stays at machine precision.
  for (const double a : {0.03, 0.02}) {
    const auto n = static_cast<std::size_t>(std::floor(20.0 / a)) + 1;
    const MomentumLattice lattice(-10.0, a, n);
    const double scale = build_operator(lattice, OperatorName::X).max_abs() *
                         build_operator(lattice, OperatorName::H).max_abs();
    for (const auto& r : verify_identity_suite(lattice)) {
      CAPTURE(r.identity_name);
      CAPTURE(a);
      CHECK(r.max_interior_residual < 1e-14 * scale);
    }
  }
}
