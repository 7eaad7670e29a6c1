#include "momlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "momlat/format.hpp"

namespace momlat {

MomentumLattice::MomentumLattice(double p0, double spacing, std::size_t n_points)
    : p0_(p0), spacing_(spacing), n_points_(n_points) {
  if (!std::isfinite(p0)) {
    throw std::domain_error("lattice: p0 must be finite");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::domain_error("lattice: spacing a must be positive");
  }
  if (n_points < 1) {
    throw std::domain_error("lattice: at least one point required");
  }
}

double MomentumLattice::momentum_at(std::size_t j) const {
  if (j >= n_points_) {
    throw std::domain_error("lattice: index " + std::to_string(j) + " out of range");
  }
  return p0_ + static_cast<double>(j) * spacing_;
}

double momentum_at(const MomentumLattice& lattice, std::size_t j) { return lattice.momentum_at(j); }

MomentumLattice square_well_lattice(double width, std::size_t n_levels, double hbar) {
  if (!(width > 0.0)) {
    throw std::domain_error("square well: width L must be positive");
  }
  if (!(hbar > 0.0)) {
    throw std::domain_error("square well: hbar must be positive");
  }
  const double quantum = hbar * std::numbers::pi / width;
  return MomentumLattice(quantum, quantum, n_levels);
}

GridFunction::GridFunction(MomentumLattice lattice) : lattice_(lattice), values_(lattice.size()) {}

GridFunction::GridFunction(MomentumLattice lattice, std::vector<complex> values)
    : lattice_(lattice), values_(std::move(values)) {
  if (values_.size() != lattice_.size()) {
    throw std::domain_error("grid function: value count does not match lattice size");
  }
}

GridFunction GridFunction::sample(MomentumLattice lattice, const std::function<complex(double)>& f) {
  GridFunction out(lattice);
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    out.values_[j] = f(lattice.momentum_at(j));
  }
  return out;
}

namespace {

void require_same_lattice(const GridFunction& f, const GridFunction& g) {
  if (!(f.lattice() == g.lattice())) {
    throw std::domain_error("grid functions live on different lattices");
  }
}

}  // namespace

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_lattice(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) {
    values_[j] += other.values_[j];
  }
  return *this;
}

GridFunction& GridFunction::operator*=(complex scale) {
  for (auto& v : values_) {
    v *= scale;
  }
  return *this;
}

GridFunction pointwise(const GridFunction& f, const GridFunction& g) {
  require_same_lattice(f, g);
  GridFunction out(f.lattice());
  for (std::size_t j = 0; j < f.size(); ++j) {
    out.values_[j] = f.values_[j] * g.values_[j];
  }
  return out;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

complex a_integral(const GridFunction& f) {
  complex sum{};
  for (const auto& v : f.values()) {
    sum += v;
  }
  return f.lattice().spacing() * sum;
}

complex inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_lattice(f, g);
  complex sum{};
  for (std::size_t j = 0; j < f.size(); ++j) {
    sum += std::conj(f[j]) * g[j];
  }
  return f.lattice().spacing() * sum;
}

void write_grid_csv(std::ostream& out, const GridFunction& f) {
  out << "j,p,re,im\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    out << j << ',' << format_real(f.lattice().momentum_at(j)) << ',' << format_real(f[j].real()) << ','
        << format_real(f[j].imag()) << '\n';
  }
}

namespace {

double parse_field(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("grid csv line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

GridFunction read_grid_csv(std::istream& in, const MomentumLattice& lattice) {
  std::string line;
  if (!std::getline(in, line) || line != "j,p,re,im") {
    throw std::invalid_argument("grid csv: expected header 'j,p,re,im'");
  }
  GridFunction out(lattice);
  std::size_t row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      fields.push_back(field);
    }
    if (fields.size() != 4) {
      throw std::invalid_argument("grid csv line " + std::to_string(line_no) + ": expected 4 fields");
    }
    if (row >= lattice.size() || parse_field(fields[0], line_no) != static_cast<double>(row)) {
      throw std::invalid_argument("grid csv line " + std::to_string(line_no) + ": unexpected index");
    }
    const double p = parse_field(fields[1], line_no);
    const double expected = lattice.momentum_at(row);
    if (std::abs(p - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw std::invalid_argument("grid csv line " + std::to_string(line_no) + ": momentum does not match lattice");
    }
    out[row] = complex(parse_field(fields[2], line_no), parse_field(fields[3], line_no));
    ++row;
  }
  if (row != lattice.size()) {
    throw std::invalid_argument("grid csv: " + std::to_string(row) + " rows for a lattice of " +
                                std::to_string(lattice.size()));
  }
  return out;
}

}  // namespace momlat
