#include "momlat/report.hpp"

#include <cmath>
#include <ostream>

#include "momlat/format.hpp"

namespace momlat::report {

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

json real(double value) {
  if (!std::isfinite(value)) {
    return nullptr;
  }
  return round_to_output_precision(value);
}

json to_json(const MomentumLattice& lattice) {
  return {{"p0", real(lattice.p0())}, {"a", real(lattice.spacing())}, {"n_points", lattice.size()}};
}

json to_json(const ResidualReport& report) {
  return {{"identity_name", report.identity_name},
          {"max_interior_residual", real(report.max_interior_residual)},
          {"margin_rows", report.margin_rows},
          {"lattice", to_json(report.lattice)}};
}

json to_json(const std::vector<ResidualReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) {
    out.push_back(to_json(r));
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<ResidualReport>& reports) {
  out << "identity,margin,residual\n";
  for (const auto& r : reports) {
    out << csv_field(r.identity_name) << ',' << r.margin_rows << ',' << format_real(r.max_interior_residual) << '\n';
  }
}

json to_json(const ConvergenceTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"a", real(row.spacing)},
                    {"r", real(row.residual)},
                    {"log_a", real(row.log_spacing)},
                    {"log_r", real(row.log_residual)}});
  }
  return {{"rows", rows}, {"slope", real(table.slope)}};
}

void write_csv(std::ostream& out, const ConvergenceTable& table) {
  out << "a,r,log_a,log_r\n";
  for (const auto& row : table.rows) {
    out << format_real(row.spacing) << ',' << format_real(row.residual) << ',' << format_real(row.log_spacing) << ','
        << format_real(row.log_residual) << '\n';
  }
  out << "slope," << format_real(table.slope) << '\n';
}

json to_json(const algebra::SymbolicCheck& check) {
  return {{"identity", check.identity}, {"zero", check.zero}, {"normal_form_term_count", check.normal_form_term_count}};
}

json to_json(const std::vector<algebra::SymbolicCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    out.push_back(to_json(c));
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<algebra::SymbolicCheck>& checks) {
  out << "identity,zero,normal_form_term_count\n";
  for (const auto& c : checks) {
    out << csv_field(c.identity) << ',' << (c.zero ? "true" : "false") << ',' << c.normal_form_term_count << '\n';
  }
}

json eigen_envelope(const EigenResult& result, bool is_normalized) {
  return {{"x", real(result.x)},
          {"a", real(result.lattice.spacing())},
          {"n", result.lattice.size()},
          {"method", std::string(to_string(result.method))},
          {"phi0", {{"re", real(result.phi0.real())}, {"im", real(result.phi0.imag())}}},
          {"normalized", is_normalized}};
}

json grid_values(const GridFunction& f) {
  json out = json::array();
  for (std::size_t j = 0; j < f.size(); ++j) {
    out.push_back({{"j", j},
                   {"p", real(f.lattice().momentum_at(j))},
                   {"re", real(f[j].real())},
                   {"im", real(f[j].imag())}});
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace momlat::report
