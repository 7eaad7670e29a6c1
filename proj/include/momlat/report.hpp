#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "momlat/algebra.hpp"
#include "momlat/eigen.hpp"
#include "momlat/operators.hpp"

// CSV and JSON serialisation of every result type. Reals go through
// format_real / round_to_output_precision so output is byte-stable.
namespace momlat::report {

using nlohmann::json;

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

json to_json(const MomentumLattice& lattice);
json to_json(const ResidualReport& report);
json to_json(const std::vector<ResidualReport>& reports);
/// identity,margin,residual
void write_csv(std::ostream& out, const std::vector<ResidualReport>& reports);

json to_json(const ConvergenceTable& table);
/// a,r,log_a,log_r rows followed by a `slope,<value>` record.
void write_csv(std::ostream& out, const ConvergenceTable& table);

json to_json(const algebra::SymbolicCheck& check);
json to_json(const std::vector<algebra::SymbolicCheck>& checks);
/// identity,zero,normal_form_term_count
void write_csv(std::ostream& out, const std::vector<algebra::SymbolicCheck>& checks);

/// {x, a, n, method, phi0, normalized}; phi0 as {re, im}.
json eigen_envelope(const EigenResult& result, bool is_normalized);
/// values as [{j, p, re, im}, ...]
json grid_values(const GridFunction& f);

/// JSON real, rounded to 15 significant digits; non-finite becomes null.
json real(double value);

/// Two-space indented dump with trailing newline.
std::string dump(const json& j);

}  // namespace momlat::report
