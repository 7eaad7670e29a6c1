#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "momlat/coefficient.hpp"
#include "momlat/operators.hpp"

namespace momlat::algebra {

/// Normal-ordered element sum c_{k,m}(a) * P^k * A^m of the algebra
/// generated by P, A and Abar = A^{-1}, subject to A*P = (P + a)*A.
/// Negative m stands for Abar^{-m}. The empty map is the zero operator.
class SymbolicOperator {
 public:
  using Key = std::pair<int, int>;  // (power of P, power of A)

  SymbolicOperator() = default;
  SymbolicOperator(Coefficient scalar);  // NOLINT: scalars promote implicitly

  static SymbolicOperator momentum() { return term(1, 0, 1); }
  static SymbolicOperator shift(int power) { return term(0, power, 1); }
  static SymbolicOperator term(int p_power, int shift_power, Coefficient c);

  const std::map<Key, Coefficient>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  /// The coefficient if the operator is a multiple of the identity.
  std::optional<Coefficient> as_scalar() const;
  /// Largest |m| over the stored terms.
  int shift_radius() const;

  SymbolicOperator& operator+=(const SymbolicOperator& o);
  SymbolicOperator& operator-=(const SymbolicOperator& o);

  friend SymbolicOperator operator+(SymbolicOperator l, const SymbolicOperator& r) { return l += r; }
  friend SymbolicOperator operator-(SymbolicOperator l, const SymbolicOperator& r) { return l -= r; }
  friend SymbolicOperator operator-(const SymbolicOperator& s);
  /// Product, reordered with A^m * P^l = (P + m*a)^l * A^m.
  friend SymbolicOperator operator*(const SymbolicOperator& l, const SymbolicOperator& r);
  friend bool operator==(const SymbolicOperator&, const SymbolicOperator&) = default;

  /// Terms grouped by shift power, e.g. "(P+a)*A".
  std::string to_string() const;

 private:
  void add_term(const Key& key, const Coefficient& c);

  std::map<Key, Coefficient> terms_;
};

SymbolicOperator pow(const SymbolicOperator& base, unsigned exponent);
SymbolicOperator commutator(const SymbolicOperator& l, const SymbolicOperator& r);
SymbolicOperator anticommutator(const SymbolicOperator& l, const SymbolicOperator& r);

/// Parsed operator expression.
struct Expression {
  enum class Kind { atom, literal, negate, add, subtract, multiply, divide, power, commutator, anticommutator };

  Kind kind = Kind::literal;
  std::string name;        // atom
  Rational value;          // literal
  unsigned exponent = 0;   // power
  std::size_t offset = 0;  // source position of the node
  std::vector<Expression> children;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

inline constexpr unsigned kMaxExponent = 16;

/// Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := primary ('^' nat)? | '-' factor
///   primary:= atom | number | '(' expr ')' | '[' expr ',' expr ']' | '{' expr ',' expr '}'
/// Atoms: A Abar P X Q H D Dbar I i a. Numbers are integers or decimals and
/// are kept exact. Division is allowed only by monomials c*a^k.
Expression parse(std::string_view text);

/// Expands derived atoms through the shift presentation and returns the
/// unique normal form. Throws std::domain_error for a non-invertible divisor.
SymbolicOperator normal_form(const Expression& e);
SymbolicOperator normal_form(std::string_view text);

/// The symbolic generator behind each atom, e.g. X = (-i/(2a))*(A - Abar).
SymbolicOperator expand_atom(std::string_view name);

/// Evaluates the expression with the truncated matrices of `operators`.
OperatorMatrix evaluate(const Expression& e, const MomentumLattice& lattice);

/// Substitutes the lattice spacing and the truncated P, A, Abar into a
/// normal form.
OperatorMatrix evaluate(const SymbolicOperator& s, const MomentumLattice& lattice);

/// Sum of the shift radii of every operator atom in the expression; the
/// number of boundary rows on which truncated and exact evaluation may differ.
std::size_t total_shift_radius(const Expression& e);

struct SymbolicCheck {
  std::string identity;
  std::string expression;  // LHS - RHS in parser syntax
  bool zero = false;
  std::size_t normal_form_term_count = 0;
  bool derived_lemma = false;  // consequence of the presentation rather than a stated identity
};

/// Normal-forms LHS - RHS for every identity of the operator algebra.
std::vector<SymbolicCheck> verify_symbolic_suite();

}  // namespace momlat::algebra
