#include "momlat/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace momlat::algebra {

// ---------------------------------------------------------------------------
// SymbolicOperator

SymbolicOperator::SymbolicOperator(Coefficient scalar) { add_term({0, 0}, scalar); }

SymbolicOperator SymbolicOperator::term(int p_power, int shift_power, Coefficient c) {
  SymbolicOperator out;
  out.add_term({p_power, shift_power}, c);
  return out;
}

void SymbolicOperator::add_term(const Key& key, const Coefficient& c) {
  if (c.is_zero()) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) {
      terms_.erase(it);
    }
  }
}

std::optional<Coefficient> SymbolicOperator::as_scalar() const {
  if (terms_.empty()) {
    return Coefficient{};
  }
  if (terms_.size() == 1 && terms_.begin()->first == Key{0, 0}) {
    return terms_.begin()->second;
  }
  return std::nullopt;
}

int SymbolicOperator::shift_radius() const {
  int radius = 0;
  for (const auto& [key, c] : terms_) {
    radius = std::max(radius, std::abs(key.second));
  }
  return radius;
}

SymbolicOperator& SymbolicOperator::operator+=(const SymbolicOperator& o) {
  for (const auto& [key, c] : o.terms_) {
    add_term(key, c);
  }
  return *this;
}

SymbolicOperator& SymbolicOperator::operator-=(const SymbolicOperator& o) {
  for (const auto& [key, c] : o.terms_) {
    add_term(key, -c);
  }
  return *this;
}

SymbolicOperator operator-(const SymbolicOperator& s) {
  SymbolicOperator out;
  for (const auto& [key, c] : s.terms_) {
    out.terms_.emplace(key, -c);
  }
  return out;
}

SymbolicOperator operator*(const SymbolicOperator& l, const SymbolicOperator& r) {
  SymbolicOperator out;
  for (const auto& [lkey, lc] : l.terms_) {
    const auto [k, m] = lkey;
    for (const auto& [rkey, rc] : r.terms_) {
      const auto [p_power, n] = rkey;
      // P^k A^m P^l A^n = P^k (P + m a)^l A^(m+n); binomial in the commuting pair (P, m a).
      const Coefficient base = lc * rc;
      Rational binomial = 1;
      for (int j = p_power; j >= 0; --j) {
        // term P^(k+j) with (m a)^(l-j) * C(l, l-j)
        const int drop = p_power - j;
        if (drop > 0 && m == 0) {
          break;
        }
        Rational shift_factor = binomial;
        for (int t = 0; t < drop; ++t) {
          shift_factor *= m;
        }
        out.add_term({k + j, m + n}, base * Coefficient::monomial(GaussianRational(shift_factor), drop));
        binomial = binomial * j / (drop + 1);
      }
    }
  }
  return out;
}

SymbolicOperator pow(const SymbolicOperator& base, unsigned exponent) {
  SymbolicOperator out(Coefficient(1));
  for (unsigned e = 0; e < exponent; ++e) {
    out = out * base;
  }
  return out;
}

SymbolicOperator commutator(const SymbolicOperator& l, const SymbolicOperator& r) { return l * r - r * l; }
SymbolicOperator anticommutator(const SymbolicOperator& l, const SymbolicOperator& r) { return l * r + r * l; }

namespace {

std::string shift_text(int m) {
  if (m == 1) return "A";
  if (m == -1) return "Abar";
  if (m > 0) return "A^" + std::to_string(m);
  return "Abar^" + std::to_string(-m);
}

bool needs_parens(const std::string& text) {
  // Compound if a top-level '+' or '-' follows the first character.
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && i > 0 && (c == '+' || c == '-') && text[i - 1] != '^') {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string SymbolicOperator::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::map<int, std::vector<std::pair<int, const Coefficient*>>> by_shift;
  for (const auto& [key, c] : terms_) {
    by_shift[key.second].emplace_back(key.first, &c);
  }
  std::string out;
  for (const auto& [m, group] : by_shift) {
    std::string poly;
    for (auto it = group.rbegin(); it != group.rend(); ++it) {
      const auto [k, c] = *it;
      const std::string power = k == 0 ? "" : (k == 1 ? "P" : "P^" + std::to_string(k));
      std::string coeff = c->to_string();
      std::string term;
      if (power.empty()) {
        term = coeff;
      } else if (coeff == "1") {
        term = power;
      } else if (coeff == "-1") {
        term = "-" + power;
      } else {
        term = (needs_parens(coeff) ? "(" + coeff + ")" : coeff) + "*" + power;
      }
      if (!poly.empty() && term.front() != '-') {
        poly += "+";
      }
      poly += term;
    }
    std::string group_text;
    if (m == 0) {
      group_text = poly;
    } else if (poly == "1") {
      group_text = shift_text(m);
    } else if (poly == "-1") {
      group_text = "-" + shift_text(m);
    } else {
      group_text = (needs_parens(poly) ? "(" + poly + ")" : poly) + "*" + shift_text(m);
    }
    if (out.empty()) {
      out = group_text;
    } else if (group_text.front() == '-') {
      out += " - " + group_text.substr(1);
    } else {
      out += " + " + group_text;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace {

constexpr std::string_view kAtoms[] = {"A", "Abar", "P", "X", "Q", "H", "D", "Dbar", "I", "i", "a"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression parse_all() {
    Expression e = expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
    }
    if (text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  static Expression binary(Expression::Kind kind, Expression lhs, Expression rhs, std::size_t offset) {
    Expression e;
    e.kind = kind;
    e.offset = offset;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
  }

  Expression expr() {
    Expression lhs = term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = binary(Expression::Kind::add, std::move(lhs), term(), at);
      } else if (accept('-')) {
        lhs = binary(Expression::Kind::subtract, std::move(lhs), term(), at);
      } else {
        return lhs;
      }
    }
  }

  Expression term() {
    Expression lhs = factor();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        lhs = binary(Expression::Kind::multiply, std::move(lhs), factor(), at);
      } else if (accept('/')) {
        lhs = binary(Expression::Kind::divide, std::move(lhs), factor(), at);
      } else {
        return lhs;
      }
    }
  }

  Expression factor() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) {
      Expression e;
      e.kind = Expression::Kind::negate;
      e.offset = at;
      e.children.push_back(factor());
      return e;
    }
    Expression base = primary();
    skip_space();
    const std::size_t caret = pos_;
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (start == pos_) {
        throw ParseError("expected non-negative integer exponent", start);
      }
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 3 || std::stoul(digits) > kMaxExponent) {
        throw ParseError("exponent exceeds " + std::to_string(kMaxExponent), start);
      }
      Expression e;
      e.kind = Expression::Kind::power;
      e.offset = caret;
      e.exponent = static_cast<unsigned>(std::stoul(digits));
      e.children.push_back(std::move(base));
      return e;
    }
    return base;
  }

  Expression primary() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) {
      throw ParseError("unexpected end of input", pos_);
    }
    const char c = text_[pos_];
    if (accept('(')) {
      Expression e = expr();
      expect(')');
      return e;
    }
    if (c == '[' || c == '{') {
      ++pos_;
      Expression lhs = expr();
      expect(',');
      Expression rhs = expr();
      expect(c == '[' ? ']' : '}');
      return binary(c == '[' ? Expression::Kind::commutator : Expression::Kind::anticommutator, std::move(lhs),
                    std::move(rhs), at);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(at, pos_ - at);
      if (std::find(std::begin(kAtoms), std::end(kAtoms), name) == std::end(kAtoms)) {
        throw ParseError("unknown identifier '" + std::string(name) + "'", at);
      }
      Expression e;
      e.kind = Expression::Kind::atom;
      e.name = std::string(name);
      e.offset = at;
      return e;
    }
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  Expression number() {
    const std::size_t at = pos_;
    Rational value = 0;
    bool digits = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      digits = true;
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      Rational scale = 1;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        scale /= 10;
        value += scale * (text_[pos_] - '0');
        digits = true;
        ++pos_;
      }
    }
    if (!digits) {
      throw ParseError("malformed number", at);
    }
    Expression e;
    e.kind = Expression::Kind::literal;
    e.value = value;
    e.offset = at;
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Normal form

SymbolicOperator expand_atom(std::string_view name) {
  const auto a = Coefficient::spacing();
  const auto inv_a = Coefficient::monomial(1, -1);
  const SymbolicOperator one(Coefficient(1));
  const auto A = SymbolicOperator::shift(1);
  const auto Abar = SymbolicOperator::shift(-1);
  if (name == "A") return A;
  if (name == "Abar") return Abar;
  if (name == "P") return SymbolicOperator::momentum();
  if (name == "I") return one;
  if (name == "i") return SymbolicOperator(Coefficient(GaussianRational::i()));
  if (name == "a") return SymbolicOperator(a);
  if (name == "D") return SymbolicOperator(inv_a) * (A - one);
  if (name == "Dbar") return SymbolicOperator(inv_a) * (one - Abar);
  if (name == "Q") return SymbolicOperator(inv_a) * (SymbolicOperator(Coefficient(2)) - A - Abar);
  if (name == "X") {
    // 1/(2i) * (D + Dbar) = -i/(2a) * (A - Abar)
    return SymbolicOperator(Coefficient::monomial(GaussianRational(0, Rational(-1, 2)), -1)) * (A - Abar);
  }
  if (name == "H") {
    const auto x = expand_atom("X");
    const auto p = SymbolicOperator::momentum();
    return x * x + p * p;
  }
  throw std::domain_error("unknown atom '" + std::string(name) + "'");
}

SymbolicOperator normal_form(const Expression& e) {
  using Kind = Expression::Kind;
  switch (e.kind) {
    case Kind::atom:
      return expand_atom(e.name);
    case Kind::literal:
      return SymbolicOperator(Coefficient(GaussianRational(e.value)));
    case Kind::negate:
      return -normal_form(e.children[0]);
    case Kind::add:
      return normal_form(e.children[0]) + normal_form(e.children[1]);
    case Kind::subtract:
      return normal_form(e.children[0]) - normal_form(e.children[1]);
    case Kind::multiply:
      return normal_form(e.children[0]) * normal_form(e.children[1]);
    case Kind::divide: {
      const auto divisor = normal_form(e.children[1]).as_scalar();
      if (!divisor) {
        throw std::domain_error("division by an operator at offset " + std::to_string(e.offset));
      }
      return normal_form(e.children[0]) * SymbolicOperator(divisor->inverse());
    }
    case Kind::power:
      return pow(normal_form(e.children[0]), e.exponent);
    case Kind::commutator:
      return commutator(normal_form(e.children[0]), normal_form(e.children[1]));
    case Kind::anticommutator:
      return anticommutator(normal_form(e.children[0]), normal_form(e.children[1]));
  }
  throw std::logic_error("unhandled expression kind");
}

SymbolicOperator normal_form(std::string_view text) { return normal_form(parse(text)); }

// ---------------------------------------------------------------------------
// Numeric evaluation

OperatorMatrix evaluate(const Expression& e, const MomentumLattice& lattice) {
  using Kind = Expression::Kind;
  switch (e.kind) {
    case Kind::atom:
      if (e.name == "i") return complex(0.0, 1.0) * OperatorMatrix::identity(lattice);
      if (e.name == "a") return lattice.spacing() * OperatorMatrix::identity(lattice);
      return build_operator(lattice, parse_operator_name(e.name));
    case Kind::literal:
      return static_cast<double>(e.value) * OperatorMatrix::identity(lattice);
    case Kind::negate:
      return -1.0 * evaluate(e.children[0], lattice);
    case Kind::add:
      return evaluate(e.children[0], lattice) + evaluate(e.children[1], lattice);
    case Kind::subtract:
      return evaluate(e.children[0], lattice) - evaluate(e.children[1], lattice);
    case Kind::multiply:
      return evaluate(e.children[0], lattice) * evaluate(e.children[1], lattice);
    case Kind::divide: {
      const auto divisor = normal_form(e.children[1]).as_scalar();
      if (!divisor || divisor->is_zero()) {
        throw std::domain_error("division by an operator at offset " + std::to_string(e.offset));
      }
      return (1.0 / divisor->evaluate(lattice.spacing())) * evaluate(e.children[0], lattice);
    }
    case Kind::power: {
      const auto base = evaluate(e.children[0], lattice);
      auto out = OperatorMatrix::identity(lattice);
      for (unsigned k = 0; k < e.exponent; ++k) {
        out = out * base;
      }
      return out;
    }
    case Kind::commutator:
      return commutator(evaluate(e.children[0], lattice), evaluate(e.children[1], lattice));
    case Kind::anticommutator:
      return anticommutator(evaluate(e.children[0], lattice), evaluate(e.children[1], lattice));
  }
  throw std::logic_error("unhandled expression kind");
}

OperatorMatrix evaluate(const SymbolicOperator& s, const MomentumLattice& lattice) {
  const double a = lattice.spacing();
  const auto P = build_operator(lattice, OperatorName::P);
  const auto A = build_operator(lattice, OperatorName::A);
  const auto Abar = build_operator(lattice, OperatorName::Abar);
  OperatorMatrix out(lattice, 0);
  for (const auto& [key, c] : s.terms()) {
    const auto [k, m] = key;
    auto product = c.evaluate(a) * OperatorMatrix::identity(lattice);
    for (int t = 0; t < k; ++t) {
      product = product * P;
    }
    for (int t = 0; t < std::abs(m); ++t) {
      product = product * (m > 0 ? A : Abar);
    }
    out += product;
  }
  return out;
}

std::size_t total_shift_radius(const Expression& e) {
  using Kind = Expression::Kind;
  switch (e.kind) {
    case Kind::atom:
      if (e.name == "H") return 2;
      if (e.name == "A" || e.name == "Abar" || e.name == "D" || e.name == "Dbar" || e.name == "X" || e.name == "Q") {
        return 1;
      }
      return 0;
    case Kind::literal:
      return 0;
    case Kind::negate:
      return total_shift_radius(e.children[0]);
    case Kind::add:
    case Kind::subtract:
      return std::max(total_shift_radius(e.children[0]), total_shift_radius(e.children[1]));
    case Kind::power:
      return e.exponent * total_shift_radius(e.children[0]);
    case Kind::multiply:
    case Kind::divide:
    case Kind::commutator:
    case Kind::anticommutator:
      return total_shift_radius(e.children[0]) + total_shift_radius(e.children[1]);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Identity suite

std::vector<SymbolicCheck> verify_symbolic_suite() {
  struct Entry {
    const char* identity;
    const char* expression;
    bool lemma;
  };
  static constexpr Entry kEntries[] = {
      {"A*Abar = I", "A*Abar - I", false},
      {"Abar*A = I", "Abar*A - I", false},
      {"[A,P] = a*A", "[A,P] - a*A", false},
      {"[Abar,P] = -a*Abar", "[Abar,P] + a*Abar", false},
      {"[D,P] = A", "[D,P] - A", false},
      {"[Dbar,P] = Abar", "[Dbar,P] - Abar", false},
      {"[X,P] = -i + (i*a/2)*Q", "[X,P] + i - (i*a/2)*Q", false},
      {"X^2 + P^2 = -(A-Abar)^2/(4*a^2) + P^2", "X^2 + P^2 + (A - Abar)^2/(4*a^2) - P^2", false},
      {"[X,H] = -2i*P + (i*a/2)*{Q,P}", "[X,H] + 2*i*P - (i*a/2)*{Q,P}", false},
      {"[X,H] = -2i*P + i*a*P*Q + a^2*X", "[X,H] + 2*i*P - i*a*P*Q - a^2*X", false},
      {"[P,H] = 2i*X - (i*a/2)*{Q,X}", "[P,H] - 2*i*X + (i*a/2)*{Q,X}", false},
      {"[P,H] = 2i*X - i*a*X*Q", "[P,H] - 2*i*X + i*a*X*Q", false},
      {"(i*a/2)*{Q,P} = i*a*P*Q + a^2*X", "(i*a/2)*{Q,P} - i*a*P*Q - a^2*X", false},
      {"[D,Dbar] = 0", "[D,Dbar]", true},
  };
  std::vector<SymbolicCheck> out;
  for (const auto& entry : kEntries) {
    const auto nf = normal_form(entry.expression);
    out.push_back({entry.identity, entry.expression, nf.is_zero(), nf.term_count(), entry.lemma});
  }
  return out;
}

}  // namespace momlat::algebra
