#pragma once

// Test-only oracle: rewrites words over the letters P, A, B (B = Abar) one
// adjacent pair at a time with
//   A P -> P A + a A,   B P -> P B - a B,   A B -> 1,   B A -> 1
// until no rule applies. Shares only the coefficient arithmetic with the
// library; the ordering algorithm is independent of SymbolicOperator.

#include <map>
#include <stdexcept>
#include <string>

#include "momlat/algebra.hpp"

namespace momlat::testing {

using algebra::Coefficient;
using algebra::GaussianRational;

using WordPoly = std::map<std::string, Coefficient>;

inline void add_word(WordPoly& poly, const std::string& word, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = poly.try_emplace(word, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) poly.erase(it);
  }
}

inline WordPoly rewrite(WordPoly poly) {
  const Coefficient a = Coefficient::spacing();
  for (;;) {
    bool changed = false;
    WordPoly next;
    for (const auto& [word, c] : poly) {
      std::size_t at = std::string::npos;
      for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        const std::string pair = word.substr(i, 2);
        if (pair == "AP" || pair == "BP" || pair == "AB" || pair == "BA") {
          at = i;
          break;
        }
      }
      if (at == std::string::npos) {
        add_word(next, word, c);
        continue;
      }
      changed = true;
      const std::string head = word.substr(0, at);
      const std::string tail = word.substr(at + 2);
      const char first = word[at];
      const char second = word[at + 1];
      if (second == 'P') {
        add_word(next, head + "P" + first + tail, c);
        add_word(next, head + first + tail, first == 'A' ? c * a : -(c * a));
      } else {
        add_word(next, head + tail, c);
      }
    }
    poly = std::move(next);
    if (!changed) return poly;
  }
}

inline WordPoly multiply(const WordPoly& l, const WordPoly& r) {
  WordPoly out;
  for (const auto& [w1, c1] : l) {
    for (const auto& [w2, c2] : r) {
      add_word(out, w1 + w2, c1 * c2);
    }
  }
  return rewrite(out);
}

inline WordPoly scalar_word(const Coefficient& c) {
  WordPoly out;
  add_word(out, "", c);
  return out;
}

inline WordPoly add(WordPoly l, const WordPoly& r, int sign = 1) {
  for (const auto& [w, c] : r) add_word(l, w, sign > 0 ? c : -c);
  return l;
}

inline WordPoly atom_word(const std::string& name) {
  const Coefficient inv_a = Coefficient::monomial(1, -1);
  const WordPoly one = scalar_word(1);
  const WordPoly A{{"A", 1}};
  const WordPoly B{{"B", 1}};
  if (name == "A") return A;
  if (name == "Abar") return B;
  if (name == "P") return {{"P", 1}};
  if (name == "I") return one;
  if (name == "i") return scalar_word(GaussianRational::i());
  if (name == "a") return scalar_word(Coefficient::spacing());
  // Derivative atoms straight from their difference definitions.
  const WordPoly D = multiply(scalar_word(inv_a), add(A, one, -1));
  const WordPoly Dbar = multiply(scalar_word(inv_a), add(one, B, -1));
  if (name == "D") return D;
  if (name == "Dbar") return Dbar;
  if (name == "Q") return add(Dbar, D, -1);
  // X = (1/(2i)) (D + Dbar); 1/(2i) = -i/2
  const WordPoly X = multiply(scalar_word(GaussianRational(0, algebra::Rational(-1, 2))), add(D, Dbar));
  if (name == "X") return X;
  if (name == "H") return add(multiply(X, X), multiply(atom_word("P"), atom_word("P")));
  throw std::invalid_argument("unknown atom " + name);
}

inline WordPoly oracle_normal_form(const algebra::Expression& e) {
  using Kind = algebra::Expression::Kind;
  switch (e.kind) {
    case Kind::atom: return atom_word(e.name);
    case Kind::literal: return scalar_word(GaussianRational(e.value));
    case Kind::negate: return add({}, oracle_normal_form(e.children[0]), -1);
    case Kind::add: return add(oracle_normal_form(e.children[0]), oracle_normal_form(e.children[1]));
    case Kind::subtract: return add(oracle_normal_form(e.children[0]), oracle_normal_form(e.children[1]), -1);
    case Kind::multiply: return multiply(oracle_normal_form(e.children[0]), oracle_normal_form(e.children[1]));
    case Kind::divide: {
      const auto d = oracle_normal_form(e.children[1]);
      if (d.size() != 1 || !d.begin()->first.empty()) throw std::invalid_argument("non-scalar divisor");
      return multiply(oracle_normal_form(e.children[0]), scalar_word(d.begin()->second.inverse()));
    }
    case Kind::power: {
      WordPoly out = scalar_word(1);
      const auto base = oracle_normal_form(e.children[0]);
      for (unsigned k = 0; k < e.exponent; ++k) out = multiply(out, base);
      return out;
    }
    case Kind::commutator:
    case Kind::anticommutator: {
      const auto l = oracle_normal_form(e.children[0]);
      const auto r = oracle_normal_form(e.children[1]);
      return add(multiply(l, r), multiply(r, l), e.kind == Kind::commutator ? -1 : 1);
    }
  }
  throw std::logic_error("unhandled kind");
}

/// True if the rewritten word polynomial equals the operator term by term.
inline bool agrees(const WordPoly& words, const algebra::SymbolicOperator& op) {
  std::map<std::pair<int, int>, Coefficient> converted;
  for (const auto& [word, c] : words) {
    int k = 0;
    std::size_t i = 0;
    while (i < word.size() && word[i] == 'P') {
      ++k;
      ++i;
    }
    int m = 0;
    for (; i < word.size(); ++i) {
      if (word[i] == 'A') ++m;
      else if (word[i] == 'B') --m;
      else return false;  // not normal ordered
    }
    converted[{k, m}] += c;
  }
  std::erase_if(converted, [](const auto& kv) { return kv.second.is_zero(); });
  return converted == op.terms();
}

}  // namespace momlat::testing
