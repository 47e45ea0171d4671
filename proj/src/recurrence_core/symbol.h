// Commutative symbol algebra for two-term operator recurrences.
//
// A monomial of length n is a product of symbols a_i and b_{i+1,i} whose
// index coverage partitions the positions {1..n}: a_i covers position i,
// b_{i+1,i} covers positions i and i+1.  The delta operator
// delta_i replaces an adjacent pair a_{i+1} a_i by b_{i+1,i} and kills
// monomials lacking either factor, so it is nilpotent and two deltas at
// neighboring indices annihilate each other on pure a-strings.  The
// closed-form expansion of x_n = a_hat x_{n-1} + b_hat x_{n-2} is the sum
// of all ways to apply separated deltas to a_n ... a_1, one monomial per
// matching of the n-path; the monomial count is Fibonacci(n+1).

#pragma once

#include <string>
#include <vector>

namespace recur {

/// One symbol factor: A(i) is the variable a_i, B(i) is the variable
/// b_{i+1,i} stored by its lower position i.
struct Token {
  enum class Kind { A, B };
  Kind kind = Kind::A;
  int index = 0;

  /// Highest position this token covers (sort key for canonical order).
  int top() const { return kind == Kind::A ? index : index + 1; }
  friend bool operator==(const Token&, const Token&) = default;
};

/// Product of symbol factors with an exact integer coefficient.  Factors
/// are kept position-descending; the coverage of a valid monomial
/// partitions {1..n}.  Coefficients stay tiny here (the expansion itself
/// uses only +1), so a 64-bit integer is exact.
struct SymbolMonomial {
  int n = 0;
  long long coeff = 1;
  std::vector<Token> factors;

  /// Canonical factor-list encoding used for merging and set equality.
  std::string key() const;
  /// True iff factor coverage partitions {1..n} (positions sorted,
  /// disjoint, complete).
  bool covers_all_positions() const;
  friend bool operator==(const SymbolMonomial&, const SymbolMonomial&) = default;
};

/// Sum of monomials over a common n, kept normalized: canonical factor
/// order, duplicate factor lists merged, zero coefficients dropped,
/// monomials sorted by key.
struct SymbolPolynomial {
  int n = 0;
  std::vector<SymbolMonomial> monomials;

  void normalize();
  friend bool operator==(const SymbolPolynomial&, const SymbolPolynomial&) = default;
};

/// p + q (same n required).
SymbolPolynomial add(const SymbolPolynomial& p, const SymbolPolynomial& q);

/// Applies delta_i: every monomial containing both a_{i+1} and a_i has the
/// pair replaced by b_{i+1,i}; all other monomials map to zero.
/// Throws std::out_of_range unless 1 <= i <= n-1.
SymbolPolynomial delta_apply(int i, const SymbolPolynomial& p);

/// The pure product a_n ... a_1 (coefficient 1).
SymbolPolynomial a_string(int n);

/// Full closed-form expansion for length n: the sum over all separated
/// contraction patterns of delta_{i_1}...delta_{i_l}(a_n...a_1); all
/// coefficients +1; monomial count Fibonacci(n+1).  Throws
/// std::invalid_argument for n < 1.
SymbolPolynomial expand_closed_form(int n);

/// Plain-text form, one monomial per line, leading integer coefficient,
/// factors position-descending: "1 b(4,3)*a(2)*a(1)".  Lines follow the
/// normalized monomial order.
std::string to_text(const SymbolPolynomial& p);

/// Inverse of to_text (used by golden-file tests).  Throws
/// std::invalid_argument on malformed input.
SymbolPolynomial from_text(int n, const std::string& text);

}  // namespace recur
