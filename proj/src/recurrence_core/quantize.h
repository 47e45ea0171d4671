// Quantization of symbol polynomials: each monomial becomes a composed
// linear-operator product applied to a start vector (factors applied
// right to left, i.e. ascending position), and monomials are summed with
// their coefficients.  Includes the direct iteration of the two-term
// recurrence, which serves as the numerical oracle for the closed form.

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "recurrence_core/symbol.h"

namespace recur {

using Vec = Eigen::VectorXcd;

/// Two families of linear maps indexed by level: apply_a(i, .) maps the
/// level-(i-1) space into the level-i space, apply_b(i, .) maps the
/// level-(i-1) space into the level-(i+1) space.  In the single-space
/// case all levels coincide.  When level_dims is non-empty (one entry per
/// level 0..n_max) every application is dimension-checked.
struct OperatorSequence {
  std::function<Vec(int level, const Vec&)> apply_a;
  std::function<Vec(int level, const Vec&)> apply_b;
  std::vector<Eigen::Index> level_dims;
};

/// Recurrence data: x_0 and the operator families; x_1 := apply_a(1, x_0).
struct RecurrenceProblem {
  OperatorSequence ops;
  Vec x0;
};

/// Builds the single-space sequence given fixed matrices a_hat, b_hat.
OperatorSequence matrix_sequence(const Eigen::MatrixXcd& a_hat,
                                 const Eigen::MatrixXcd& b_hat);

/// Builds a graded sequence from per-level matrices: as[i] maps level i
/// to level i+1 (that is, a_hat_{i+1}), bs[i] maps level i to level i+2.
OperatorSequence graded_sequence(const std::vector<Eigen::MatrixXcd>& as,
                                 const std::vector<Eigen::MatrixXcd>& bs);

/// Applies the quantization map to a polynomial: sum over monomials of
/// coeff * (operator product applied to x0).  Throws
/// std::invalid_argument on any dimension mismatch in the composition.
Vec quantize(const SymbolPolynomial& p, const OperatorSequence& ops,
             const Vec& x0);

/// Iterates x_i = a_hat_i x_{i-1} + b_hat_{i-1} x_{i-2} from x_0 and
/// x_1 = a_hat_1 x_0; returns x_n.  This is the reference solution.
Vec solve_direct(const RecurrenceProblem& prob, int n);

/// Closed-form solution: quantize(expand_closed_form(n)).  Must agree
/// with solve_direct to relative accuracy ~1e-10 (tested property).
Vec solve_closed(const RecurrenceProblem& prob, int n);

}  // namespace recur
