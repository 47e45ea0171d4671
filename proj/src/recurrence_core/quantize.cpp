#include "recurrence_core/quantize.h"

#include <algorithm>
#include <stdexcept>

namespace recur {
namespace {

void check_dim(const OperatorSequence& ops, int level, const Vec& v,
               const char* what) {
  if (ops.level_dims.empty()) return;
  if (level < 0 || static_cast<std::size_t>(level) >= ops.level_dims.size())
    throw std::invalid_argument(std::string(what) + ": level out of range");
  if (v.size() != ops.level_dims[static_cast<std::size_t>(level)])
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

OperatorSequence matrix_sequence(const Eigen::MatrixXcd& a_hat,
                                 const Eigen::MatrixXcd& b_hat) {
  OperatorSequence ops;
  ops.apply_a = [a_hat](int, const Vec& v) -> Vec {
    if (v.size() != a_hat.cols())
      throw std::invalid_argument("apply_a: dimension mismatch");
    return a_hat * v;
  };
  ops.apply_b = [b_hat](int, const Vec& v) -> Vec {
    if (v.size() != b_hat.cols())
      throw std::invalid_argument("apply_b: dimension mismatch");
    return b_hat * v;
  };
  return ops;
}

OperatorSequence graded_sequence(const std::vector<Eigen::MatrixXcd>& as,
                                 const std::vector<Eigen::MatrixXcd>& bs) {
  OperatorSequence ops;
  ops.apply_a = [as](int level, const Vec& v) -> Vec {
    const std::size_t i = static_cast<std::size_t>(level) - 1;
    if (level < 1 || i >= as.size())
      throw std::invalid_argument("apply_a: level out of range");
    if (v.size() != as[i].cols())
      throw std::invalid_argument("apply_a: dimension mismatch");
    return as[i] * v;
  };
  ops.apply_b = [bs](int level, const Vec& v) -> Vec {
    const std::size_t i = static_cast<std::size_t>(level) - 1;
    if (level < 1 || i >= bs.size())
      throw std::invalid_argument("apply_b: level out of range");
    if (v.size() != bs[i].cols())
      throw std::invalid_argument("apply_b: dimension mismatch");
    return bs[i] * v;
  };
  ops.level_dims.push_back(as.empty() ? 0 : as[0].cols());
  for (std::size_t i = 0; i < as.size(); ++i) ops.level_dims.push_back(as[i].rows());
  return ops;
}

Vec quantize(const SymbolPolynomial& p, const OperatorSequence& ops,
             const Vec& x0) {
  Vec acc;
  bool first = true;
  for (const SymbolMonomial& m : p.monomials) {
    // Factors are stored position-descending; apply right to left.
    Vec v = x0;
    int level = 0;
    check_dim(ops, level, v, "quantize");
    for (auto it = m.factors.rbegin(); it != m.factors.rend(); ++it) {
      if (it->index != level + 1)
        throw std::invalid_argument("quantize: factor does not compose at current level");
      if (it->kind == Token::Kind::A) {
        v = ops.apply_a(it->index, v);
        level += 1;
      } else {
        v = ops.apply_b(it->index, v);
        level += 2;
      }
      check_dim(ops, level, v, "quantize");
    }
    if (level != p.n)
      throw std::invalid_argument("quantize: monomial does not reach level n");
    const std::complex<double> c(static_cast<double>(m.coeff), 0.0);
    if (first) {
      acc = c * v;
      first = false;
    } else {
      if (acc.size() != v.size())
        throw std::invalid_argument("quantize: inconsistent target dimensions");
      acc += c * v;
    }
  }
  if (first) {
    // Empty polynomial: the zero vector of the level-n space if known,
    // otherwise an empty vector.
    if (!ops.level_dims.empty() &&
        static_cast<std::size_t>(p.n) < ops.level_dims.size())
      return Vec::Zero(ops.level_dims[static_cast<std::size_t>(p.n)]);
    return Vec::Zero(x0.size());
  }
  return acc;
}

Vec solve_direct(const RecurrenceProblem& prob, int n) {
  if (n < 0) throw std::invalid_argument("solve_direct: n must be >= 0");
  if (n == 0) return prob.x0;
  Vec prev = prob.x0;                      // x_{i-2}
  Vec cur = prob.ops.apply_a(1, prob.x0);  // x_{i-1}, starting at x_1
  for (int i = 2; i <= n; ++i) {
    Vec next = prob.ops.apply_a(i, cur) + prob.ops.apply_b(i - 1, prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Vec solve_closed(const RecurrenceProblem& prob, int n) {
  if (n < 1) throw std::invalid_argument("solve_closed: n must be >= 1");
  return quantize(expand_closed_form(n), prob.ops, prob.x0);
}

}  // namespace recur
