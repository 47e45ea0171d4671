// Dense tables of values indexed by ordered tuples of grid modes, the
// symmetrization projector over tuple arguments, and order-r operator
// application in both its definition form (act, then symmetrize) and its
// combinatorial sum representation (choose-r sum with prefactor
// (m-r)! r! / m!).  Value types: scalars or FockVectors - anything with
// +, scalar *, and a zero obtained by 0.0 * value.

#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fock/vector.h"

namespace fock {

/// Dense table over all ordered mode tuples of a fixed arity.  The flat
/// index of tuple (t_0, ..., t_{n-1}) is sum_j t_j M^j (t_0 fastest).
template <class T>
struct ModeTable {
  int arity = 0;
  int modes = 0;
  std::vector<T> values;

  ModeTable() = default;
  ModeTable(int arity_, int modes_)
      : arity(arity_), modes(modes_) {
    std::size_t n = 1;
    for (int i = 0; i < arity_; ++i) n *= static_cast<std::size_t>(modes_);
    values.resize(n);
  }

  std::size_t flat_index(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != arity)
      throw std::invalid_argument("ModeTable: tuple arity mismatch");
    std::size_t idx = 0, stride = 1;
    for (int j = 0; j < arity; ++j) {
      const int t = tuple[static_cast<std::size_t>(j)];
      if (t < 0 || t >= modes)
        throw std::out_of_range("ModeTable: mode index out of range");
      idx += static_cast<std::size_t>(t) * stride;
      stride *= static_cast<std::size_t>(modes);
    }
    return idx;
  }

  const T& at(const std::vector<int>& tuple) const { return values[flat_index(tuple)]; }
  T& at(const std::vector<int>& tuple) { return values[flat_index(tuple)]; }
};

namespace detail {

// Visits all ordered tuples of the given arity, filling `tuple` in place.
template <class F>
void for_each_tuple(int arity, int modes, std::vector<int>& tuple, F&& body) {
  if (arity == 0) {
    body(tuple);
    return;
  }
  const auto recurse = [&](auto&& self, int pos) -> void {
    if (pos == arity) {
      body(tuple);
      return;
    }
    for (int t = 0; t < modes; ++t) {
      tuple[static_cast<std::size_t>(pos)] = t;
      self(self, pos + 1);
    }
  };
  recurse(recurse, 0);
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

/// Average over all arity! permutations of the tuple arguments.
/// Idempotent; the identity on already-symmetric tables.
template <class T>
ModeTable<T> symmetrize(const ModeTable<T>& in) {
  ModeTable<T> out(in.arity, in.modes);
  std::vector<int> perm(static_cast<std::size_t>(in.arity));
  for (int i = 0; i < in.arity; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<int> tuple(static_cast<std::size_t>(in.arity));
  std::vector<int> permuted(static_cast<std::size_t>(in.arity));
  detail::for_each_tuple(in.arity, in.modes, tuple, [&](const std::vector<int>& t) {
    T acc = 0.0 * in.at(t);
    for (const std::vector<int>& p : perms) {
      for (int j = 0; j < in.arity; ++j)
        permuted[static_cast<std::size_t>(j)] =
            t[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])];
      acc += in.at(permuted);
    }
    out.at(t) = (1.0 / detail::factorial(in.arity)) * acc;
  });
  return out;
}

/// An order-r operator: consumes a symmetric (m-r)-argument table and
/// produces an m-argument table.  The kernel receives the pass-through
/// tuple (arguments shared with the input table), the r extra arguments,
/// and the input value at the pass-through tuple; it must be symmetric
/// within each argument group separately.
template <class T>
struct OrderROperator {
  int r = 0;
  std::function<T(const std::vector<int>& pass, const std::vector<int>& extra,
                  const T& value)>
      kernel;
};

/// Definition form: place the extra arguments last, apply the kernel,
/// then symmetrize over all m arguments.
template <class T>
ModeTable<T> apply_order_r_definition(const OrderROperator<T>& op,
                                      const ModeTable<T>& x) {
  const int m = x.arity + op.r;
  ModeTable<T> raw(m, x.modes);
  std::vector<int> tuple(static_cast<std::size_t>(m));
  detail::for_each_tuple(m, x.modes, tuple, [&](const std::vector<int>& t) {
    const std::vector<int> pass(t.begin(), t.begin() + x.arity);
    const std::vector<int> extra(t.begin() + x.arity, t.end());
    raw.at(t) = op.kernel(pass, extra, x.at(pass));
  });
  return symmetrize(raw);
}

/// Sum representation: prefactor (m-r)! r! / m! times the sum over all
/// ways to pick the r extra argument positions out of m; equals the
/// definition form whenever the kernel group-symmetry precondition and
/// the input-table symmetry hold.  Throws on arity overflow (m > 0
/// required through x.arity >= 0, r >= 0).
template <class T>
ModeTable<T> apply_order_r(const OrderROperator<T>& op, const ModeTable<T>& x) {
  if (op.r < 0) throw std::invalid_argument("apply_order_r: negative order");
  const int m = x.arity + op.r;
  ModeTable<T> out(m, x.modes);

  // All r-element position subsets of {0..m-1}, ascending.
  std::vector<std::vector<int>> subsets;
  std::vector<int> pick;
  const auto choose = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == op.r) {
      subsets.push_back(pick);
      return;
    }
    for (int i = start; i < m; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  choose(choose, 0);

  const double prefactor = detail::factorial(x.arity) * detail::factorial(op.r) /
                           detail::factorial(m);
  std::vector<int> tuple(static_cast<std::size_t>(m));
  std::vector<int> pass(static_cast<std::size_t>(x.arity));
  std::vector<int> extra(static_cast<std::size_t>(op.r));
  detail::for_each_tuple(m, x.modes, tuple, [&](const std::vector<int>& t) {
    bool first = true;
    T acc{};
    for (const std::vector<int>& sel : subsets) {
      std::size_t pi = 0, ei = 0, si = 0;
      for (int pos = 0; pos < m; ++pos) {
        if (si < sel.size() && sel[si] == pos)
          extra[ei++] = t[static_cast<std::size_t>(sel[si++])];
        else
          pass[pi++] = t[static_cast<std::size_t>(pos)];
      }
      T term = op.kernel(pass, extra, x.at(pass));
      if (first) {
        acc = std::move(term);
        first = false;
      } else {
        acc += term;
      }
    }
    out.at(t) = prefactor * acc;
  });
  return out;
}

}  // namespace fock
