#pragma once

// Pseudo-difference operator data types. The algebra lives in opalgebra.hpp.

#include <cstddef>
#include <map>
#include <vector>

#include "ddero/kernel.hpp"

namespace ddero {

/// left * Delta^{-1} * right * D^power, with Delta = D - I.
struct NonlocalTerm {
  Expression left;
  Fraction right;
  int power = 0;

  friend bool operator==(const NonlocalTerm&, const NonlocalTerm&) = default;
};

/// Sum of local terms coeff * D^power (collected by power) and nonlocal
/// terms.
struct OperatorEntry {
  std::map<int, Expression> local;
  std::vector<NonlocalTerm> nonlocal;

  bool empty() const { return local.empty() && nonlocal.empty(); }
  bool is_local() const { return nonlocal.empty(); }
  void add_local(int power, const Expression& coeff);
  void add_nonlocal(NonlocalTerm t);

  friend bool operator==(const OperatorEntry&, const OperatorEntry&) = default;
};

/// N x N matrix of operator entries.
class PseudoDifferenceOperator {
 public:
  PseudoDifferenceOperator() = default;
  explicit PseudoDifferenceOperator(std::size_t n)
      : n_(n), entries_(n * n) {}

  static PseudoDifferenceOperator identity(std::size_t n);

  std::size_t size() const { return n_; }
  OperatorEntry& at(std::size_t row, std::size_t col) {
    return entries_[row * n_ + col];
  }
  const OperatorEntry& at(std::size_t row, std::size_t col) const {
    return entries_[row * n_ + col];
  }
  bool is_zero() const;
  bool is_local() const;
  bool has_parameters() const;

  friend bool operator==(const PseudoDifferenceOperator&,
                         const PseudoDifferenceOperator&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<OperatorEntry> entries_;
};

}  // namespace ddero
