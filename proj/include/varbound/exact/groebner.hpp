#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "varbound/exact/polynomial.hpp"

namespace varbound::exact {

struct ExpressionBudget {
  std::size_t max_terms = 1'000'000;  ///< per polynomial
  int max_degree = 200;               ///< total degree
};

/// Reads VARBOUND_BUDGET (a term count) when set, otherwise the defaults.
ExpressionBudget budget_from_environment();

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t basis_size, std::size_t pairs_left)
      : std::runtime_error(what), basis_size_(basis_size), pairs_left_(pairs_left) {}
  std::size_t basis_size() const { return basis_size_; }
  std::size_t pairs_left() const { return pairs_left_; }

 private:
  std::size_t basis_size_;
  std::size_t pairs_left_;
};

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// Full reduction (leading and tail terms) of f modulo `basis`.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis);

/// Reduced Groebner basis (monic, ascending leading monomials) of the ideal
/// generated by `polys`. Pairs go smallest lcm first, sugar breaking ties;
/// Gebauer-Moeller criteria prune redundant pairs. All inputs must share one
/// variable list. Throws
/// BudgetExceeded when an intermediate polynomial outgrows the budget.
std::vector<Polynomial> buchberger(const std::vector<Polynomial>& polys, MonomialOrder order = MonomialOrder::Lex,
                                   const ExpressionBudget& budget = {});

/// Basis elements involving only the last variable.
std::vector<Polynomial> eliminants(const std::vector<Polynomial>& basis);

}  // namespace varbound::exact
