#pragma once

#include <stdexcept>

#include "varbound/exact/polynomial.hpp"
#include "varbound/exact/univariate.hpp"

namespace varbound::exact {

/// The two inputs share a factor of positive degree in the eliminated variable.
class ZeroResultant : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sylvester resultant Res_x(p, q) of p, q in Q[x, λ] (x is variable 0),
/// as a polynomial in λ. Computed from exact Sylvester determinants at
/// integer λ followed by exact interpolation.
UPoly eliminate_resultant(const Polynomial& p, const Polynomial& q);

/// gcd over Q[λ][x] by the primitive remainder sequence, primitive in x.
Polynomial bivariate_gcd(const Polynomial& p, const Polynomial& q);

/// p divided by gcd(p, ∂x p): repeated factors in x removed.
Polynomial squarefree_in_first(const Polynomial& p);

}  // namespace varbound::exact
