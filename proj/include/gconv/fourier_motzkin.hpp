#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gconv/rational.hpp"

namespace gconv {

/// a . z <= b
struct LinearIneq {
  std::vector<Rational> a;
  Rational b;
};

struct FmResult {
  bool feasible = false;
  std::vector<Rational> point;
  /// Nonnegative multipliers of the input rows whose combination reads 0 <= negative.
  std::vector<Rational> farkas;
  Rational contradiction_rhs;
};

/// Exact Fourier-Motzkin elimination. Back-substitution takes the midpoint of
/// each variable's interval, else its finite end, else 0.
FmResult fm_solve(const std::vector<LinearIneq>& rows, std::size_t vars);

}  // namespace gconv
