#pragma once

#include "stochgeo/bodies.hpp"

#include <optional>
#include <vector>

namespace stochgeo {

enum class LpStatus { Optimal, Infeasible, Unbounded, Stopped };

struct LpOptions {
  double tolerance = 1e-11;
  // Stop phase two as soon as the objective drops to or below this value.
  std::optional<double> stop_at_or_below;
  int max_pivots = 100000;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Vector x;
};

// minimize c.x subject to A x = b, x >= 0, by a dense two-phase tableau
// simplex with Bland's anti-cycling rule. When `initial_basis` is given
// (one column index per row, forming a basis with B^{-1} b >= 0) phase one
// is skipped.
LpResult minimize_standard_form(const Matrix& a, const Vector& b,
                                const Vector& c, const LpOptions& options = {},
                                const std::vector<Index>* initial_basis =
                                    nullptr);

}  // namespace stochgeo
