#pragma once

#include <vector>

#include "mfw/numerics.hpp"

namespace mfw {

// minimize c.x  subject to  A x <= b,  Aeq x = beq,  x free.
struct LPProblem {
  Vector c;
  Matrix A;
  Vector b;
  Matrix Aeq;  // may be empty (0 rows)
  Vector beq;
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPSolution {
  LPStatus status = LPStatus::optimal;
  Vector x;
  double objective = 0.0;
  // Multipliers in the convention c + A^T lambda + Aeq^T nu = 0 with
  // lambda >= 0 and complementary slackness; strong duality gives
  // c.x = -(b.lambda + beq.nu).
  Vector ineq_duals;
  Vector eq_duals;
  int iterations = 0;
};

// Dense two-phase primal simplex with Bland's rule.  Free variables are
// split internally; desk scale only (<= 64 variables and rows).
LPSolution simplex_solve(const LPProblem& lp);

}  // namespace mfw
