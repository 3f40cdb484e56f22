#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfw/feasible_sets.hpp"
#include "mfw/objectives.hpp"
#include "mfw/subproblem.hpp"

namespace mfw {

struct RunConfig {
  int max_iters = 1000;
  double theta_tol = 1e-12;      // stop once |theta_fw| falls below this
  double subproblem_tol = 1e-10; // duality-gap target per subproblem solve
  std::optional<double> L_override;
  bool record_theta_tilde = false;
  std::optional<Vector> x0;      // default: lmo in the all-ones direction
};

struct IterateRecord {
  int k = 0;
  Vector x;
  Vector F;
  double theta_fw = 0.0;
  double gamma = 0.0;
  double d_norm = 0.0;  // Euclidean
  bool full_step = false;
  std::optional<double> theta_tilde_value;
};

enum class Termination { converged, iteration_cap, solver_failure };

struct RunHistory {
  std::vector<IterateRecord> records;
  Termination termination = Termination::iteration_cap;
  std::string fingerprint;
  std::string failure_message;
  int failure_iteration = -1;
};

// The step size min{1, -theta / (L d2)} with d2 = ||d||_2^2.
double fw_step_size(double theta_fw, double L, double d2);

// lmo in the all-ones direction; deterministic thanks to the lmo tie-break.
Vector default_start(const FeasibleSet& set);

// One descent step at x: solves the direction subproblem and applies the
// closed-form step.  Returns the next iterate plus the record for x.
std::pair<Vector, IterateRecord> mfw_step(const Vector& x, const MultiObjective& f,
                                          const FeasibleSet& set, double L,
                                          double tol,
                                          const Vector* warm_lambda = nullptr);

RunHistory run(const MultiObjective& f, const FeasibleSet& set, const RunConfig& cfg);

// Stable content hash pairing histories with the problem that produced them.
std::string problem_fingerprint(const MultiObjective& f, const FeasibleSet& set);

const char* termination_name(Termination t);

}  // namespace mfw
