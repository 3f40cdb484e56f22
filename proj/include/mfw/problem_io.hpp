#pragma once

#include <optional>
#include <string>

#include "mfw/feasible_sets.hpp"
#include "mfw/objectives.hpp"
#include "mfw/solver.hpp"

namespace mfw {

// A parsed problem file: either a named preset or an explicit
// objectives/set/config/reference description.
struct ProblemSpec {
    MultiObjective objective;
    FeasibleSet set;
    RunConfig config;
    std::optional<Vector> reference_point;
    std::optional<std::string> preset;  // set when the file named a preset
};

// Strict JSON: unknown keys are rejected, every field is type-checked, and
// errors carry the offending field name.  Throws std::invalid_argument.
ProblemSpec parse_problem_text(const std::string& text);
ProblemSpec load_problem_file(const std::string& path);

// History CSV layout:
//   # fingerprint=<hex> n=<n> m=<m> termination=<word>
//   k,x1..xn,F1..Fm,theta_fw,gamma,d_norm[,theta_tilde]
// Values are printed with 17 significant digits so doubles round-trip.
void write_history_csv(const std::string& path, const RunHistory& history);
RunHistory read_history_csv(const std::string& path);

}  // namespace mfw
