#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfw/analysis.hpp"
#include "mfw/feasible_sets.hpp"
#include "mfw/objectives.hpp"
#include "mfw/solver.hpp"

namespace mfw {

// A packaged benchmark problem: objectives, feasible set, run budget, and
// the reference policy used to anchor merit values.
struct Preset {
    std::string name;
    std::string description;
    MultiObjective objective;
    FeasibleSet set;
    RunConfig config;
    std::optional<Vector> efficient_point;  // analytic reference when known
    double refine_tol = 1e-13;              // refinement target otherwise
    RateModel rate_model = RateModel::geometric;
};

const std::vector<std::string>& preset_names();
bool is_preset_name(const std::string& name);

// Throws std::invalid_argument for unknown names.
Preset make_preset(const std::string& name);

// Analytic reference when the preset carries one, otherwise a solver-refined
// reference started from the preset's own start point.
ReferencePoint preset_reference(const Preset& preset);

}  // namespace mfw
