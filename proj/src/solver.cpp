#include "mfw/solver.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mfw/errors.hpp"

namespace mfw {

namespace {

void append_num(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g,", v);
  s += buf;
}

void append_vec(std::string& s, const Vector& v) {
  s += '[';
  for (double x : v) append_num(s, x);
  s += ']';
}

void append_mat(std::string& s, const Matrix& m) {
  s += '[';
  for (double x : m.data) append_num(s, x);
  s += ']';
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

struct StepOutcome {
  MinMaxResult sub;
  IterateRecord rec;
  Vector next;
};

StepOutcome step_core(const Vector& x, const MultiObjective& f, const FeasibleSet& set,
                      double L, double tol, const Vector* warm) {
  Matrix G = gradients(f, x);
  StepOutcome out;
  out.sub = solve_minmax(G, x, set, tol, warm);
  out.rec.x = x;
  out.rec.F = evaluate(f, x);
  out.rec.theta_fw = out.sub.theta_fw;
  const double d2 = dot(out.sub.d_fw, out.sub.d_fw);
  out.rec.d_norm = std::sqrt(d2);
  out.rec.gamma = out.sub.theta_fw == 0.0 ? 1.0 : fw_step_size(out.sub.theta_fw, L, d2);
  out.rec.full_step = out.rec.gamma >= 1.0;
  out.next = x;
  if (out.sub.theta_fw < 0.0) axpy(out.next, out.rec.gamma, out.sub.d_fw);
  return out;
}

}  // namespace

double fw_step_size(double theta_fw, double L, double d2) {
  if (!(L > 0.0)) throw std::invalid_argument("fw_step_size: L must be positive");
  if (d2 < 0.0) throw std::invalid_argument("fw_step_size: negative squared norm");
  if (theta_fw >= 0.0 || d2 == 0.0) return 1.0;
  return std::min(1.0, -theta_fw / (L * d2));
}

Vector default_start(const FeasibleSet& set) {
  Vector ones(ambient_dim(set), 1.0);
  return lmo(set, ones).point;
}

std::pair<Vector, IterateRecord> mfw_step(const Vector& x, const MultiObjective& f,
                                          const FeasibleSet& set, double L,
                                          double tol, const Vector* warm_lambda) {
  if (!(L > 0.0)) throw std::invalid_argument("mfw_step: L must be positive");
  StepOutcome out = step_core(x, f, set, L, tol, warm_lambda);
  return {std::move(out.next), std::move(out.rec)};
}

RunHistory run(const MultiObjective& f, const FeasibleSet& set, const RunConfig& cfg) {
  if (cfg.max_iters < 0) throw std::invalid_argument("run: max_iters must be >= 0");
  if (!(cfg.theta_tol >= 0.0)) throw std::invalid_argument("run: theta_tol must be >= 0");
  if (f.dim != ambient_dim(set))
    throw std::invalid_argument("run: objective/set dimension mismatch");
  const double L = cfg.L_override ? *cfg.L_override : smoothness_constant(f);
  if (!(L > 0.0)) throw std::invalid_argument("run: smoothness constant must be positive");

  Vector x;
  if (cfg.x0) {
    x = *cfg.x0;
    if (x.size() != f.dim) throw std::invalid_argument("run: x0 dimension mismatch");
    if (!contains(set, x, 1e-8)) throw std::invalid_argument("run: x0 is not feasible");
  } else {
    x = default_start(set);
  }

  RunHistory hist;
  hist.fingerprint = problem_fingerprint(f, set);
  Vector warm;
  for (int k = 0;; ++k) {
    StepOutcome out;
    try {
      out = step_core(x, f, set, L, cfg.subproblem_tol, warm.empty() ? nullptr : &warm);
    } catch (const SolverFailure& e) {
      hist.termination = Termination::solver_failure;
      hist.failure_message = e.what();
      hist.failure_iteration = k;
      return hist;
    }
    out.rec.k = k;
    if (cfg.record_theta_tilde)
      out.rec.theta_tilde_value = theta_tilde(gradients(f, x)).value;
    hist.records.push_back(out.rec);
    if (std::abs(out.rec.theta_fw) <= cfg.theta_tol) {
      hist.termination = Termination::converged;
      return hist;
    }
    if (k == cfg.max_iters) {
      hist.termination = Termination::iteration_cap;
      return hist;
    }
    x = std::move(out.next);
    warm = std::move(out.sub.lambda);
  }
}

std::string problem_fingerprint(const MultiObjective& f, const FeasibleSet& set) {
  std::string s;
  char buf[64];
  std::snprintf(buf, sizeof buf, "n=%zu;m=%zu;", f.dim, f.size());
  s += buf;
  if (!f.quadratics.empty()) {
    for (const auto& q : f.quadratics) {
      s += "Q:A=";
      append_mat(s, q.A);
      s += ";b=";
      append_vec(s, q.b);
      s += ';';
    }
  } else {
    for (const auto& c : f.components) {
      s += "CB:L=";
      append_num(s, c.smoothness);
      s += ";mu=";
      append_num(s, c.strong_convexity);
      s += ';';
    }
  }
  if (const auto* ball = std::get_if<NormBall>(&set)) {
    s += "ball:p=";
    append_num(s, ball->p);
    s += ";R=";
    append_num(s, ball->radius);
    s += ";u=";
    append_vec(s, ball->center);
  } else {
    const auto& poly = std::get<HalfspacePolytope>(set);
    s += "poly:A=";
    append_mat(s, poly.A);
    s += ";b=";
    append_vec(s, poly.b);
    s += ";V=";
    for (const auto& v : poly.vertices) append_vec(s, v);
    if (poly.diameter_hint) {
      s += ";D=";
      append_num(s, *poly.diameter_hint);
    }
  }
  return fnv1a_hex(s);
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::iteration_cap: return "iteration-cap";
    case Termination::solver_failure: return "solver-failure";
  }
  return "unknown";
}

}  // namespace mfw
