#include "pampa/time_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pampa {

double compute_dt(const Discretization& disc, const SolutionField& field, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  const Mesh& mesh = disc.mesh();
  const double g = disc.params().g;
  Derived d;
  derive(disc, field, d);
  double dt = std::numeric_limits<double>::infinity();
  for (int e = 0; e < mesh.element_count(); ++e) {
    std::array<Vec2, 3> n;
    for (int l = 0; l < 3; ++l) n[l] = mesh.outward_normal(e, l);
    double lambda = 0.0;
    auto visit = [&](const Vec4& u) {
      const double c = std::sqrt(g * u[3]);
      for (const Vec2& nl : n) {
        const double s = std::abs((u[1] * nl.x() + u[2] * nl.y()) / u[0]) + c;
        // NaN must not shrink to a finite step silently.
        if (!(s <= lambda)) lambda = std::isnan(s) ? std::numeric_limits<double>::infinity() : s;
      }
    };
    for (int s : mesh.element(e).dofs) visit(d.cons_points[s]);
    visit(field.averages[e]);
    if (lambda > 0.0) dt = std::min(dt, cfl * mesh.inradius(e) / lambda);
  }
  return dt;
}

std::pair<double, double> conserved_totals(const Mesh& mesh, const SolutionField& field) {
  double mass = 0.0, heat = 0.0;
  for (int e = 0; e < mesh.element_count(); ++e) {
    mass += mesh.element(e).area * field.averages[e][0];
    heat += mesh.element(e).area * field.averages[e][3];
  }
  return {mass, heat};
}

Solver::Solver(const Discretization& disc, SolutionField initial, StepControl control,
               MoodOptions mood)
    : disc_(&disc), field_(std::move(initial)), control_(control), mood_(mood) {
  if (!(control_.cfl > 0.0 && control_.cfl <= 1.0)) {
    throw std::invalid_argument("cfl must lie in (0, 1]");
  }
  if (control_.fixed_dt && !(*control_.fixed_dt > 0.0)) {
    throw std::invalid_argument("fixed dt must be positive");
  }
  apply_boundary(disc, field_, 0.0);
}

double Solver::step(double dt_max) {
  if (steps_ >= control_.max_steps) {
    throw SolverError("step limit " + std::to_string(control_.max_steps) + " reached at t = " +
                      std::to_string(t_));
  }
  double dt = control_.fixed_dt ? *control_.fixed_dt : compute_dt(*disc_, field_, control_.cfl);
  dt = std::min(dt, dt_max);
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw SolverError("invalid time step at t = " + std::to_string(t_));
  }
  flags_ = guarded_step(*disc_, field_, t_, dt, mood_, ws_);
  for (const Vec4& a : field_.averages) {
    if (!a.allFinite()) throw SolverError("non-finite average at t = " + std::to_string(t_));
  }
  for (const Vec4& p : field_.points) {
    if (!p.allFinite()) throw SolverError("non-finite point value at t = " + std::to_string(t_));
  }
  t_ += dt;
  ++steps_;
  const auto [mass, heat] = conserved_totals(disc_->mesh(), field_);
  diagnostics_.push_back({t_, dt, flags_.flagged_elements, flags_.flagged_dofs, mass, heat});
  return dt;
}

void Solver::run(std::span<const double> output_times, const Checkpoint& on_output) {
  std::vector<double> stops;
  for (double s : output_times) {
    if (s > t_ && s < control_.t_final) stops.push_back(s);
  }
  stops.push_back(control_.t_final);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  for (double stop : stops) {
    while (t_ < stop) {
      const double remaining = stop - t_;
      step(remaining);
      // Absorb round-off so the stop is reached exactly.
      if (stop - t_ <= 1e-12 * std::max(1.0, stop)) {
        t_ = stop;
        diagnostics_.back().t = stop;
      }
    }
    if (on_output) on_output(t_, field_, flags_);
  }
}

}  // namespace pampa
