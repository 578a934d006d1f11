#include "pampa/mood.hpp"

#include "pampa/scheme_low.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pampa {

namespace {

// Shu-Osher form: u_{k+1} = a_k u_0 + b_k (u_k + dt L(u_k)).
constexpr std::array<double, 3> kA{0.0, 0.75, 1.0 / 3.0};
constexpr std::array<double, 3> kB{1.0, 0.25, 2.0 / 3.0};
constexpr std::array<double, 3> kStageTime{0.0, 1.0, 0.5};
constexpr std::array<double, 3> kStageEnd{1.0, 0.5, 1.0};

Vec4 combine(int k, const Vec4& u0, const Vec4& uk, const Vec4& rhs, double dt) {
  if (k == 0) return uk + dt * rhs;
  return kA[k] * u0 + kB[k] * (uk + dt * rhs);
}

bool admissible(const Vec4& u) {
  return u.allFinite() && u[0] >= kDepthFloor && u[3] >= kTemperatureFloor * u[0];
}

// Criteria (a) and (b) on one element.
bool element_admissible(const Mesh& mesh, const SolutionField& field, const Derived& d, int e) {
  if (!admissible(field.averages[e]) || !admissible(d.cons_centroids[e])) return false;
  for (int s : mesh.element(e).dofs) {
    if (!admissible(d.cons_points[s])) return false;
  }
  return true;
}

void count(FlagState& f) {
  f.flagged_elements = static_cast<int>(std::count(f.elements.begin(), f.elements.end(), 1));
  f.flagged_dofs = static_cast<int>(std::count(f.dofs.begin(), f.dofs.end(), 1));
}

void propagate(const Mesh& mesh, FlagState& f) {
  f.dofs.assign(mesh.dof_count(), 0);
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (!f.elements[e]) continue;
    for (int s : mesh.element(e).dofs) f.dofs[s] = 1;
  }
  count(f);
}

Vec4 clip(const Vec4& u) {
  Vec4 c = u;
  c[0] = std::max(c[0], kDepthFloor);
  c[3] = std::max(c[3], kTemperatureFloor * c[0]);
  return c;
}

}  // namespace

FlagState detect(const Discretization& disc, const SolutionField& candidate,
                 const SolutionField& previous, const MoodOptions& options) {
  const Mesh& mesh = disc.mesh();
  Derived d;
  derive(disc, candidate, d);
  FlagState f;
  f.elements.assign(mesh.element_count(), 0);
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (!element_admissible(mesh, candidate, d, e)) {
      f.elements[e] = 1;
      continue;
    }
    if (!options.dmp) continue;
    double lo = previous.averages[e][0];
    double hi = lo;
    for (int l = 0; l < 3; ++l) {
      const int n = mesh.neighbor(e, l);
      if (n == kNone) continue;
      lo = std::min(lo, previous.averages[n][0]);
      hi = std::max(hi, previous.averages[n][0]);
    }
    const double delta = std::max(options.dmp_absolute, options.dmp_relative * (hi - lo));
    const double h = candidate.averages[e][0];
    if (h < lo - delta || h > hi + delta) f.elements[e] = 1;
  }
  propagate(mesh, f);
  return f;
}

FlagState guarded_step(const Discretization& disc, SolutionField& field, double t, double dt,
                       const MoodOptions& options, Workspace& ws) {
  const Mesh& mesh = disc.mesh();
  const int ne = mesh.element_count();
  const int nd = mesh.dof_count();
  const SolutionField u0 = field;
  std::array<SolutionField, 3> stages{u0, {}, {}};
  Rhs rhs;

  SolutionField next = u0;
  for (int k = 0; k < 3; ++k) {
    const SolutionField& uk = stages[k];
    assemble_rhs(disc, uk, t + kStageTime[k] * dt, rhs, ws);
    for (int e = 0; e < ne; ++e) {
      next.averages[e] = combine(k, u0.averages[e], uk.averages[e], rhs.averages[e], dt);
    }
    for (int s = 0; s < nd; ++s) {
      next.points[s] = combine(k, u0.points[s], uk.points[s], rhs.points[s], dt);
    }
    apply_boundary(disc, next, t + kStageEnd[k] * dt);
    if (k < 2) stages[k + 1] = next;
  }
  field = std::move(next);
  if (!options.enabled) {
    FlagState none;
    none.elements.assign(ne, 0);
    none.dofs.assign(nd, 0);
    return none;
  }

  FlagState flags = detect(disc, field, u0, options);
  if (!flags.any()) return flags;

  SolutionField low = u0;
  SolutionField mixed;
  Rhs low_rhs;
  low_rhs.points.assign(nd, Vec4::Zero());
  low_rhs.averages.assign(ne, Vec4::Zero());
  for (int k = 0; k < 3; ++k) {
    mixed = stages[k];
    for (int e = 0; e < ne; ++e) {
      if (flags.elements[e]) mixed.averages[e] = low.averages[e];
    }
    for (int s = 0; s < nd; ++s) {
      if (flags.dofs[s]) mixed.points[s] = low.points[s];
    }
    assemble_rhs_low(disc, mixed, t + kStageTime[k] * dt, low_rhs, flags.elements, flags.dofs);
    for (int e = 0; e < ne; ++e) {
      if (flags.elements[e]) {
        low.averages[e] = combine(k, u0.averages[e], mixed.averages[e], low_rhs.averages[e], dt);
      }
    }
    for (int s = 0; s < nd; ++s) {
      if (flags.dofs[s]) {
        low.points[s] = combine(k, u0.points[s], mixed.points[s], low_rhs.points[s], dt);
      }
    }
    apply_boundary(disc, low, t + kStageEnd[k] * dt);
  }
  for (int e = 0; e < ne; ++e) {
    if (flags.elements[e]) field.averages[e] = low.averages[e];
  }
  for (int s = 0; s < nd; ++s) {
    if (flags.dofs[s]) field.points[s] = low.points[s];
  }

  // Terminal rung on the recomputed entities.
  Derived d;
  derive(disc, field, d);
  const VariableSet set = disc.variables();
  for (int e = 0; e < ne; ++e) {
    if (!flags.elements[e] || element_admissible(mesh, field, d, e)) continue;
    Vec4& avg = field.averages[e];
    avg = avg.allFinite() ? clip(avg) : u0.averages[e];
    for (int s : mesh.element(e).dofs) {
      const Vec4 u = fast::from_vars(set, field.points[s]);
      field.points[s] = u.allFinite() ? fast::to_vars(set, clip(u)) : u0.points[s];
    }
  }
  return flags;
}

}  // namespace pampa
