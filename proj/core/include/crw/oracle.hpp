#pragma once

#include "crw/params.hpp"
#include "crw/spectrum.hpp"

namespace crw {

/// Outcome of refining an eigenvalue on the shooting map F(lambda) = v(1/2).
struct ShootingResult {
  Complex lambda{};
  Complex boundary_value{};
  bool converged{false};
  int iterations{0};
  /// Sup norm of the RK4 trajectory at the returned lambda.
  double trajectory_sup{0.0};
  int steps{0};
};

/// Axis-aligned rectangle in the complex lambda plane.
struct ComplexRect {
  double re_min{0.0};
  double re_max{0.0};
  double im_min{0.0};
  double im_max{0.0};
};

/// Integrates d/dx (u, v) = [[(-1-lambda)/S, 1/S], [-1/S, (1+lambda)/S]] (u, v)
/// from (0, 1) at x = -1/2 with `steps` classical RK4 steps and returns v(1/2).
/// Its zeros are exactly the eigenvalues.
Complex shoot(const ModelParams& params, Complex lambda, int steps);

/// Same integration, stepped sample by sample; reports v(1/2) and the
/// trajectory sup norm max_x max(|u|, |v|).
struct Trajectory {
  Complex boundary_value{};
  double sup_norm{0.0};
};
Trajectory shoot_trajectory(const ModelParams& params, Complex lambda, int steps);

/// Step count that keeps the RK4 error of F well below 1e-12 relative for
/// eigenvalues near `lambda`.
int default_shooting_steps(const ModelParams& params, Complex lambda);

/// Secant iteration on the shooting map. Throws NoConvergence after 50 iterations.
ShootingResult refine_eigenvalue(const ModelParams& params, Complex guess, int steps = 0);

/// Winding number of F around the rectangle boundary, i.e. the number of
/// eigenvalues inside counted with multiplicity. Starts with 256 samples per
/// side and doubles until every argument increment is below pi/2; throws
/// BoundaryTooClose if that never happens.
int count_in_rectangle(const ModelParams& params, const ComplexRect& rect, int steps);

}  // namespace crw
