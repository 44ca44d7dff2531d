#pragma once

#include <span>
#include <vector>

#include "crw/params.hpp"
#include "crw/spectrum.hpp"

namespace crw {

enum class Normalization { CanonicalCoefficient, UnitL2 };

/// Sampled eigenfunction (u, v) of an eigenpair on a sorted grid in [-1/2, 1/2].
struct EigenfunctionGrid {
  std::vector<double> x;
  std::vector<Complex> u;
  std::vector<Complex> v;
  EigenPair pair;
  Normalization normalization{Normalization::CanonicalCoefficient};
};

struct RotationSummary {
  int n_expected{0};
  int half_turns_u{0};
  int half_turns_v{0};
  bool monotone_argument{true};
  bool real_valued{false};
  /// Unwrapped argument change of u and v across the interval (complex case).
  double total_arg_u{0.0};
  double total_arg_v{0.0};
};

/// Closed-form eigenfunction: (sin(nu(1/2+x)), +-sin(nu(1/2-x))) by parity,
/// (1+2x, 1-2x) for the S = 1 double root, and sinh profiles for a purely
/// imaginary nu_0.
EigenfunctionGrid evaluate(const EigenPair& pair, std::span<const double> grid,
                           Normalization normalization = Normalization::CanonicalCoefficient);

/// Trapezoidal L2 norm of (u, v).
double l2_norm(const EigenfunctionGrid& fn);

/// max |v(x) - sign * u(-x)| over a grid symmetric about 0.
double parity_defect(const EigenfunctionGrid& fn);

/// Maximum centred-difference residual of the eigenvalue system
///   -S u' - u + v = lambda u,   S v' + u - v = lambda v
/// at interior points of a uniform grid.
double system_residual(const EigenfunctionGrid& fn, const ModelParams& params);

/// Zero count (real eigenfunctions) or half-turn count (complex ones).
/// Refines the grid up to three times; throws GridTooCoarse beyond that.
RotationSummary rotation_number(const EigenfunctionGrid& fn);

bool dominant_positivity(const ModelParams& params, int grid_size);

/// Trapezoidal 2 * integral(u_0 v_0) on `grid_size` uniform intervals.
double simplicity_integral(const ModelParams& params, int grid_size);

}  // namespace crw
