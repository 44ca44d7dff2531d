#pragma once

#include <stdexcept>
#include <string>

namespace crw {

/// Root solver exhausted every path without meeting the residual bound.
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shooting refinement did not settle within its iteration budget.
class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contour passes too close to a zero of the shooting map to resolve its argument.
class BoundaryTooClose : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument increments stay above pi/2 even after grid refinement.
class GridTooCoarse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time step is not the unit-CFL step dx/S.
class CflViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fit window is empty, too short, or contains underflowed norms.
class DegenerateWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crw
