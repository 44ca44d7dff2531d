#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "crw/params.hpp"

namespace crw {

/// Grid state of the system on N + 1 uniform points of [-1/2, 1/2].
/// Inflow boundaries: u[0] = 0 and v[N] = 0.
struct State {
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> v;
  double t{0.0};

  static State zeros(int intervals);

  int intervals() const { return static_cast<int>(x.size()) - 1; }
  double dx() const { return 1.0 / intervals(); }
  /// Throws std::invalid_argument on size mismatch, non-finite values or a
  /// nonzero inflow value.
  void check_invariants() const;
};

/// Test hooks: switch either half of the splitting off.
struct StepOptions {
  bool reaction{true};
  bool transport{true};
};

/// The unit-CFL step dx / S.
double unit_cfl_dt(int intervals, const ModelParams& params);

/// One Strang step: exact reaction half-step, exact one-cell transport,
/// exact reaction half-step. Throws CflViolation unless dt = dx / S to 1e-12
/// relative. With transport off every node reacts freely and the inflow
/// values are not enforced.
State step(const State& state, const ModelParams& params, double dt, StepOptions options = {});

/// Trapezoidal L2 norm of (u, v).
double discrete_norm(const State& state);

/// Trapezoidal integral of u + v.
double total_mass(const State& state);

struct SimulationResult {
  std::vector<double> t;
  std::vector<double> norm;
  /// One state per requested snapshot time, taken at the nearest step.
  std::vector<State> snapshots;
};

using StepObserver = std::function<void(const State&)>;

/// Steps from `initial` until t_end (rounded up to a whole step), recording
/// the norm after every step. The observer, if set, sees every state
/// including the initial one.
SimulationResult simulate(const State& initial, const ModelParams& params, double t_end,
                          std::span<const double> snapshot_times = {}, const StepObserver& observer = {},
                          StepOptions options = {});

struct DecayFit {
  double rate{0.0};
  double amplitude{0.0};
  double r_squared{0.0};
  double t_start{0.0};
  double t_end{0.0};
  int samples{0};
};

/// Least-squares line through (t, log norm) over samples with t in
/// [t_start, t_end]. Throws DegenerateWindow below 100 samples or when a norm
/// in the window is below 1e-300.
DecayFit fit_decay(std::span<const double> t, std::span<const double> norm, double t_start, double t_end);

/// Default window: from max(2, 1/S) + 1 until the norm first drops below
/// 1e-12 of its initial value (or the end of the record).
std::pair<double, double> default_fit_window(std::span<const double> t, std::span<const double> norm,
                                             const ModelParams& params);

/// Caches the unit-L2 dominant eigenfunction on a grid.
class ProfileReference {
 public:
  ProfileReference(const ModelParams& params, int intervals);

  /// L2 distance between the normalized state, sign-aligned with the
  /// eigenfunction, and the unit-L2 eigenfunction. Throws ZeroState.
  double distance(const State& state) const;

 private:
  std::vector<double> weights_;
  std::vector<double> u_;
  std::vector<double> v_;
};

double profile_distance(const State& state, const ModelParams& params);

/// max over interior points of |p_tt + 2 p_t - S^2 p_xx| for p = u + v, all
/// derivatives centred, from three states equally spaced in time. Interior
/// means the 3-point stencil avoids both boundary nodes (i = 2 .. N-2).
double telegraph_residual(const State& previous, const State& current, const State& next,
                          const ModelParams& params);

/// max(|du|/dx, |dv|/dx) over neighbouring nodes, relative to max(|u|, |v|).
double roughness(const State& state);

struct WashoutReport {
  std::vector<double> t;
  std::vector<double> indicator;
  /// sqrt(N): a jump scores about N, smooth data O(1).
  double threshold{0.0};
  /// First time after which the indicator stays below the threshold.
  std::optional<double> collapse_time;
  double expected_time{0.0};
};

/// Runs until t_end (default 2/S) and tracks the roughness indicator.
WashoutReport washout_regularity(const State& initial, const ModelParams& params,
                                 std::optional<double> t_end = std::nullopt);

}  // namespace crw
