#include "crw/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "crw/eigenfunctions.hpp"
#include "crw/errors.hpp"
#include "crw/quadrature.hpp"
#include "crw/spectrum.hpp"

namespace crw {

namespace {

// Reaction flow d/dt (u, v) = (-u + v, u - v) over time tau: u + v is
// conserved and u - v is multiplied by exp(-2 tau). `decay` = exp(-2 tau).
void react(std::vector<double>& u, std::vector<double>& v, double decay) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = u[i] + v[i];
    const double d = (u[i] - v[i]) * decay;
    u[i] = 0.5 * (s + d);
    v[i] = 0.5 * (s - d);
  }
}

double weighted_norm(std::span<const double> w, std::span<const double> u, std::span<const double> v) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * (u[i] * u[i] + v[i] * v[i]);
  return std::sqrt(sum);
}

}  // namespace

State State::zeros(int intervals) {
  if (intervals < 2) throw std::invalid_argument("State: need at least two intervals");
  State s;
  s.x = uniform_grid(static_cast<std::size_t>(intervals));
  s.u.assign(s.x.size(), 0.0);
  s.v.assign(s.x.size(), 0.0);
  return s;
}

void State::check_invariants() const {
  if (x.size() < 3 || u.size() != x.size() || v.size() != x.size()) {
    throw std::invalid_argument("State: x, u, v must have equal length >= 3");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(v[i])) throw std::invalid_argument("State: non-finite value");
  }
  if (u.front() != 0.0) throw std::invalid_argument("State: u(-1/2) must be 0");
  if (v.back() != 0.0) throw std::invalid_argument("State: v(1/2) must be 0");
}

double unit_cfl_dt(int intervals, const ModelParams& params) { return 1.0 / (intervals * params.S()); }

State step(const State& state, const ModelParams& params, double dt, StepOptions options) {
  const int n = state.intervals();
  const double expected = unit_cfl_dt(n, params);
  if (!(std::abs(dt - expected) <= 1e-12 * expected)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "step: dt=" << dt << " differs from dx/S=" << expected;
    throw CflViolation(msg.str());
  }

  State next = state;
  next.t = state.t + dt;
  const double half_decay = std::exp(-dt);  // exp(-2 * dt/2)

  if (!options.transport) {
    if (options.reaction) {
      react(next.u, next.v, half_decay);
      react(next.u, next.v, half_decay);
    }
    return next;
  }

  if (options.reaction) react(next.u, next.v, half_decay);

  // Exact transport by one cell: u moves right, v moves left.
  std::shift_right(next.u.begin(), next.u.end(), 1);
  next.u.front() = 0.0;
  std::shift_left(next.v.begin(), next.v.end(), 1);
  next.v.back() = 0.0;

  if (options.reaction) {
    // The inflow values stay 0, so at those nodes only the partner decays.
    const double v_left = next.v.front() * std::exp(-0.5 * dt);
    const double u_right = next.u.back() * std::exp(-0.5 * dt);
    react(next.u, next.v, half_decay);
    next.u.front() = 0.0;
    next.v.front() = v_left;
    next.u.back() = u_right;
    next.v.back() = 0.0;
  }
  return next;
}

double discrete_norm(const State& state) {
  return std::sqrt(trapezoid(state.x, [&](std::size_t i) {
    return state.u[i] * state.u[i] + state.v[i] * state.v[i];
  }));
}

double total_mass(const State& state) {
  return trapezoid(state.x, [&](std::size_t i) { return state.u[i] + state.v[i]; });
}

SimulationResult simulate(const State& initial, const ModelParams& params, double t_end,
                          std::span<const double> snapshot_times, const StepObserver& observer,
                          StepOptions options) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("simulate: t_end must be > 0");
  initial.check_invariants();
  const int n = initial.intervals();
  const double dt = unit_cfl_dt(n, params);
  const long steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));

  std::vector<long> snapshot_steps;
  for (double ts : snapshot_times) {
    if (!(ts >= 0.0)) throw std::invalid_argument("simulate: snapshot times must be >= 0");
    snapshot_steps.push_back(std::min(steps, std::lround(ts / dt)));
  }

  SimulationResult result;
  result.t.reserve(static_cast<std::size_t>(steps) + 1);
  result.norm.reserve(static_cast<std::size_t>(steps) + 1);
  result.snapshots.resize(snapshot_steps.size());

  State state = initial;
  const double t0 = initial.t;
  for (long k = 0;; ++k) {
    state.t = t0 + static_cast<double>(k) * dt;
    result.t.push_back(state.t);
    result.norm.push_back(discrete_norm(state));
    for (std::size_t s = 0; s < snapshot_steps.size(); ++s) {
      if (snapshot_steps[s] == k) result.snapshots[s] = state;
    }
    if (observer) observer(state);
    if (k == steps) break;
    state = step(state, params, dt, options);
  }
  return result;
}

DecayFit fit_decay(std::span<const double> t, std::span<const double> norm, double t_start, double t_end) {
  if (t.size() != norm.size()) throw std::invalid_argument("fit_decay: t and norm differ in length");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0, syy = 0.0;
  int count = 0;
  double first = std::numeric_limits<double>::quiet_NaN();
  double last = first;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_start || t[i] > t_end) continue;
    if (!(norm[i] >= 1e-300)) {
      throw DegenerateWindow("fit_decay: norm underflows inside the window; shrink it");
    }
    const double y = std::log(norm[i]);
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
    syy += y * y;
    if (count == 0) first = t[i];
    last = t[i];
    ++count;
  }
  if (count < 100) throw DegenerateWindow("fit_decay: window holds fewer than 100 samples");

  const double m = count;
  const double var_t = stt - st * st / m;
  const double cov = sty - st * sy / m;
  const double var_y = syy - sy * sy / m;
  if (!(var_t > 0.0)) throw DegenerateWindow("fit_decay: window has no time spread");

  DecayFit fit;
  fit.rate = cov / var_t;
  fit.amplitude = std::exp((sy - fit.rate * st) / m);
  fit.r_squared = var_y > 0.0 ? (cov * cov) / (var_t * var_y) : 1.0;
  fit.t_start = first;
  fit.t_end = last;
  fit.samples = count;
  return fit;
}

std::pair<double, double> default_fit_window(std::span<const double> t, std::span<const double> norm,
                                             const ModelParams& params) {
  if (t.empty() || t.size() != norm.size()) throw std::invalid_argument("default_fit_window: empty history");
  const double start = std::max(2.0, 1.0 / params.S()) + 1.0;
  double end = t.back();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (norm[i] < 1e-12 * norm.front()) {
      end = t[i > 0 ? i - 1 : 0];
      break;
    }
  }
  return {start, end};
}

ProfileReference::ProfileReference(const ModelParams& params, int intervals) {
  const auto grid = uniform_grid(static_cast<std::size_t>(intervals));
  const auto fn = evaluate(dominant(params), grid, Normalization::UnitL2);
  weights_ = trapezoid_weights(grid);
  u_.resize(grid.size());
  v_.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    u_[i] = fn.u[i].real();
    v_[i] = fn.v[i].real();
  }
}

double ProfileReference::distance(const State& state) const {
  if (state.u.size() != u_.size()) throw std::invalid_argument("profile distance: grid size mismatch");
  const double norm = weighted_norm(weights_, state.u, state.v);
  if (!(norm > 0.0)) throw ZeroState("profile distance: state has zero norm");
  double inner = 0.0;
  for (std::size_t i = 0; i < u_.size(); ++i) inner += weights_[i] * (state.u[i] * u_[i] + state.v[i] * v_[i]);
  const double sign = inner < 0.0 ? -1.0 : 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < u_.size(); ++i) {
    const double du = state.u[i] / norm - sign * u_[i];
    const double dv = state.v[i] / norm - sign * v_[i];
    sum += weights_[i] * (du * du + dv * dv);
  }
  return std::sqrt(sum);
}

double profile_distance(const State& state, const ModelParams& params) {
  return ProfileReference(params, state.intervals()).distance(state);
}

double telegraph_residual(const State& previous, const State& current, const State& next,
                          const ModelParams& params) {
  const std::size_t size = current.x.size();
  if (previous.x.size() != size || next.x.size() != size || size < 5) {
    throw std::invalid_argument("telegraph_residual: states must share a grid");
  }
  const double dt = current.t - previous.t;
  if (!(dt > 0.0) || std::abs((next.t - current.t) - dt) > 1e-9 * dt) {
    throw std::invalid_argument("telegraph_residual: states must be equally spaced in time");
  }
  const double dx = current.dx();
  const double S2 = params.S() * params.S();
  auto p = [](const State& s, std::size_t i) { return s.u[i] + s.v[i]; };
  double worst = 0.0;
  // The boundary nodes hold the inflow value and a one-sided reaction update,
  // which are O(dt^2) off the smooth profile; dividing by dx^2 there would turn
  // that into an O(1) defect. Only stencils clear of both boundary nodes count.
  for (std::size_t i = 2; i + 2 < size; ++i) {
    const double p_tt = (p(next, i) - 2.0 * p(current, i) + p(previous, i)) / (dt * dt);
    const double p_t = (p(next, i) - p(previous, i)) / (2.0 * dt);
    const double p_xx = (p(current, i + 1) - 2.0 * p(current, i) + p(current, i - 1)) / (dx * dx);
    worst = std::max(worst, std::abs(p_tt + 2.0 * p_t - S2 * p_xx));
  }
  return worst;
}

double roughness(const State& state) {
  double scale = 0.0;
  for (std::size_t i = 0; i < state.u.size(); ++i) {
    scale = std::max({scale, std::abs(state.u[i]), std::abs(state.v[i])});
  }
  if (scale == 0.0) return 0.0;
  const double dx = state.dx();
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < state.u.size(); ++i) {
    worst = std::max({worst, std::abs(state.u[i + 1] - state.u[i]), std::abs(state.v[i + 1] - state.v[i])});
  }
  return worst / dx / scale;
}

WashoutReport washout_regularity(const State& initial, const ModelParams& params, std::optional<double> t_end) {
  WashoutReport report;
  report.expected_time = 1.0 / params.S();
  report.threshold = std::sqrt(static_cast<double>(initial.intervals()));
  const double horizon = t_end.value_or(2.0 * report.expected_time);
  simulate(initial, params, horizon, {}, [&](const State& s) {
    report.t.push_back(s.t);
    report.indicator.push_back(roughness(s));
  });
  std::size_t first_calm = report.t.size();
  for (std::size_t k = report.t.size(); k-- > 0;) {
    if (report.indicator[k] >= report.threshold) break;
    first_calm = k;
  }
  if (first_calm < report.t.size()) report.collapse_time = report.t[first_calm];
  return report;
}

}  // namespace crw
