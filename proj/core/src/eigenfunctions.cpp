#include "crw/eigenfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crw/errors.hpp"
#include "crw/quadrature.hpp"

namespace crw {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(std::span<const double> grid) {
  if (grid.size() < 2) throw std::invalid_argument("eigenfunction grid needs at least two points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < -0.5 || grid[i] > 0.5) {
      throw std::invalid_argument("eigenfunction grid must lie in [-1/2, 1/2]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("eigenfunction grid must be strictly increasing");
    }
  }
}

std::vector<double> refine(std::span<const double> x) {
  std::vector<double> out;
  out.reserve(2 * x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    out.push_back(x[i]);
    out.push_back(0.5 * (x[i] + x[i + 1]));
  }
  out.push_back(x.back());
  return out;
}

// Argument increments of consecutive samples, skipping exact zeros.
std::vector<double> arg_increments(std::span<const Complex> values) {
  std::vector<double> inc;
  inc.reserve(values.size());
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] == Complex{} || values[i + 1] == Complex{}) continue;
    inc.push_back(std::arg(values[i + 1] / values[i]));
  }
  return inc;
}

int sign_changes(std::span<const Complex> values) {
  int changes = 0;
  int last = 0;
  for (const Complex& z : values) {
    const int s = (z.real() > 0.0) - (z.real() < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

bool strictly_one_signed(const std::vector<double>& inc, double direction) {
  return std::all_of(inc.begin(), inc.end(), [direction](double d) { return d * direction > 0.0; });
}

double max_abs(const std::vector<double>& inc) {
  double m = 0.0;
  for (double d : inc) m = std::max(m, std::abs(d));
  return m;
}

double max_cell_width(std::span<const double> x) {
  double w = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) w = std::max(w, x[i + 1] - x[i]);
  return w;
}

double sum(const std::vector<double>& inc) {
  double s = 0.0;
  for (double d : inc) s += d;
  return s;
}

}  // namespace

EigenfunctionGrid evaluate(const EigenPair& pair, std::span<const double> grid,
                           Normalization normalization) {
  check_grid(grid);
  EigenfunctionGrid fn;
  fn.x.assign(grid.begin(), grid.end());
  fn.pair = pair;
  fn.normalization = Normalization::CanonicalCoefficient;
  fn.u.resize(grid.size());
  fn.v.resize(grid.size());

  const double sign = parity_sign(pair.parity);
  const Complex nu = pair.nu_value();
  const bool sinh_profile = !pair.is_double_root_at_s_one() && pair.n == 0 && nu.real() == 0.0;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double left = 0.5 + grid[i];
    const double right = 0.5 - grid[i];
    if (pair.is_double_root_at_s_one()) {
      fn.u[i] = 2.0 * left;
      fn.v[i] = 2.0 * right;
    } else if (sinh_profile) {
      fn.u[i] = std::sinh(nu.imag() * left);
      fn.v[i] = std::sinh(nu.imag() * right);
    } else if (nu.imag() == 0.0) {
      fn.u[i] = std::sin(nu.real() * left);
      fn.v[i] = sign * std::sin(nu.real() * right);
    } else {
      fn.u[i] = std::sin(nu * left);
      fn.v[i] = sign * std::sin(nu * right);
    }
  }

  if (normalization == Normalization::UnitL2) {
    const double norm = l2_norm(fn);
    if (!(norm > 0.0)) throw std::domain_error("evaluate: eigenfunction vanishes on the grid");
    for (auto& z : fn.u) z /= norm;
    for (auto& z : fn.v) z /= norm;
    fn.normalization = Normalization::UnitL2;
  }
  return fn;
}

double l2_norm(const EigenfunctionGrid& fn) {
  const double integral = trapezoid(fn.x, [&](std::size_t i) {
    return std::norm(fn.u[i]) + std::norm(fn.v[i]);
  });
  return std::sqrt(integral);
}

double parity_defect(const EigenfunctionGrid& fn) {
  const std::size_t n = fn.x.size();
  const double sign = parity_sign(fn.pair.parity);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t mirror = n - 1 - i;
    if (std::abs(fn.x[i] + fn.x[mirror]) > 1e-14) {
      throw std::invalid_argument("parity_defect: grid is not symmetric about 0");
    }
    worst = std::max(worst, std::abs(fn.v[i] - sign * fn.u[mirror]));
  }
  return worst;
}

double system_residual(const EigenfunctionGrid& fn, const ModelParams& params) {
  const std::size_t n = fn.x.size();
  if (n < 3) throw std::invalid_argument("system_residual: need at least three points");
  const double S = params.S();
  const Complex lambda = fn.pair.lambda;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double span = fn.x[i + 1] - fn.x[i - 1];
    const Complex du = (fn.u[i + 1] - fn.u[i - 1]) / span;
    const Complex dv = (fn.v[i + 1] - fn.v[i - 1]) / span;
    const Complex r1 = -S * du - fn.u[i] + fn.v[i] - lambda * fn.u[i];
    const Complex r2 = S * dv + fn.u[i] - fn.v[i] - lambda * fn.v[i];
    worst = std::max({worst, std::abs(r1), std::abs(r2)});
  }
  return worst;
}

RotationSummary rotation_number(const EigenfunctionGrid& fn) {
  RotationSummary summary;
  summary.n_expected = fn.pair.n;
  const double phase_speed = std::abs(fn.pair.nu_value().real());

  EigenfunctionGrid current = fn;
  for (int level = 0; level <= 3; ++level) {
    // Sampled phases alias once a cell spans a quarter period or more.
    const bool phase_resolved = max_cell_width(current.x) * phase_speed < 0.5 * kPi;

    if (fn.pair.is_real()) {
      if (phase_resolved) {
        // Real eigenfunction: count sign changes strictly inside (-1/2, 1/2).
        std::vector<Complex> u_inner;
        std::vector<Complex> v_inner;
        for (std::size_t i = 0; i < current.x.size(); ++i) {
          if (current.x[i] <= -0.5 || current.x[i] >= 0.5) continue;
          u_inner.push_back(current.u[i]);
          v_inner.push_back(current.v[i]);
        }
        summary.real_valued = true;
        summary.half_turns_u = sign_changes(u_inner);
        summary.half_turns_v = sign_changes(v_inner);
        summary.monotone_argument = true;
        return summary;
      }
    } else {
      // u vanishes at -1/2 and v at +1/2; drop those samples before unwrapping.
      std::vector<Complex> u_tail(current.u.begin() + 1, current.u.end());
      std::vector<Complex> v_head(current.v.begin(), current.v.end() - 1);
      const auto inc_u = arg_increments(u_tail);
      const auto inc_v = arg_increments(v_head);
      if (phase_resolved && std::max(max_abs(inc_u), max_abs(inc_v)) < 0.5 * kPi) {
        // Along x, arg u decreases and arg v increases when j = 1; reversed for j = 2.
        const double direction = (fn.pair.j == 2) ? 1.0 : -1.0;
        summary.total_arg_u = sum(inc_u);
        summary.total_arg_v = sum(inc_v);
        // The total swing is an exact multiple of pi (u(1/2) = sin(nu) = +-S nu),
        // minus the sliver lost to the first cell, so round rather than floor.
        summary.half_turns_u = static_cast<int>(std::lround(std::abs(summary.total_arg_u) / kPi));
        summary.half_turns_v = static_cast<int>(std::lround(std::abs(summary.total_arg_v) / kPi));
        summary.monotone_argument =
            strictly_one_signed(inc_u, direction) && strictly_one_signed(inc_v, -direction);
        return summary;
      }
    }
    if (level < 3) current = evaluate(fn.pair, refine(current.x), fn.normalization);
  }
  throw GridTooCoarse("rotation_number: grid does not resolve the phase after 3 refinements");
}

bool dominant_positivity(const ModelParams& params, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("dominant_positivity: grid_size must be >= 2");
  const auto grid = uniform_grid(static_cast<std::size_t>(grid_size));
  const auto fn = evaluate(dominant(params), grid);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (!(fn.u[i].real() > 0.0 && fn.v[i].real() > 0.0)) return false;
    if (fn.u[i].imag() != 0.0 || fn.v[i].imag() != 0.0) return false;
  }
  return true;
}

double simplicity_integral(const ModelParams& params, int grid_size) {
  if (grid_size < 1) throw std::invalid_argument("simplicity_integral: grid_size must be >= 1");
  const auto grid = uniform_grid(static_cast<std::size_t>(grid_size));
  const auto fn = evaluate(dominant(params), grid);
  return 2.0 * trapezoid(fn.x, [&](std::size_t i) { return (fn.u[i] * fn.v[i]).real(); });
}

}  // namespace crw
