#include "crw/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "crw/errors.hpp"

namespace crw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSecant = 50;

struct Mat2 {
  std::array<Complex, 4> a{};  // row-major

  Mat2 operator*(const Mat2& o) const {
    return Mat2{{a[0] * o.a[0] + a[1] * o.a[2], a[0] * o.a[1] + a[1] * o.a[3],
                 a[2] * o.a[0] + a[3] * o.a[2], a[2] * o.a[1] + a[3] * o.a[3]}};
  }
  Mat2 operator+(const Mat2& o) const {
    return Mat2{{a[0] + o.a[0], a[1] + o.a[1], a[2] + o.a[2], a[3] + o.a[3]}};
  }
  Mat2 operator*(Complex s) const { return Mat2{{a[0] * s, a[1] * s, a[2] * s, a[3] * s}}; }
  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
};

Mat2 system_matrix(double S, Complex lambda) {
  return Mat2{{(-1.0 - lambda) / S, 1.0 / S, -1.0 / S, (1.0 + lambda) / S}};
}

// One classical RK4 step of y' = M y is y <- P y with
// P = I + hM + (hM)^2/2 + (hM)^3/6 + (hM)^4/24.
Mat2 rk4_propagator(const Mat2& M, double h) {
  const Mat2 A = M * Complex{h, 0.0};
  const Mat2 A2 = A * A;
  const Mat2 A3 = A2 * A;
  const Mat2 A4 = A3 * A;
  return Mat2::identity() + A + A2 * 0.5 + A3 * (1.0 / 6.0) + A4 * (1.0 / 24.0);
}

Mat2 power(Mat2 base, int exponent) {
  Mat2 result = Mat2::identity();
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

void check_steps(int steps) {
  if (steps < 100) throw std::invalid_argument("shoot: steps must be >= 100");
}

}  // namespace

Complex shoot(const ModelParams& params, Complex lambda, int steps) {
  check_steps(steps);
  const Mat2 P = rk4_propagator(system_matrix(params.S(), lambda), 1.0 / steps);
  // (u, v)(-1/2) = (0, 1): v(1/2) is the lower-right entry of P^steps.
  return power(P, steps).a[3];
}

Trajectory shoot_trajectory(const ModelParams& params, Complex lambda, int steps) {
  check_steps(steps);
  const Mat2 P = rk4_propagator(system_matrix(params.S(), lambda), 1.0 / steps);
  Complex u{0.0, 0.0};
  Complex v{1.0, 0.0};
  double sup = 1.0;
  for (int k = 0; k < steps; ++k) {
    const Complex un = P.a[0] * u + P.a[1] * v;
    const Complex vn = P.a[2] * u + P.a[3] * v;
    u = un;
    v = vn;
    sup = std::max({sup, std::abs(u), std::abs(v)});
  }
  return Trajectory{v, sup};
}

int default_shooting_steps(const ModelParams& params, Complex lambda) {
  // The local frequency of the trajectory is |nu| = |sqrt(-lambda^2 - 2 lambda)| / S.
  const double nu = std::abs(hsqrt(-lambda * lambda - 2.0 * lambda)) / params.S();
  const double steps = std::max(4096.0, 4000.0 * std::max(nu, 1.0));
  return static_cast<int>(std::min(steps, 1.0e8));
}

ShootingResult refine_eigenvalue(const ModelParams& params, Complex guess, int steps) {
  if (steps == 0) steps = default_shooting_steps(params, guess);
  auto F = [&](Complex lambda) { return shoot(params, lambda, steps); };

  Complex x0 = guess;
  Complex x1 = guess + 1e-6 * (1.0 + std::abs(guess));
  Complex f0 = F(x0);
  Complex f1 = F(x1);
  ShootingResult result;
  result.steps = steps;
  for (int it = 1; it <= kMaxSecant; ++it) {
    if (f1 == Complex{} || f1 == f0) {
      result.iterations = it;
      break;
    }
    const Complex x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = F(x1);
    result.iterations = it;
    // Rounding in F limits lambda to about 1e-13; stop well above that floor
    // and keep the better of the last two iterates.
    if (std::abs(x1 - x0) <= 1e-12 * (1.0 + std::abs(x1))) {
      if (std::abs(f0) < std::abs(f1)) x1 = x0;
      break;
    }
    if (it == kMaxSecant) {
      std::ostringstream msg;
      msg << "refine_eigenvalue: no convergence from guess " << guess << " at S=" << params.S();
      throw NoConvergence(msg.str());
    }
  }
  const Trajectory traj = shoot_trajectory(params, x1, steps);
  result.lambda = x1;
  result.boundary_value = traj.boundary_value;
  result.trajectory_sup = traj.sup_norm;
  result.converged = std::abs(traj.boundary_value) <= 1e-10 * traj.sup_norm;
  return result;
}

int count_in_rectangle(const ModelParams& params, const ComplexRect& rect, int steps) {
  if (!(rect.re_max > rect.re_min && rect.im_max > rect.im_min)) {
    throw std::invalid_argument("count_in_rectangle: degenerate rectangle");
  }
  const std::array<Complex, 4> corners{Complex{rect.re_min, rect.im_min}, Complex{rect.re_max, rect.im_min},
                                       Complex{rect.re_max, rect.im_max}, Complex{rect.re_min, rect.im_max}};

  for (int per_side = 256; per_side <= (1 << 16); per_side *= 2) {
    double winding = 0.0;
    double worst = 0.0;
    bool hit_zero = false;
    Complex previous = shoot(params, corners[0], steps);
    for (int side = 0; side < 4 && !hit_zero; ++side) {
      const Complex a = corners[side];
      const Complex b = corners[(side + 1) % 4];
      for (int k = 1; k <= per_side; ++k) {
        const Complex z = a + (b - a) * (static_cast<double>(k) / per_side);
        const Complex current = shoot(params, z, steps);
        if (current == Complex{}) {
          hit_zero = true;
          break;
        }
        const double inc = std::arg(current / previous);
        worst = std::max(worst, std::abs(inc));
        winding += inc;
        previous = current;
      }
    }
    if (!hit_zero && worst < 0.5 * kPi) {
      return static_cast<int>(std::lround(winding / (2.0 * kPi)));
    }
  }
  throw BoundaryTooClose("count_in_rectangle: argument increments stay above pi/2; an eigenvalue is too close to the contour");
}

}  // namespace crw
