#include "crw/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "crw/errors.hpp"

namespace crw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualTol = 1e-12;
constexpr double kDoubleRootTol = 1e-12;
constexpr double kNearDoubleRoot = 1e-6;
constexpr double kStripMargin = 0.1;
constexpr int kMaxNewton = 100;

// Bisection on a continuous f with f(lo) and f(hi) of opposite sign.
// Runs until the bracket cannot shrink further in double precision.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double f_lo = f(lo);
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

// 1 - sin(x)/x without cancellation near 0.
double one_minus_sinc(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 0.1) {
    return x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return 1.0 - std::sin(x) / x;
}

// sinh(y)/y - 1 without cancellation near 0.
double sinhc_minus_one(double y) {
  const double y2 = y * y;
  if (std::abs(y) < 0.1) {
    return y2 / 6.0 * (1.0 + y2 / 20.0 * (1.0 + y2 / 42.0 * (1.0 + y2 / 72.0)));
  }
  return std::sinh(y) / y - 1.0;
}

bool is_s_one(double S) { return std::abs(S - 1.0) <= kDoubleRootTol; }

void check_index(int n, int j) {
  if (n < 1) throw std::invalid_argument("nu_root: n must be >= 1");
  if (j != 1 && j != 2) throw std::invalid_argument("nu_root: j must be 1 or 2");
}

double residual_bound(Complex nu) { return kResidualTol * (1.0 + std::abs(nu)); }

// h(nu) = sin(nu) - sign * S * nu and its derivative.
struct Characteristic {
  double S;
  double sign;
  Complex value(Complex z) const { return std::sin(z) - sign * S * z; }
  Complex derivative(Complex z) const { return std::cos(z) - sign * S; }
};

// Closed strip Q_n inflated by kStripMargin.
bool in_inflated_strip(Complex z, int n) {
  const double lo = n * kPi - kStripMargin;
  const double hi = (n + 0.5) * kPi + kStripMargin;
  return z.real() >= lo && z.real() <= hi && z.imag() >= -kStripMargin;
}

bool in_open_strip(Complex z, int n) {
  return z.real() > n * kPi && z.real() < (n + 0.5) * kPi && z.imag() > 0.0;
}

struct NewtonOutcome {
  Complex z;
  bool converged{false};
};

// Damped Newton on h, confined to the inflated strip.
NewtonOutcome damped_newton(const Characteristic& h, Complex z, int n, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const Complex hz = h.value(z);
    const Complex dh = h.derivative(z);
    if (std::abs(hz) <= 1e-15 * (1.0 + std::abs(z)) * std::max(1.0, h.S)) {
      return {z, true};
    }
    if (dh == Complex{0.0, 0.0}) return {z, false};
    Complex step = -hz / dh;
    int halvings = 0;
    while (!in_inflated_strip(z + step, n) && halvings < 40) {
      step *= 0.5;
      ++halvings;
    }
    if (halvings == 40) return {z, false};
    z += step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z)) {
      return {z, true};
    }
  }
  return {z, std::abs(h.value(z)) <= residual_bound(z)};
}

// Maps a converged root of the pair onto its upper half-plane member.
std::optional<Complex> upper_member(Complex z, int n) {
  if (z.imag() < 0.0) z = std::conj(z);
  if (!in_open_strip(z, n)) return std::nullopt;
  return z;
}

// Walks the complex root down from a large S where the asymptotic seed is
// reliable, with a tangent predictor and adaptive steps.
std::optional<Complex> continuation(double S_target, int n, double sign) {
  double S = std::max(4.0, 4.0 * S_target);
  const double a = (n + 0.5) * kPi;
  Characteristic h{S, sign};
  auto start = damped_newton(h, Complex{a, std::log(2.0 * S * a)}, n, kMaxNewton);
  if (!start.converged) return std::nullopt;
  auto z = upper_member(start.z, n);
  if (!z) return std::nullopt;

  double log_step = (std::log(S_target) - std::log(S)) / 32.0;
  int budget = 20000;
  while (S != S_target && budget-- > 0) {
    double S_next = S * std::exp(log_step);
    if ((log_step < 0.0 && S_next < S_target) || (log_step > 0.0 && S_next > S_target)) {
      S_next = S_target;
    }
    // d nu / d S = sign * nu / h'(nu)
    const Complex slope = sign * (*z) / h.derivative(*z);
    const Complex predicted = *z + slope * (S_next - S);
    Characteristic h_next{S_next, sign};
    auto trial = damped_newton(h_next, predicted, n, 25);
    std::optional<Complex> accepted;
    if (trial.converged) accepted = upper_member(trial.z, n);
    if (accepted && std::abs(*accepted - *z) <= 0.5 * std::max(z->imag(), 1e-3) + 0.25) {
      z = accepted;
      S = S_next;
      h = h_next;
      log_step *= 1.5;
    } else {
      log_step *= 0.25;
      if (std::abs(log_step) < 1e-14) return std::nullopt;
    }
    const double remaining = std::log(S_target) - std::log(S);
    if (std::abs(log_step) > std::abs(remaining)) log_step = remaining;
  }
  if (S != S_target) return std::nullopt;
  return z;
}

NuRoot make_root(int n, int j, Complex value, bool is_real) {
  return NuRoot{n, j, value, parity_of_index(n), is_real};
}

NuRoot verified(const ModelParams& params, NuRoot root) {
  const double r = characteristic_residual(params, root);
  if (!(r <= residual_bound(root.value))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "nu_root: residual " << r << " above bound for n=" << root.n << " j=" << root.j
        << " S=" << params.S();
    throw ConvergenceFailure(msg.str());
  }
  return root;
}

}  // namespace

Parity parity_of_index(int n) { return (n % 2 == 0) ? Parity::Symmetric : Parity::Antisymmetric; }

double parity_sign(Parity parity) { return parity == Parity::Symmetric ? 1.0 : -1.0; }

const char* to_string(Parity parity) {
  return parity == Parity::Symmetric ? "symmetric" : "antisymmetric";
}

Complex EigenPair::nu_value() const {
  if (const auto* root = std::get_if<NuRoot>(&nu)) return root->value;
  return Complex{0.0, 0.0};
}

bool EigenPair::is_real() const { return lambda.imag() == 0.0; }

Complex hsqrt(Complex z) {
  Complex r = std::sqrt(z);
  // std::sqrt returns arg = -pi/2 on the lower lip of the cut; move it up.
  if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
  return r;
}

double characteristic_residual(const ModelParams& params, const NuRoot& root) {
  const double sign = parity_sign(root.parity);
  return std::abs(std::sin(root.value) - sign * params.S() * root.value);
}

double critical_residual(double x) { return std::abs(std::tan(x) - x) / (1.0 + x * x); }

CriticalS critical_s(int m) {
  if (m < 1) throw std::invalid_argument("critical_s: m must be >= 1");
  const double lo_edge = m * kPi;
  const double hi_edge = (m + 0.5) * kPi;
  auto f = [](double x) { return std::tan(x) - x; };
  double delta = 1e-9 * (m + 1) * kPi;
  while (!(f(lo_edge + delta) < 0.0 && f(hi_edge - delta) > 0.0) && delta > 1e-300) {
    delta *= 0.5;
  }
  const double nu_m = bisect(f, lo_edge + delta, hi_edge - delta);
  return CriticalS{m, nu_m, std::abs(std::cos(nu_m))};
}

NuZero nu_zero(const ModelParams& params) {
  const double S = params.S();
  if (is_s_one(S)) return DoubleRootAtSOne{};
  if (S < 1.0) {
    // sin(nu)/nu - S is 1 - S > 0 at 0+ and -S < 0 at pi.
    const double gap = 1.0 - S;
    auto g = [gap](double x) { return gap - one_minus_sinc(x); };
    const double nu = bisect(g, 0.0, kPi);
    return verified(params, make_root(0, 0, Complex{nu, 0.0}, true));
  }
  // nu = i y with sinh(y) = S y.
  const double excess = S - 1.0;
  auto g = [excess](double y) { return sinhc_minus_one(y) - excess; };
  double hi = 2.0 * std::log(2.0 * S) + 2.0;
  while (g(hi) <= 0.0) hi *= 2.0;
  const double y = bisect(g, 0.0, hi);
  return verified(params, make_root(0, 0, Complex{0.0, y}, false));
}

NuRoot nu_root(const ModelParams& params, int n, int j) {
  check_index(n, j);
  const double S = params.S();
  const double sign = parity_sign(parity_of_index(n));
  const CriticalS crit = critical_s(n);
  const double e_n = crit.nu_m;
  const Characteristic h{S, sign};

  if (std::abs(S - crit.S_m) <= kDoubleRootTol) {
    return verified(params, make_root(n, j, Complex{e_n, 0.0}, true));
  }

  if (std::abs(S - crit.S_m) < kNearDoubleRoot) {
    // h has a double zero at (e_n, S_m); locally sign*sin(nu)/nu = S_m - S_m/2 (nu - e_n)^2.
    const double d = std::sqrt(2.0 * std::abs(crit.S_m - S) / crit.S_m);
    if (S < crit.S_m) {
      const double seed = (j == 1) ? e_n - d : e_n + d;
      auto out = damped_newton(h, Complex{seed, 0.0}, n, kMaxNewton);
      return verified(params, make_root(n, j, Complex{out.z.real(), 0.0}, true));
    }
    auto out = damped_newton(h, Complex{e_n, d}, n, kMaxNewton);
    if (auto z = upper_member(out.z, n); out.converged && z) {
      return verified(params, make_root(n, j, j == 1 ? *z : std::conj(*z), false));
    }
    // fall through to the generic complex path
  } else if (S < crit.S_m) {
    // Two real roots either side of the maximum of sign*sin(nu)/nu at e_n.
    auto r = [S, sign](double x) { return sign * std::sin(x) / x - S; };
    double delta = 1e-9 * (n + 1) * kPi;
    if (j == 1) {
      double lo = n * kPi + delta;
      while (r(lo) >= 0.0 && delta > 1e-300) {
        delta *= 0.1;
        lo = n * kPi + delta;
      }
      return verified(params, make_root(n, j, Complex{bisect(r, lo, e_n), 0.0}, true));
    }
    double hi = (n + 1) * kPi - delta;
    while (r(hi) >= 0.0 && delta > 1e-300) {
      delta *= 0.1;
      hi = (n + 1) * kPi - delta;
    }
    return verified(params, make_root(n, j, Complex{bisect(r, e_n, hi), 0.0}, true));
  }

  // Complex pair inside Q_n and its mirror image.
  const Complex seed = asymptotic_nu(params, n, 1);
  std::optional<Complex> upper;
  auto out = damped_newton(h, seed, n, kMaxNewton);
  if (out.converged) upper = upper_member(out.z, n);
  if (!upper) upper = continuation(S, n, sign);
  if (!upper) {
    std::ostringstream msg;
    msg << "nu_root: no root found in strip n=" << n << " for S=" << S;
    throw ConvergenceFailure(msg.str());
  }
  return verified(params, make_root(n, j, j == 1 ? *upper : std::conj(*upper), false));
}

EigenPair lambda_from_nu(const ModelParams& params, const NuZero& root) {
  EigenPair pair;
  pair.nu = root;
  if (std::holds_alternative<DoubleRootAtSOne>(root)) {
    pair.lambda = Complex{-2.0, 0.0};
    pair.parity = Parity::Symmetric;
    return pair;
  }
  const auto& nu = std::get<NuRoot>(root);
  pair.parity = nu.parity;
  pair.n = nu.n;
  pair.j = nu.j;
  const double sign = parity_sign(nu.parity);
  if (nu.is_real && nu.value.imag() == 0.0) {
    pair.lambda = Complex{-1.0 - sign * std::cos(nu.value.real()), 0.0};
  } else if (nu.n == 0) {
    // nu_0 = i y: cos(i y) = cosh(y) is real.
    pair.lambda = Complex{-1.0 - std::cosh(nu.value.imag()), 0.0};
  } else {
    pair.lambda = -1.0 - sign * std::cos(nu.value);
  }

  const double S = params.S();
  const Complex alt = -1.0 - hsqrt(1.0 - S * S * nu.value * nu.value);
  pair.sqrt_form_gap = std::abs(pair.lambda - alt);
  const bool double_root = nu.is_real && nu.n >= 1 && std::abs(S - critical_s(nu.n).S_m) <= kDoubleRootTol;
  pair.sqrt_form_applies = nu.n >= 1 && (!nu.is_real || double_root);
  return pair;
}

std::vector<EigenPair> spectrum_slice(const ModelParams& params, int n_max) {
  if (n_max < 0) throw std::invalid_argument("spectrum_slice: n_max must be >= 0");
  std::vector<EigenPair> out;
  out.reserve(1 + 2 * static_cast<std::size_t>(n_max));
  out.push_back(dominant(params));
  for (int n = 1; n <= n_max; ++n) {
    for (int j = 1; j <= 2; ++j) out.push_back(lambda_from_nu(params, nu_root(params, n, j)));
  }
  return out;
}

EigenPair dominant(const ModelParams& params) { return lambda_from_nu(params, nu_zero(params)); }

Complex asymptotic_nu(const ModelParams& params, int n, int j) {
  check_index(n, j);
  const double a = (n + 0.5) * kPi;
  const double sign_j = (j == 1) ? -1.0 : 1.0;  // (-1)^j
  return Complex{a, -sign_j * std::log(2.0 * params.S() * a)};
}

Complex asymptotic_lambda(const ModelParams& params, int n, int j) {
  check_index(n, j);
  const double S = params.S();
  const double a = (n + 0.5) * kPi;
  const double sign_j = (j == 1) ? -1.0 : 1.0;
  return Complex{-1.0 - S * std::log(2.0 * S * a), -sign_j * S * a};
}

}  // namespace crw
