#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "crw/params.hpp"

namespace crw {

using Complex = std::complex<double>;

/// Symmetric eigenfunctions have v(x) = u(-x) and come from sin(nu) = S nu;
/// antisymmetric ones have v(x) = -u(-x) and come from sin(nu) = -S nu.
enum class Parity { Symmetric, Antisymmetric };

/// Even indices are symmetric, odd indices antisymmetric.
Parity parity_of_index(int n);

/// +1 for Symmetric, -1 for Antisymmetric.
double parity_sign(Parity parity);

const char* to_string(Parity parity);

/// One root nu_{n,j} of sin(nu) = +-S nu. For n = 0 the index j is 0.
struct NuRoot {
  int n{0};
  int j{0};
  Complex value{};
  Parity parity{Parity::Symmetric};
  bool is_real{false};
};

/// At S = 1 the dominant eigenvalue -2 comes from nu = 0, which is spurious
/// for every other S. This marker stands in for that root.
struct DoubleRootAtSOne {};

using NuZero = std::variant<NuRoot, DoubleRootAtSOne>;

struct EigenPair {
  Complex lambda{};
  NuZero nu{};
  Parity parity{Parity::Symmetric};
  int n{0};
  int j{0};
  /// |lambda - (-1 - hsqrt(1 - S^2 nu^2))|. Only meaningful when
  /// sqrt_form_applies (non-real roots and double roots, n >= 1).
  double sqrt_form_gap{0.0};
  bool sqrt_form_applies{false};

  bool is_double_root_at_s_one() const { return std::holds_alternative<DoubleRootAtSOne>(nu); }
  /// The generating nu; zero for the S = 1 marker.
  Complex nu_value() const;
  bool is_real() const;
};

/// Data of the m-th collision of two real roots: nu_m solves tan(x) = x in
/// (m pi, (m + 1/2) pi) and S_m = |cos(nu_m)|.
struct CriticalS {
  int m{0};
  double nu_m{0.0};
  double S_m{0.0};
};

/// Square root with hsqrt(0) = 0 and -pi/2 < arg <= pi/2.
Complex hsqrt(Complex z);

/// |sin(nu) - sign * S * nu| for the parity of the root.
double characteristic_residual(const ModelParams& params, const NuRoot& root);

/// Scaled residual of tan(x) = x: |tan(x) - x| / (1 + x^2), i.e. the
/// backward error in x. The unscaled residual grows like x^2 ulp(x).
double critical_residual(double x);

CriticalS critical_s(int m);

NuZero nu_zero(const ModelParams& params);

/// Root nu_{n,j}, n >= 1, j in {1, 2}. Real roots are ordered
/// nu_{n,1} < nu_{n,2}; non-real ones satisfy Im(nu_{n,1}) > 0 and
/// nu_{n,2} = conj(nu_{n,1}). Throws ConvergenceFailure if no path meets the
/// residual bound.
NuRoot nu_root(const ModelParams& params, int n, int j);

EigenPair lambda_from_nu(const ModelParams& params, const NuZero& root);

/// lambda_0 followed by lambda_{n,1}, lambda_{n,2} for n = 1..n_max.
std::vector<EigenPair> spectrum_slice(const ModelParams& params, int n_max);

EigenPair dominant(const ModelParams& params);

Complex asymptotic_nu(const ModelParams& params, int n, int j);
Complex asymptotic_lambda(const ModelParams& params, int n, int j);

}  // namespace crw
