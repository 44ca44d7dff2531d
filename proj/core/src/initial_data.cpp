#include "crw/initial_data.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "crw/eigenfunctions.hpp"
#include "crw/spectrum.hpp"

namespace crw {

namespace {

void enforce_inflow(State& s) {
  s.u.front() = 0.0;
  s.v.back() = 0.0;
}

}  // namespace

std::optional<InitialKind> parse_initial_kind(std::string_view name) {
  if (name == "eigen") return InitialKind::Eigen;
  if (name == "box") return InitialKind::Box;
  if (name == "hat") return InitialKind::Hat;
  if (name == "random") return InitialKind::Random;
  if (name == "jump") return InitialKind::Jump;
  return std::nullopt;
}

const char* to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::Eigen: return "eigen";
    case InitialKind::Box: return "box";
    case InitialKind::Hat: return "hat";
    case InitialKind::Random: return "random";
    case InitialKind::Jump: return "jump";
  }
  return "unknown";
}

State eigen_data(const ModelParams& params, int intervals) {
  State s = State::zeros(intervals);
  const auto fn = evaluate(dominant(params), s.x, Normalization::UnitL2);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    s.u[i] = fn.u[i].real();
    s.v[i] = fn.v[i].real();
  }
  enforce_inflow(s);
  return s;
}

State box_data(int intervals) {
  State s = State::zeros(intervals);
  const double h = s.dx();
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double lo = std::max(s.x[i] - 0.5 * h, -0.25);
    const double hi = std::min(s.x[i] + 0.5 * h, 0.25);
    const double fraction = std::max(hi - lo, 0.0) / h;
    s.u[i] = fraction;
    s.v[i] = fraction;
  }
  enforce_inflow(s);
  return s;
}

State hat_data(int intervals) {
  State s = State::zeros(intervals);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double value = std::max(0.0, 1.0 - 4.0 * std::abs(s.x[i]));
    s.u[i] = value;
    s.v[i] = value;
  }
  enforce_inflow(s);
  return s;
}

State smooth_random_data(int intervals, std::uint64_t seed) {
  constexpr int kModes = 4;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coefficient(-0.2, 0.2);
  std::array<double, kModes> a{};
  std::array<double, kModes> b{};
  for (auto& c : a) c = coefficient(rng);
  for (auto& c : b) c = coefficient(rng);

  State s = State::zeros(intervals);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double y = s.x[i] + 0.5;
    double g = 1.0;
    double h = 1.0;
    for (int k = 0; k < kModes; ++k) {
      g += a[k] * std::cos((k + 1) * std::numbers::pi * y);
      h += b[k] * std::cos((k + 1) * std::numbers::pi * y);
    }
    s.u[i] = (0.5 + s.x[i]) * g;
    s.v[i] = (0.5 - s.x[i]) * h;
  }
  enforce_inflow(s);
  return s;
}

State jump_data(int intervals) {
  State s = State::zeros(intervals);
  std::fill(s.u.begin(), s.u.end(), 1.0);
  std::fill(s.v.begin(), s.v.end(), 1.0);
  enforce_inflow(s);
  return s;
}

State make_initial(InitialKind kind, const ModelParams& params, int intervals, std::uint64_t seed) {
  switch (kind) {
    case InitialKind::Eigen: return eigen_data(params, intervals);
    case InitialKind::Box: return box_data(intervals);
    case InitialKind::Hat: return hat_data(intervals);
    case InitialKind::Random: return smooth_random_data(intervals, seed);
    case InitialKind::Jump: return jump_data(intervals);
  }
  return State::zeros(intervals);
}

}  // namespace crw
