#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "crw/params.hpp"
#include "crw/simulator.hpp"

namespace crw {

enum class InitialKind { Eigen, Box, Hat, Random, Jump };

std::optional<InitialKind> parse_initial_kind(std::string_view name);
const char* to_string(InitialKind kind);

/// Unit-L2 dominant eigenfunction.
State eigen_data(const ModelParams& params, int intervals);

/// u = v = indicator of [-1/4, 1/4], cell-averaged so that both grid
/// sublattices carry the same mass.
State box_data(int intervals);

/// u = v = max(0, 1 - 4|x|).
State hat_data(int intervals);

/// Smooth data positive in the interior: u = (1/2 + x) g(x), v = (1/2 - x) h(x)
/// with g, h random cosine sums bounded below by 0.2.
State smooth_random_data(int intervals, std::uint64_t seed);

/// u = v = 1 away from the inflow boundaries, so each component jumps there.
State jump_data(int intervals);

State make_initial(InitialKind kind, const ModelParams& params, int intervals, std::uint64_t seed);

}  // namespace crw
