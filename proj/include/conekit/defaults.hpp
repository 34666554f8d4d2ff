#pragma once

#include <cstdint>

namespace conekit {

// Central tolerance and budget defaults. CLI reports echo these values so
// results can be reproduced from the report alone.
struct defaults {
  // Gram feasibility: eigenvalue floor and l1 coefficient residual.
  static constexpr double psd_tol = 1e-8;
  static constexpr long max_iterations = 50000;

  // Bisection for the cone seminorm upper bound.
  static constexpr double bisect_tol = 1e-6;
  static constexpr int bisect_max_steps = 60;

  // Point-witness separation threshold.
  static constexpr double separation_tol = 1e-9;

  // Rejection sampling.
  static constexpr int sample_count = 200;
  static constexpr std::uint64_t sample_seed = 1;
  static constexpr long max_trials_factor = 1000;

  // Archimedean witness search.
  static constexpr double witness_n_max = 1 << 20;
  static constexpr int witness_d_max = 4;

  // Closure membership.
  static constexpr int closure_d_max = 8;

  static constexpr const char* tool_version = "0.1.0";
};

}  // namespace conekit
