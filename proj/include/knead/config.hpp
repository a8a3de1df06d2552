#ifndef KNEAD_CONFIG_HPP
#define KNEAD_CONFIG_HPP

#include <cstdint>
#include <string>

#include "knead/error.hpp"

namespace knead {

struct RunConfig {
  int degree = 64;            // series truncation degree
  int n_max = 12;             // max iterate for counting tables
  long lap_budget = 2'000'000;
  int orbit_horizon = 256;
  double tol_root = 1e-3;     // root-based comparisons
  double tol_fit = 5e-2;      // growth-rate fits
  std::string format = "json";
  std::uint64_t seed = 1;
  int jobs = 1;

  void check() const {
    if (degree < 1 || n_max < 1 || lap_budget < 1 || orbit_horizon < 1 || jobs < 1)
      raise(Errc::semantic_error, "config values must be positive");
    if (tol_root <= 0 || tol_root >= 1 || tol_fit <= 0 || tol_fit >= 1)
      raise(Errc::semantic_error, "tolerances must lie in (0, 1)");
  }
};

}  // namespace knead

#endif
