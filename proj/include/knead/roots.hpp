#ifndef KNEAD_ROOTS_HPP
#define KNEAD_ROOTS_HPP

#include <complex>
#include <optional>
#include <vector>

#include "knead/rational.hpp"
#include "knead/series.hpp"

namespace knead {

// All roots of c0 + c1 z + ... (trailing zeros ignored) via companion-matrix
// eigenvalues with one Newton refinement step per root.
std::vector<std::complex<double>> poly_roots(const std::vector<Rational>& coeffs);

struct RootInfo {
  std::complex<double> root;
  double modulus = 0.0;
  double residual = 0.0;
};

// Root of the truncation polynomial of smallest modulus with modulus <
// r_max, or nullopt. The constant term must be 1. Throws UnstableRoot when
// the half-degree truncation disagrees beyond `tol`.
std::optional<RootInfo> smallest_root_in_disk(const TruncatedSeries& s, double r_max, double tol);

}  // namespace knead

#endif
