#include "knead/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "knead/error.hpp"

namespace knead {

namespace {

std::vector<double> scaled_double_coeffs(const std::vector<Rational>& coeffs, int degree) {
  // Scale by the largest magnitude so conversion cannot overflow.
  Rational cmax(0);
  for (int n = 0; n <= degree; ++n) {
    Rational a = abs(coeffs[static_cast<size_t>(n)]);
    if (a > cmax) cmax = a;
  }
  std::vector<double> out(static_cast<size_t>(degree) + 1);
  for (int n = 0; n <= degree; ++n)
    out[static_cast<size_t>(n)] = to_double(coeffs[static_cast<size_t>(n)] / cmax);
  return out;
}

std::complex<double> horner(const std::vector<double>& c, std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (size_t n = c.size(); n-- > 0;) acc = acc * z + c[n];
  return acc;
}

std::complex<double> horner_derivative(const std::vector<double>& c, std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (size_t n = c.size(); n-- > 1;) acc = acc * z + double(n) * c[n];
  return acc;
}

std::vector<std::complex<double>> roots_of(const std::vector<double>& c) {
  int deg = static_cast<int>(c.size()) - 1;
  std::vector<std::complex<double>> roots;
  if (deg < 1) return roots;
  if (deg == 1) {
    roots.emplace_back(-c[0] / c[1], 0.0);
  } else {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<size_t>(i)] / c[static_cast<size_t>(deg)];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, /*computeEigenvectors=*/false);
    for (int i = 0; i < deg; ++i) roots.push_back(solver.eigenvalues()(i));
  }
  // One Newton step from each eigenvalue.
  for (auto& z : roots) {
    std::complex<double> dp = horner_derivative(c, z);
    if (std::abs(dp) > 1e-14) {
      std::complex<double> z1 = z - horner(c, z) / dp;
      if (std::abs(horner(c, z1)) <= std::abs(horner(c, z))) z = z1;
    }
  }
  return roots;
}

struct DiskRoot {
  bool found = false;
  std::complex<double> root;
  double residual = 0.0;
};

DiskRoot smallest_in_disk_at_degree(const TruncatedSeries& s, int degree, double r_max) {
  int pd = -1;
  for (int n = std::min(degree, s.degree()); n >= 0; --n)
    if (sgn(s[n]) != 0) {
      pd = n;
      break;
    }
  DiskRoot out;
  if (pd < 1) return out;

  std::vector<Rational> coeffs(s.coefficients().begin(), s.coefficients().begin() + pd + 1);
  std::vector<double> c = scaled_double_coeffs(coeffs, pd);
  double best = r_max;
  for (const auto& z : roots_of(c)) {
    double m = std::abs(z);
    if (m < best) {
      best = m;
      out.found = true;
      out.root = z;
      out.residual = std::abs(horner(c, z));
    }
  }
  return out;
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const std::vector<Rational>& coeffs) {
  int pd = -1;
  for (int n = static_cast<int>(coeffs.size()) - 1; n >= 0; --n)
    if (sgn(coeffs[static_cast<size_t>(n)]) != 0) {
      pd = n;
      break;
    }
  if (pd < 1) return {};
  std::vector<Rational> trimmed(coeffs.begin(), coeffs.begin() + pd + 1);
  return roots_of(scaled_double_coeffs(trimmed, pd));
}

std::optional<RootInfo> smallest_root_in_disk(const TruncatedSeries& s, double r_max, double tol) {
  if (s[0] != 1) raise(Errc::wrong_constant_term, "smallest_root_in_disk needs constant term 1");

  DiskRoot full = smallest_in_disk_at_degree(s, s.degree(), r_max);
  if (s.degree() >= 4) {
    DiskRoot half = smallest_in_disk_at_degree(s, s.degree() / 2, r_max);
    bool full_poly_fits = s.poly_degree() <= s.degree() / 2;
    if (!full_poly_fits) {
      if (full.found != half.found)
        raise(Errc::unstable_root, "root presence changes under truncation halving");
      if (full.found && std::fabs(std::abs(full.root) - std::abs(half.root)) > tol)
        raise(Errc::unstable_root, "root modulus moves more than tolerance under truncation halving");
    }
  }
  if (!full.found) return std::nullopt;
  RootInfo info;
  info.root = full.root;
  info.modulus = std::abs(full.root);
  info.residual = full.residual;
  return info;
}

}  // namespace knead
