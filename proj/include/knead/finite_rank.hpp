#ifndef KNEAD_FINITE_RANK_HPP
#define KNEAD_FINITE_RANK_HPP

#include <functional>
#include <optional>
#include <vector>

#include "knead/formal.hpp"
#include "knead/series.hpp"

namespace knead {

struct PointImage {
  Rational point;
  Rational weight;
};

// Action of the chosen base extension on basis points: image point with a
// multiplicative weight, or nullopt when the point is annihilated.
using BaseAction = std::function<std::optional<PointImage>(const Rational&)>;

struct RankOneTerm {
  Form form;
  FormalVector vector;
};

// A pair of endomorphisms with finite rank, given concretely by the base
// extension and the rank-one corrections whose sum is the difference of the
// two extensions.
struct FiniteRankPair {
  BaseAction base;
  std::vector<RankOneTerm> corrections;
};

FormalVector apply_base(const FiniteRankPair& pair, const FormalVector& v);
// The full extension: base plus all rank-one corrections.
FormalVector apply_extended(const FiniteRankPair& pair, const FormalVector& v);

// k x k matrix with entry (i,j) = sum_n form_i(base^n(v_j)) z^n.
SeriesMatrix pair_matrix(const FiniteRankPair& pair, int degree);

// det(Id - z M(z)) for the pair matrix; constant term 1.
TruncatedSeries pair_determinant(const FiniteRankPair& pair, int degree);

// Traces tr(phi_0^n, phi_1^n), n = 1..n_max, recovered from the determinant
// by the log-derivative identity. Requires n_max <= degree.
std::vector<Rational> pair_traces(const FiniteRankPair& pair, int n_max, int degree);

struct MultiplicativityReport {
  bool equal = false;
  int first_mismatch = -1;
  TruncatedSeries middle, product;
  MultiplicativityReport(int degree) : middle(degree), product(degree) {}
};

// Coefficient-wise comparison of D_Pv against D_Pu * D_Pw up to `degree`.
MultiplicativityReport check_multiplicativity(const FiniteRankPair& pu, const FiniteRankPair& pv,
                                              const FiniteRankPair& pw, int degree);

struct RootBoundReport {
  bool ratio_ok = false;       // g * D == D_perturbed coefficient-wise
  int first_mismatch = -1;
  bool root_forced = false;    // growth rate exceeds 1
  double predicted_modulus = 1.0;
  bool root_found = false;
  double root_modulus = 0.0;
};

// Instantiates the root-localization identity: g(z) = 1 - sum_n
// xi(ext^n(v)) z^{n+1} equals D_{(phi0, phi1 + xi (x) v)} / D_{(phi0,
// phi1)}, and a forced zero of D at the reciprocal growth rate.
RootBoundReport perturbed_root_bound(const FiniteRankPair& pair, const Form& xi, const FormalVector& v,
                                     int degree, double tol);

}  // namespace knead

#endif
