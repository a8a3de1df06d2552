#ifndef KNEAD_APPENDIX_SELFTEST_HPP
#define KNEAD_APPENDIX_SELFTEST_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "knead/finite_rank.hpp"
#include "knead/graph.hpp"
#include "knead/linalg.hpp"

namespace knead {

// A finite-rank pair supported on the point set {0, 1, ..., size-1},
// together with the dense matrices of its two extensions on that basis.
struct DensePairFixture {
  FiniteRankPair pair;
  RationalMatrix base_matrix;      // phi_0 extension
  RationalMatrix extended_matrix;  // phi_1 extension
  int size = 0;
};

DensePairFixture random_dense_pair(std::mt19937_64& rng);

// tr(ext^n - base^n) for n = 1..n_max, by plain matrix powers.
std::vector<Rational> dense_pair_traces(const DensePairFixture& fixture, int n_max);

// The pair (0, f_*1) realized synthetically on Ker(pi_0).
FiniteRankPair alpha_pair(const InducedMap& f);
// The pair (beta_0, beta_1) on chains of the graph, with the component-root
// correction that keeps the extension inside the difference subspace.
FiniteRankPair beta_pair(const InducedMap& f);

struct SelftestReport {
  int pairs = 0;
  int trace_failures = 0;
  int duality_failures = 0;
  bool ok() const { return trace_failures == 0 && duality_failures == 0; }
};

// Random pairs on finite orbit sets: pair_traces against the dense oracle
// and the det/trace duality, all exact.
SelftestReport appendix_selftest(std::uint64_t seed, int num_pairs, int n_max, int degree);

}  // namespace knead

#endif
