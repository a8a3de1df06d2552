#include "knead/appendix_selftest.hpp"

#include <algorithm>
#include <memory>

#include "knead/error.hpp"

namespace knead {

DensePairFixture random_dense_pair(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size_dist(3, 7);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<int> weight_dist(0, 3);
  const long weights[4] = {-2, -1, 1, 2};

  DensePairFixture fixture;
  int s = size_dist(rng);
  fixture.size = s;
  fixture.base_matrix = RationalMatrix(s, s);

  std::uniform_int_distribution<int> point_dist(0, s - 1);
  std::vector<int> image(static_cast<size_t>(s));
  std::vector<long> weight(static_cast<size_t>(s), 0);
  for (int i = 0; i < s; ++i) {
    if (coin(rng) == 0) continue;  // annihilated point
    image[static_cast<size_t>(i)] = point_dist(rng);
    weight[static_cast<size_t>(i)] = weights[weight_dist(rng)];
    fixture.base_matrix.at(image[static_cast<size_t>(i)], i) = weight[static_cast<size_t>(i)];
  }
  fixture.pair.base = [image, weight](const Rational& x) -> std::optional<PointImage> {
    long i = x.get_num().get_si();
    if (weight[static_cast<size_t>(i)] == 0) return std::nullopt;
    return PointImage{Rational(image[static_cast<size_t>(i)]), Rational(weight[static_cast<size_t>(i)])};
  };

  fixture.extended_matrix = fixture.base_matrix;
  std::uniform_int_distribution<int> k_dist(1, 3);
  std::uniform_int_distribution<int> form_dist(-1, 1);
  int k = k_dist(rng);
  for (int t = 0; t < k; ++t) {
    std::vector<long> values(static_cast<size_t>(s));
    for (auto& v : values) v = form_dist(rng);
    Form form([values](const Rational& x) { return Rational(values[static_cast<size_t>(x.get_num().get_si())]); });

    FormalVector v;
    int terms = 1 + coin(rng) % 2;
    for (int m = 0; m < terms; ++m) v.add(Rational(point_dist(rng)), Rational(weights[weight_dist(rng)]));

    for (int j = 0; j < s; ++j) {
      if (values[static_cast<size_t>(j)] == 0) continue;
      for (const auto& [pt, coeff] : v.terms())
        fixture.extended_matrix.at(static_cast<int>(pt.get_num().get_si()), j) +=
            Rational(values[static_cast<size_t>(j)]) * coeff;
    }
    fixture.pair.corrections.push_back(RankOneTerm{form, v});
  }
  return fixture;
}

std::vector<Rational> dense_pair_traces(const DensePairFixture& fixture, int n_max) {
  std::vector<Rational> traces;
  RationalMatrix base_power = RationalMatrix::identity(fixture.size);
  RationalMatrix ext_power = base_power;
  for (int n = 1; n <= n_max; ++n) {
    base_power = base_power * fixture.base_matrix;
    ext_power = ext_power * fixture.extended_matrix;
    traces.push_back(ext_power.trace() - base_power.trace());
  }
  return traces;
}

FiniteRankPair alpha_pair(const InducedMap& f) {
  const RationalMatrix& h1 = f.h1_matrix();
  int rank = h1.rows();
  FiniteRankPair pair;
  pair.base = [](const Rational&) -> std::optional<PointImage> { return std::nullopt; };
  for (int i = 0; i < rank; ++i) {
    std::vector<Rational> row(static_cast<size_t>(rank));
    for (int j = 0; j < rank; ++j) row[static_cast<size_t>(j)] = h1.at(i, j);
    Form form([row](const Rational& x) {
      long j = x.get_num().get_si();
      return row[static_cast<size_t>(j)];
    });
    pair.corrections.push_back(RankOneTerm{form, FormalVector::point(Rational(i))});
  }
  return pair;
}

namespace {

Rational canonical(const InducedMap& f, const GraphPoint& p) {
  if (p.class_id >= 0) return f.graph().classes()[static_cast<size_t>(p.class_id)].front();
  return p.x;
}

GraphPoint graph_point_of(const InducedMap& f, const Rational& x) {
  int cls = f.graph().class_of(x);
  return GraphPoint{cls, x};
}

int component_of(const InducedMap& f, const Rational& x) {
  int cls = f.graph().class_of(x);
  if (cls >= 0) return f.graph().class_component(cls);
  return f.graph().edge_component(f.map().domain().interval_index(x));
}

}  // namespace

FiniteRankPair beta_pair(const InducedMap& induced) {
  auto f = std::make_shared<const InducedMap>(induced);

  std::vector<Rational> killed;
  for (const auto& c : f->map().critical_points()) {
    Rational rep = canonical(*f, f->project(c));
    if (std::find(killed.begin(), killed.end(), rep) == killed.end()) killed.push_back(rep);
  }
  std::sort(killed.begin(), killed.end());

  FiniteRankPair pair;
  pair.base = [f, killed](const Rational& x) -> std::optional<PointImage> {
    if (std::binary_search(killed.begin(), killed.end(), x)) return std::nullopt;
    return PointImage{canonical(*f, f->step(graph_point_of(*f, x))), Rational(1)};
  };

  for (const auto& rep : killed) {
    Rational image = canonical(*f, f->step(graph_point_of(*f, rep)));
    pair.corrections.push_back(RankOneTerm{Form::indicator_point(rep), FormalVector::point(image)});
  }
  for (int comp = 0; comp < f->graph().num_components(); ++comp) {
    Rational root;
    for (int e = 0; e < f->graph().num_edges(); ++e)
      if (f->graph().edge_component(e) == comp) {
        const auto& iv = f->map().domain().intervals()[static_cast<size_t>(e)];
        root = canonical(*f, f->project(iv.lo));
        break;
      }
    Rational image = canonical(*f, f->step(graph_point_of(*f, root)));
    Form indicator([f, comp](const Rational& x) { return component_of(*f, x) == comp ? Rational(1) : Rational(0); });
    pair.corrections.push_back(RankOneTerm{indicator, FormalVector::point(image, Rational(-1))});
  }
  return pair;
}

SelftestReport appendix_selftest(std::uint64_t seed, int num_pairs, int n_max, int degree) {
  std::mt19937_64 rng(seed);
  SelftestReport report;
  report.pairs = num_pairs;
  for (int i = 0; i < num_pairs; ++i) {
    DensePairFixture fixture = random_dense_pair(rng);

    std::vector<Rational> dense = dense_pair_traces(fixture, degree);
    std::vector<Rational> recovered = pair_traces(fixture.pair, n_max, degree);
    for (int n = 1; n <= n_max; ++n)
      if (recovered[static_cast<size_t>(n - 1)] != dense[static_cast<size_t>(n - 1)]) {
        report.trace_failures += 1;
        break;
      }

    TruncatedSeries a(degree);
    for (int n = 1; n <= degree; ++n) a.at(n) = -dense[static_cast<size_t>(n - 1)] / Rational(n);
    if (!(exp(a) == pair_determinant(fixture.pair, degree))) report.duality_failures += 1;
  }
  return report;
}

}  // namespace knead
