#include "knead/graph.hpp"

#include <algorithm>
#include <cmath>

#include "knead/error.hpp"

namespace knead {

namespace {

int find_root(std::vector<int>& parent, int v) {
  while (parent[static_cast<size_t>(v)] != v) {
    parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
    v = parent[static_cast<size_t>(v)];
  }
  return v;
}

}  // namespace

GluedGraph::GluedGraph(const Omega& omega, const Gluing& gluing) : omega_(omega) {
  std::vector<Rational> boundary = omega.boundary_points();
  std::vector<bool> used(boundary.size(), false);

  auto boundary_index = [&](const Rational& p) -> int {
    for (size_t i = 0; i < boundary.size(); ++i)
      if (boundary[i] == p) return static_cast<int>(i);
    return -1;
  };

  for (const auto& cls : gluing.classes) {
    if (cls.empty()) continue;
    std::vector<Rational> members = cls;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() != cls.size())
      raise(Errc::semantic_error, "gluing class repeats a point");
    for (const auto& p : members) {
      int idx = boundary_index(p);
      if (idx < 0)
        raise(Errc::unknown_boundary_point, to_string(p) + " is not a boundary point of Omega");
      if (used[static_cast<size_t>(idx)])
        raise(Errc::semantic_error, "boundary point " + to_string(p) + " appears in two gluing classes");
      used[static_cast<size_t>(idx)] = true;
    }
    classes_.push_back(std::move(members));
  }
  for (size_t i = 0; i < boundary.size(); ++i)
    if (!used[i]) classes_.push_back({boundary[i]});
  std::sort(classes_.begin(), classes_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  // components over classes, merged through edges
  std::vector<int> parent(classes_.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  for (const auto& iv : omega.intervals()) {
    int a = class_of(iv.lo), b = class_of(iv.hi);
    parent[static_cast<size_t>(find_root(parent, a))] = find_root(parent, b);
  }
  class_component_.assign(classes_.size(), -1);
  for (size_t i = 0; i < classes_.size(); ++i) {
    int root = find_root(parent, static_cast<int>(i));
    if (class_component_[static_cast<size_t>(root)] < 0)
      class_component_[static_cast<size_t>(root)] = num_components_++;
    class_component_[i] = class_component_[static_cast<size_t>(root)];
  }
  edge_component_.resize(static_cast<size_t>(omega.size()));
  for (int e = 0; e < omega.size(); ++e)
    edge_component_[static_cast<size_t>(e)] =
        class_component_[static_cast<size_t>(class_of(omega.intervals()[static_cast<size_t>(e)].lo))];

  // cycle space: kernel of the per-class net-flow matrix
  RationalMatrix flow(num_classes(), num_edges());
  for (int e = 0; e < num_edges(); ++e) {
    const auto& iv = omega.intervals()[static_cast<size_t>(e)];
    flow.at(class_of(iv.hi), e) += 1;
    flow.at(class_of(iv.lo), e) -= 1;
  }
  cycle_basis_ = kernel_basis(flow);

  int expected = num_edges() - num_classes() + num_components_;
  if (static_cast<int>(cycle_basis_.size()) != expected)
    raise(Errc::semantic_error, "cycle space rank disagrees with E - V + C");
}

int GluedGraph::class_of(const Rational& p) const {
  for (size_t i = 0; i < classes_.size(); ++i)
    for (const auto& q : classes_[i])
      if (q == p) return static_cast<int>(i);
  return -1;
}

std::vector<int> GluedGraph::vertices() const {
  std::vector<int> out;
  for (int i = 0; i < num_classes(); ++i)
    if (is_vertex(i)) out.push_back(i);
  return out;
}

GluedGraph build_graph(const Omega& omega, const Gluing& gluing) { return GluedGraph(omega, gluing); }

GraphPoint InducedMap::project(const Rational& x) const {
  int cls = graph_.class_of(x);
  if (cls >= 0) return GraphPoint{cls, x};
  return GraphPoint{-1, x};
}

SidedPoint InducedMap::sided_step(const SidedPoint& p) const {
  auto limit = f_.one_sided(p.x, p.side);
  if (!limit)
    raise(Errc::semantic_error, "illegal germ at " + to_string(p.x));
  auto [y, eps] = *limit;
  Side out;
  if (p.side == Side::plus)
    out = eps > 0 ? Side::plus : Side::minus;
  else
    out = eps > 0 ? Side::minus : Side::plus;
  return SidedPoint{y, out};
}

std::vector<SidedPoint> InducedMap::germs_at(const GraphPoint& p) const {
  std::vector<SidedPoint> out;
  if (p.class_id >= 0) {
    for (const auto& member : graph_.classes()[static_cast<size_t>(p.class_id)]) {
      if (!f_.domain().is_left_endpoint(member)) out.push_back(SidedPoint{member, Side::minus});
      if (!f_.domain().is_right_endpoint(member)) out.push_back(SidedPoint{member, Side::plus});
    }
  } else {
    out.push_back(SidedPoint{p.x, Side::minus});
    out.push_back(SidedPoint{p.x, Side::plus});
  }
  return out;
}

GraphPoint InducedMap::step(const GraphPoint& p) const {
  if (p.class_id >= 0) {
    const auto& members = graph_.classes()[static_cast<size_t>(p.class_id)];
    const Rational& c = members.front();
    Side side = f_.domain().is_left_endpoint(c) ? Side::plus : Side::minus;
    return project(f_.one_sided(c, side)->first);
  }
  if (f_.is_critical(p.x)) {
    Side side = f_.one_sided(p.x, Side::minus) ? Side::minus : Side::plus;
    return project(f_.one_sided(p.x, side)->first);
  }
  return project(f_.eval(p.x));
}

InducedMap InducedMap::validate(PMMap f, const Gluing& gluing) {
  GluedGraph graph(f.domain(), gluing);
  InducedMap induced(std::move(f), std::move(graph));
  const PMMap& F = induced.f_;
  const GluedGraph& G = induced.graph_;

  // Boundary and interior critical points: all one-sided images of a glued
  // point must land on one graph point.
  for (int cls = 0; cls < G.num_classes(); ++cls) {
    bool have = false;
    GraphPoint image;
    for (const auto& germ : induced.germs_at(GraphPoint{cls, G.classes()[static_cast<size_t>(cls)].front()})) {
      GraphPoint gp = induced.project(F.one_sided(germ.x, germ.side)->first);
      if (!have) {
        image = gp;
        have = true;
      } else if (!(gp == image)) {
        raise(Errc::inconsistent_gluing,
              "one-sided images of class " + to_string(germ.x) + " do not glue to one point");
      }
    }
  }
  for (const auto& c : F.critical_points()) {
    if (F.domain().is_boundary(c)) continue;
    GraphPoint left = induced.project(F.one_sided(c, Side::minus)->first);
    GraphPoint right = induced.project(F.one_sided(c, Side::plus)->first);
    if (!(left == right))
      raise(Errc::inconsistent_gluing,
            "one-sided images at interior critical point " + to_string(c) + " disagree after gluing");
  }

  // At a two-member (non-vertex) class the graph is locally an interval and
  // the germ map must not collapse the two half-edges.
  for (int cls = 0; cls < G.num_classes(); ++cls) {
    const auto& members = G.classes()[static_cast<size_t>(cls)];
    if (members.size() != 2) continue;
    auto germs = induced.germs_at(GraphPoint{cls, members.front()});
    if (induced.sided_step(germs[0]) == induced.sided_step(germs[1]))
      raise(Errc::inconsistent_gluing,
            "map folds at the glued non-vertex class containing " + to_string(members.front()));
  }

  // Vertices live in pi(boundary) by construction of the glued graph.
  for (int v : G.vertices())
    if (G.classes()[static_cast<size_t>(v)].empty())
      raise(Errc::vertex_not_covered, "vertex class without boundary members");

  induced.compute_h0();
  induced.compute_h1();
  return induced;
}

void InducedMap::compute_h0() {
  h0_map_.assign(static_cast<size_t>(graph_.num_components()), -1);
  for (int e = 0; e < graph_.num_edges(); ++e) {
    const auto& iv = f_.domain().intervals()[static_cast<size_t>(e)];
    int comp = graph_.edge_component(e);
    // any branch inside this edge determines (and must agree on) the image
    // component, by continuity of the induced map
    for (const auto& b : f_.branches()) {
      if (b.lo < iv.lo || b.hi > iv.hi) continue;
      Rational mid = b.eval((b.lo + b.hi) / 2);
      int image = graph_.edge_component(f_.domain().interval_index(mid));
      int& slot = h0_map_[static_cast<size_t>(comp)];
      if (slot < 0) slot = image;
      else if (slot != image)
        raise(Errc::inconsistent_gluing, "component image is not single-valued");
    }
  }
}

RationalMatrix InducedMap::h0_matrix() const {
  int k = graph_.num_components();
  RationalMatrix m(k, k);
  for (int i = 0; i < k; ++i) m.at(h0_map_[static_cast<size_t>(i)], i) = 1;
  return m;
}

void InducedMap::compute_h1() {
  const auto& basis = graph_.cycle_basis();
  int rank = static_cast<int>(basis.size());
  h1_ = RationalMatrix(rank, rank);
  if (rank == 0) return;

  RationalMatrix basis_matrix(graph_.num_edges(), rank);
  for (int j = 0; j < rank; ++j)
    for (int e = 0; e < graph_.num_edges(); ++e)
      basis_matrix.at(e, j) = basis[static_cast<size_t>(j)][static_cast<size_t>(e)];

  for (int j = 0; j < rank; ++j) {
    // image chain of the cycle: sum_i lambda_i F_#1(b_i - a_i)
    FormalVector chain;
    for (int e = 0; e < graph_.num_edges(); ++e) {
      const Rational& lambda = basis[static_cast<size_t>(j)][static_cast<size_t>(e)];
      if (sgn(lambda) == 0) continue;
      const auto& iv = f_.domain().intervals()[static_cast<size_t>(e)];
      for (const auto& c : f_.critical_points()) {
        if (c < iv.lo || c > iv.hi) continue;
        if (c > iv.lo) chain.add(f_.one_sided(c, Side::minus)->first, lambda);    // F(c-)
        if (c < iv.hi) chain.add(f_.one_sided(c, Side::plus)->first, -lambda);    // -F(c+)
      }
    }

    // interior coefficients must cancel; the rest is supported on the
    // boundary with coeff(a_i) = -coeff(b_i)
    std::vector<Rational> mu(static_cast<size_t>(graph_.num_edges()), Rational(0));
    for (const auto& [point, coeff] : chain.terms()) {
      if (!f_.domain().is_boundary(point))
        raise(Errc::interior_residue,
              "image chain keeps interior point " + to_string(point) + " with coefficient " + to_string(coeff));
    }
    for (int e = 0; e < graph_.num_edges(); ++e) {
      const auto& iv = f_.domain().intervals()[static_cast<size_t>(e)];
      Rational at_hi = chain.coefficient(iv.hi);
      Rational at_lo = chain.coefficient(iv.lo);
      if (at_lo + at_hi != 0)
        raise(Errc::interior_residue, "image chain is unbalanced on edge " + std::to_string(e));
      mu[static_cast<size_t>(e)] = at_hi;
    }

    auto x = solve(basis_matrix, mu);
    if (!x)
      raise(Errc::not_in_cycle_space, "image chain of basis cycle " + std::to_string(j) +
                                          " does not satisfy the flow condition");
    for (int i = 0; i < rank; ++i) h1_.at(i, j) = (*x)[static_cast<size_t>(i)];
  }
}

double InducedMap::h_hom() const {
  double r = spectral_radius(h1_);
  return std::log(std::max(1.0, r));
}

InducedMap validate_induced(PMMap f, const Gluing& gluing) {
  return InducedMap::validate(std::move(f), gluing);
}

}  // namespace knead
