#ifndef KNEAD_GRAPH_HPP
#define KNEAD_GRAPH_HPP

#include <utility>
#include <vector>

#include "knead/linalg.hpp"
#include "knead/pm_map.hpp"

namespace knead {

// Partition of the boundary of Omega; unlisted boundary points become
// singleton classes.
struct Gluing {
  std::vector<std::vector<Rational>> classes;
};

// The graph G obtained by gluing: one edge per interval, oriented a_i ->
// b_i; classes of glued boundary points are the candidate vertices.
class GluedGraph {
public:
  GluedGraph(const Omega& omega, const Gluing& gluing);

  const Omega& omega() const { return omega_; }
  const std::vector<std::vector<Rational>>& classes() const { return classes_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  int num_edges() const { return omega_.size(); }
  int num_components() const { return num_components_; }

  int class_of(const Rational& boundary_point) const;  // -1 if not boundary
  int valence(int class_id) const { return static_cast<int>(classes_[static_cast<size_t>(class_id)].size()); }
  bool is_vertex(int class_id) const { return valence(class_id) != 2; }
  std::vector<int> vertices() const;

  int edge_component(int edge) const { return edge_component_[static_cast<size_t>(edge)]; }
  int class_component(int class_id) const { return class_component_[static_cast<size_t>(class_id)]; }

  int h1_rank() const { return static_cast<int>(cycle_basis_.size()); }
  // Integer cycle vectors over edges satisfying the flow condition at every
  // class.
  const std::vector<std::vector<Rational>>& cycle_basis() const { return cycle_basis_; }

private:
  Omega omega_;
  std::vector<std::vector<Rational>> classes_;
  std::vector<int> class_component_, edge_component_;
  int num_components_ = 0;
  std::vector<std::vector<Rational>> cycle_basis_;
};

GluedGraph build_graph(const Omega& omega, const Gluing& gluing);

// A point of G: either a gluing class or an interior point of Omega.
struct GraphPoint {
  int class_id = -1;  // >= 0: class; -1: interior point x
  Rational x;

  friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
    if (a.class_id != b.class_id) return false;
    return a.class_id >= 0 || a.x == b.x;
  }
};

struct SidedPoint {
  Rational x;
  Side side;

  friend bool operator==(const SidedPoint& a, const SidedPoint& b) {
    return a.side == b.side && a.x == b.x;
  }
};

// A PM map together with a gluing under which it induces a continuous graph
// self-map, with the induced actions on H_0 and H_1.
class InducedMap {
public:
  // Checks that the one-sided images glue consistently (and that the germ
  // map does not collapse at two-member non-vertex classes), then computes
  // the component map and the H_1 matrix.
  static InducedMap validate(PMMap f, const Gluing& gluing);

  const PMMap& map() const { return f_; }
  const GluedGraph& graph() const { return graph_; }

  GraphPoint project(const Rational& x) const;  // pi
  GraphPoint step(const GraphPoint& p) const;   // the induced map f
  // Germ map on legal sided points: (x, s) -> (F(x s), s * eps).
  SidedPoint sided_step(const SidedPoint& p) const;
  // The half-edge germs at a graph point (two for non-vertex points).
  std::vector<SidedPoint> germs_at(const GraphPoint& p) const;
  bool is_vertex(const GraphPoint& p) const { return p.class_id >= 0 && graph_.is_vertex(p.class_id); }

  const std::vector<int>& h0_map() const { return h0_map_; }
  RationalMatrix h0_matrix() const;
  const RationalMatrix& h1_matrix() const { return h1_; }

  double h_hom() const;  // log max{1, r(f_*1)}

private:
  InducedMap(PMMap f, GluedGraph graph) : f_(std::move(f)), graph_(std::move(graph)) {}

  void compute_h0();
  void compute_h1();

  PMMap f_;
  GluedGraph graph_;
  std::vector<int> h0_map_;
  RationalMatrix h1_;
};

InducedMap validate_induced(PMMap f, const Gluing& gluing);

}  // namespace knead

#endif
