#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "rwre/lattice.hpp"
#include "rwre/rational.hpp"
#include "rwre/rng.hpp"

namespace rwre {

using VertexId = std::uint32_t;

enum class VertexKind { Interior, Del, M };

// Quotient coordinates of an interior vertex: the component along the slab
// axis and the lateral component reduced modulo one circumference.
struct CanonicalSite {
  std::int64_t along = 0;
  std::int64_t around = 0;

  friend bool operator==(const CanonicalSite& a, const CanonicalSite& b) {
    return a.along == b.along && a.around == b.around;
  }
};

struct VertexLabel {
  VertexKind kind = VertexKind::Interior;
  CanonicalSite canon;
  Site rep;  // representative lattice point (interior only)
};

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  Rational weight;
};

struct EdgeSpan {
  const Edge* first = nullptr;
  const Edge* last = nullptr;

  const Edge* begin() const { return first; }
  const Edge* end() const { return last; }
  std::size_t size() const { return static_cast<std::size_t>(last - first); }
  bool empty() const { return first == last; }
  const Edge& operator[](std::size_t i) const { return first[i]; }
};

// Finite weighted digraph with exact rational weights and no parallel edges
// (additions onto an existing (tail, head) pair merge by summing). Edges stay
// sorted by (tail, head), so the out-edges of a vertex form one contiguous
// run.
class WeightedDigraph {
 public:
  VertexId add_vertex(VertexLabel label);
  void add_edge(VertexId tail, VertexId head, const Rational& weight);

  std::size_t num_vertices() const { return labels_.size(); }
  const VertexLabel& label(VertexId v) const { return labels_.at(v); }

  const std::vector<Edge>& edges() const { return edges_; }
  EdgeSpan out_span(VertexId v) const;
  std::vector<Edge> out_edges(VertexId v) const;
  std::vector<Edge> in_edges(VertexId v) const;

  // In-weight minus out-weight, exact.
  Rational divergence(VertexId v) const;
  Rational out_weight_total(VertexId v) const;
  Rational in_weight_total(VertexId v) const;

 private:
  void check_vertex(VertexId v) const;

  std::vector<VertexLabel> labels_;
  std::vector<Edge> edges_;  // sorted by (tail, head)
  std::unordered_map<std::uint64_t, std::size_t> edge_index_;
};

// Cylinder description: slab 0 <= x.u/|u| <= depth, quotiented by n_around
// copies of the lateral basis vector u2 (defaults to u rotated a quarter
// turn). Both u and u2 are integer vectors and must be orthogonal.
struct CylinderSpec {
  JumpLaw law;  // d = 2
  Site u;
  Site u2;
  std::int64_t n_around = 1;
  double depth = 1.0;

  static CylinderSpec make(JumpLaw law, Site u, std::int64_t n_around, double depth);
  static CylinderSpec make(JumpLaw law, Site u, Site u2, std::int64_t n_around, double depth);
};

CanonicalSite canonicalize(const CylinderSpec& spec, const Site& x);

// Exact sums over the boundary edge classes: interior-to-lower-face (2a),
// lower-face-to-interior (2b), interior-to-upper-face (2c), upper-face-to-
// interior (2d), and the shared weight of the pair of special edges.
struct CylinderAudit {
  Rational sum_2a, sum_2b, sum_2c, sum_2d;
  Rational special_weight;
  std::int64_t sites_per_along = 0;
  std::int64_t along_max = 0;
  Rational drift_along_u;  // annealed drift dotted with u, exact
};

struct Cylinder {
  WeightedDigraph graph;
  VertexId del = 0;
  VertexId m = 0;
  CylinderAudit audit;
  CylinderSpec spec;
};

// Builds the finite cylinder graph: interior vertices are the quotient
// classes inside the slab; jumps leaving the slab below rewire through the
// lower boundary vertex and above through the upper one; parallel edges merge
// into one edge carrying the summed weight; the two special edges between the
// boundary vertices share the class-2a total as their weight.
Cylinder build_cylinder(const CylinderSpec& spec);

// Finite patch of the translation-invariant lattice graph: vertices are the
// sites of the box [-radius, radius]^d, edges are the jumps staying inside.
// Vertices deeper than one jump radius from the faces have zero divergence.
WeightedDigraph build_lattice_patch(const JumpLaw& law, int radius);

std::string to_dot(const WeightedDigraph& g);

// Independent Dirichlet draws per vertex with the out-edge weights as
// parameters, materialized lazily; deterministic per (seed, trial, vertex).
class GraphEnv {
 public:
  GraphEnv(const WeightedDigraph& g, std::uint64_t seed, std::uint64_t trial);

  // Probabilities aligned with out_span(v). Throws on a sink vertex.
  const std::vector<double>& at(VertexId v);
  EdgeSpan out(VertexId v) const { return g_->out_span(v); }

 private:
  const WeightedDigraph* g_;
  std::uint64_t seed_ = 0;
  std::uint64_t trial_ = 0;
  std::vector<std::vector<double>> probs_;
  std::vector<bool> drawn_;
};

std::vector<std::vector<double>> graph_env_draw(const WeightedDigraph& g, std::uint64_t seed,
                                                std::uint64_t trial);

}  // namespace rwre
