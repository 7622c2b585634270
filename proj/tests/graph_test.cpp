#include "rwre/graph.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

#include "rwre/environment.hpp"
#include "rwre/rng.hpp"
#include "support.hpp"

using namespace rwre;

namespace {

JumpLaw figure_law(std::int64_t a0, std::int64_t a1, std::int64_t a2) {
  return JumpLaw::make(2, {Jump{{0, 1}, Rational(a0)}, Jump{{1, -1}, Rational(a1)},
                           Jump{{-2, 0}, Rational(a2)}});
}

CylinderSpec figure_spec(std::int64_t a0, std::int64_t a1, std::int64_t a2) {
  // Axis (2,1), lateral basis (-1,2), four copies around, depth 10.
  return CylinderSpec::make(figure_law(a0, a1, a2), Site{2, 1}, 4, 10.0);
}

void test_digraph_basics() {
  WeightedDigraph g;
  VertexId a = g.add_vertex(VertexLabel{VertexKind::Interior, {0, 0}, {0, 0}});
  VertexId b = g.add_vertex(VertexLabel{VertexKind::Interior, {1, 0}, {1, 0}});
  g.add_edge(a, b, Rational(1));
  g.add_edge(b, a, Rational(1));
  REQUIRE(g.divergence(a) == Rational(0));
  REQUIRE(g.divergence(b) == Rational(0));

  g.add_edge(a, b, Rational(1));  // merges into one edge of weight 2
  REQUIRE(g.edges().size() == 2);
  REQUIRE(g.out_weight_total(a) == Rational(2));
  REQUIRE(g.divergence(a) == Rational(-1));
  REQUIRE_THROWS(g.divergence(99), std::out_of_range);
  REQUIRE_THROWS(g.add_edge(a, b, Rational(0)), std::invalid_argument);
  pass("weighted digraph basics");
}

void test_canonicalize() {
  CylinderSpec spec = CylinderSpec::make(figure_law(1, 1, 1), Site{2, 1}, Site{-1, 2}, 3, 10.0);
  CanonicalSite o = canonicalize(spec, {0, 0});
  REQUIRE(o.along == 0 && o.around == 0);
  CanonicalSite w = canonicalize(spec, {-3, 6});  // three lateral periods ahead
  REQUIRE(w.along == 0 && w.around == 0);

  Rng rng = stream({2718});
  const Site period{-3, 6};  // n_around * u2
  for (int rep = 0; rep < 100; ++rep) {
    Site x{static_cast<Coord>(rng.next_u64() % 61) - 30, static_cast<Coord>(rng.next_u64() % 61) - 30};
    CanonicalSite c1 = canonicalize(spec, x);
    CanonicalSite c2 = canonicalize(spec, add(x, period));
    REQUIRE(c1 == c2);
    REQUIRE(c1.around >= 0 && c1.around < 15);
  }
  pass("canonicalize respects the lateral quotient");
}

void test_cylinder_exact_drift_zero() {
  Cylinder cyl = build_cylinder(figure_spec(2, 2, 1));
  REQUIRE(cyl.graph.num_vertices() == 94);  // 23 layers of 4, plus the two boundary vertices
  REQUIRE(cyl.audit.sites_per_along == 4);
  REQUIRE(cyl.audit.along_max == 22);
  REQUIRE(cyl.audit.drift_along_u == Rational(0));

  REQUIRE(cyl.audit.sum_2a == Rational(16));
  REQUIRE(cyl.audit.sum_2b == Rational(16));
  REQUIRE(cyl.audit.sum_2c == Rational(16));
  REQUIRE(cyl.audit.sum_2d == Rational(16));
  REQUIRE(cyl.audit.special_weight == Rational(16));

  for (VertexId v = 0; v < cyl.graph.num_vertices(); ++v) {
    REQUIRE_MSG(cyl.graph.divergence(v) == Rational(0), "divergence at vertex " << v);
  }
  // Interior out-weight equals the total jump weight: every jump lands
  // somewhere (interior, lower, or upper).
  for (VertexId v = 0; v < cyl.graph.num_vertices(); ++v) {
    if (cyl.graph.label(v).kind != VertexKind::Interior) continue;
    REQUIRE(cyl.graph.out_weight_total(v) == Rational(5));
  }
  // The exact first-arrival ratio at the lower vertex along the special edge.
  Rational special_ratio = cyl.audit.special_weight / cyl.graph.in_weight_total(cyl.del);
  REQUIRE(special_ratio == Rational(1, 2));
  pass("drift-zero cylinder: exact audits");
}

void test_cylinder_exact_drifted() {
  Cylinder cyl = build_cylinder(figure_spec(1, 1, 1));
  REQUIRE(cyl.audit.sum_2a == Rational(16));
  REQUIRE(cyl.audit.sum_2b == Rational(8));
  REQUIRE(cyl.audit.sum_2c == Rational(8));
  REQUIRE(cyl.audit.sum_2d == Rational(16));
  REQUIRE(cyl.audit.special_weight == Rational(16));

  // Interior divergence vanishes regardless of drift.
  for (VertexId v = 0; v < cyl.graph.num_vertices(); ++v) {
    if (cyl.graph.label(v).kind != VertexKind::Interior) continue;
    REQUIRE(cyl.graph.divergence(v) == Rational(0));
  }
  REQUIRE(cyl.graph.divergence(cyl.del) == Rational(8));
  REQUIRE(cyl.graph.divergence(cyl.m) == Rational(-8));

  // The boundary-class skew is an exact positive multiple of the drift along
  // the axis: sum_2c - sum_2a = sites_per_along * alpha_total * (drift . u).
  Rational skew = cyl.audit.sum_2c - cyl.audit.sum_2a;
  REQUIRE(skew == Rational(-8));
  REQUIRE(cyl.audit.drift_along_u == Rational(-2, 3));
  Rational multiple = Rational(cyl.audit.sites_per_along) * figure_law(1, 1, 1).alpha_total();
  REQUIRE(skew == multiple * cyl.audit.drift_along_u);
  REQUIRE(multiple == Rational(12));
  REQUIRE(skew.sign() == cyl.audit.drift_along_u.sign());
  pass("drifted cylinder: exact skew identity");
}

void test_cylinder_axis_e1() {
  // A second geometry: axis (1,0), explicit lateral period six. The (0,1)
  // jump is purely lateral here, so only the other two cross the faces.
  Cylinder cyl = build_cylinder(CylinderSpec::make(figure_law(2, 2, 1), Site{1, 0}, 6, 8.0));
  REQUIRE(cyl.audit.sites_per_along == 6);
  REQUIRE(cyl.audit.along_max == 8);
  REQUIRE(cyl.graph.num_vertices() == 9 * 6 + 2);
  REQUIRE(cyl.audit.sum_2a == Rational(12));
  REQUIRE(cyl.audit.sum_2b == Rational(12));
  REQUIRE(cyl.audit.sum_2c == Rational(12));
  REQUIRE(cyl.audit.sum_2d == Rational(12));
  REQUIRE(cyl.audit.special_weight == Rational(12));
  REQUIRE(cyl.audit.drift_along_u == Rational(0));
  for (VertexId v = 0; v < cyl.graph.num_vertices(); ++v) {
    REQUIRE(cyl.graph.divergence(v) == Rational(0));
  }
  pass("axis-aligned cylinder: exact audits");
}

void test_drift_identity_iff() {
  // Skew vanishes exactly when the annealed drift is orthogonal to the axis.
  Cylinder zero = build_cylinder(figure_spec(2, 2, 1));
  REQUIRE((zero.audit.sum_2c - zero.audit.sum_2a) == Rational(0));
  Cylinder drifted = build_cylinder(figure_spec(1, 1, 1));
  REQUIRE((drifted.audit.sum_2c - drifted.audit.sum_2a) != Rational(0));
  pass("class skew vanishes exactly at drift zero");
}

void test_quotient_soundness() {
  Cylinder cyl = build_cylinder(figure_spec(2, 2, 1));
  const CylinderSpec& spec = cyl.spec;
  std::set<std::pair<std::int64_t, std::int64_t>> canon_seen;
  std::map<std::pair<std::int64_t, std::int64_t>, VertexId> by_canon;
  for (VertexId v = 0; v < cyl.graph.num_vertices(); ++v) {
    const VertexLabel& l = cyl.graph.label(v);
    if (l.kind != VertexKind::Interior) continue;
    REQUIRE(canon_seen.insert({l.canon.along, l.canon.around}).second);
    by_canon[{l.canon.along, l.canon.around}] = v;
    CanonicalSite rt = canonicalize(spec, l.rep);
    REQUIRE(rt == l.canon);
  }
  // Interior jumps that stay inside the slab have an edge of weight at least
  // the jump weight (merges only add).
  Rng rng = stream({424242});
  const std::int64_t along_max = cyl.audit.along_max;
  int checked = 0;
  for (int rep = 0; rep < 400; ++rep) {
    VertexId v = static_cast<VertexId>(rng.next_u64() % cyl.graph.num_vertices());
    const VertexLabel& l = cyl.graph.label(v);
    if (l.kind != VertexKind::Interior) continue;
    const Jump& j = spec.law.jumps[rng.next_u64() % spec.law.jumps.size()];
    std::int64_t a2 = l.canon.along + dot_int(j.y, spec.u);
    if (a2 < 0 || a2 > along_max) continue;
    CanonicalSite target = canonicalize(spec, add(l.rep, j.y));
    auto it = by_canon.find({target.along, target.around});
    REQUIRE(it != by_canon.end());
    bool found = false;
    for (const Edge& e : cyl.graph.out_edges(v)) {
      if (e.head == it->second) {
        REQUIRE(e.weight >= j.alpha);
        found = true;
      }
    }
    REQUIRE(found);
    ++checked;
  }
  REQUIRE(checked > 100);
  pass("quotient edges exist with at least the inducing weight");
}

void test_construction_errors() {
  // Circumference at most twice the jump radius.
  REQUIRE_THROWS(build_cylinder(CylinderSpec::make(figure_law(1, 1, 1), Site{2, 1}, 1, 10.0)),
                 std::invalid_argument);
  // Non-orthogonal basis.
  REQUIRE_THROWS(CylinderSpec::make(figure_law(1, 1, 1), Site{2, 1}, Site{1, 0}, 4, 10.0),
                 std::invalid_argument);
  // Non-primitive axis.
  REQUIRE_THROWS(CylinderSpec::make(figure_law(1, 1, 1), Site{4, 2}, 4, 10.0),
                 std::invalid_argument);
  // A jump set with a parity obstruction fails the generation check.
  JumpLaw even = JumpLaw::make(2, {Jump{{2, 0}, Rational(1)}, Jump{{-2, 0}, Rational(1)},
                                   Jump{{0, 2}, Rational(1)}, Jump{{0, -2}, Rational(1)}});
  REQUIRE_THROWS(build_cylinder(CylinderSpec::make(even, Site{1, 0}, 12, 10.0)),
                 std::invalid_argument);
  pass("construction rejects bad specs");
}

void test_lattice_patch() {
  JumpLaw law = figure_law(2, 2, 1);
  WeightedDigraph g = build_lattice_patch(law, 4);
  REQUIRE(g.num_vertices() == 81);
  // Sites deeper than one jump radius from the faces keep every jump, so the
  // full out-weight and zero divergence both hold there.
  std::uint64_t deep = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const Site& x = g.label(v).rep;
    if (std::abs(x[0]) <= 2 && std::abs(x[1]) <= 2) {
      REQUIRE(g.out_weight_total(v) == law.alpha_total());
      REQUIRE(g.divergence(v) == Rational(0));
      ++deep;
    }
  }
  REQUIRE(deep == 25);
  // A corner loses the jumps that leave the box.
  bool corner_checked = false;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.label(v).rep == (Site{4, 4})) {
      REQUIRE(g.out_weight_total(v) < law.alpha_total());
      corner_checked = true;
    }
  }
  REQUIRE(corner_checked);
  pass("lattice patch construction");
}

void test_graph_env() {
  WeightedDigraph g;
  VertexId a = g.add_vertex(VertexLabel{});
  VertexId b = g.add_vertex(VertexLabel{});
  VertexId c = g.add_vertex(VertexLabel{});
  g.add_edge(a, b, Rational(3));
  g.add_edge(a, c, Rational(3));
  g.add_edge(b, a, Rational(1));
  g.add_edge(c, a, Rational(1));

  // Single out-edge: probability one on it.
  {
    GraphEnv env(g, 5, 0);
    REQUIRE(env.at(b).size() == 1 && env.at(b)[0] == 1.0);
  }
  // Equal weights: empirical mean one half.
  double mean = 0.0;
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    GraphEnv env(g, 6, static_cast<std::uint64_t>(t));
    mean += env.at(a)[0];
  }
  require_close(mean / n, 0.5, 0.005, "balanced vertex mean");

  // Determinism per (seed, trial, vertex).
  GraphEnv e1(g, 7, 3);
  GraphEnv e2(g, 7, 3);
  REQUIRE(e1.at(a) == e2.at(a));

  WeightedDigraph sink;
  VertexId s = sink.add_vertex(VertexLabel{});
  VertexId t2 = sink.add_vertex(VertexLabel{});
  sink.add_edge(s, t2, Rational(1));
  GraphEnv env(sink, 1, 0);
  REQUIRE_THROWS(env.at(t2), std::invalid_argument);
  pass("graph environments");
}

void test_dot_export() {
  Cylinder cyl = build_cylinder(figure_spec(2, 2, 1));
  std::string dot = to_dot(cyl.graph);
  REQUIRE(dot.rfind("digraph", 0) == 0);
  REQUIRE(dot.find("DEL") != std::string::npos);
  REQUIRE(dot.find("\"M\"") != std::string::npos);
  REQUIRE(dot.find("label=\"16/1\"") != std::string::npos);  // the special edges
  REQUIRE(dot.find("(0,0)") != std::string::npos);
  REQUIRE(to_dot(cyl.graph) == dot);  // stable output
  pass("DOT export");
}

}  // namespace

int main() {
  test_digraph_basics();
  test_canonicalize();
  test_cylinder_exact_drift_zero();
  test_cylinder_exact_drifted();
  test_cylinder_axis_e1();
  test_drift_identity_iff();
  test_quotient_soundness();
  test_construction_errors();
  test_lattice_patch();
  test_graph_env();
  test_dot_export();
  return 0;
}
