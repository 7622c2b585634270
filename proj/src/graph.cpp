#include "rwre/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rwre/environment.hpp"

namespace rwre {

namespace {

std::uint64_t edge_key(VertexId tail, VertexId head) {
  return (static_cast<std::uint64_t>(tail) << 32) | head;
}

// Floor of along-axis slab bound; the tiny slack keeps exact-integer bounds
// (integer depth on an axis direction) from rounding down.
std::int64_t slab_max_along(double depth, double u_norm) {
  return static_cast<std::int64_t>(std::floor(depth * u_norm + 1e-9));
}

}  // namespace

VertexId WeightedDigraph::add_vertex(VertexLabel label) {
  labels_.push_back(std::move(label));
  return static_cast<VertexId>(labels_.size() - 1);
}

void WeightedDigraph::check_vertex(VertexId v) const {
  if (v >= labels_.size()) throw std::out_of_range("unknown vertex");
}

void WeightedDigraph::add_edge(VertexId tail, VertexId head, const Rational& weight) {
  check_vertex(tail);
  check_vertex(head);
  if (!(weight.sign() > 0)) throw std::invalid_argument("edge weights must be positive");
  auto key = edge_key(tail, head);
  auto it = edge_index_.find(key);
  if (it != edge_index_.end()) {
    edges_[it->second].weight += weight;  // merge parallel edges
    return;
  }
  Edge e{tail, head, weight};
  auto pos = std::lower_bound(edges_.begin(), edges_.end(), e, [](const Edge& a, const Edge& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
  });
  std::size_t idx = static_cast<std::size_t>(pos - edges_.begin());
  edges_.insert(pos, std::move(e));
  for (auto& [k, i] : edge_index_) {
    if (i >= idx) ++i;
  }
  edge_index_[key] = idx;
}

EdgeSpan WeightedDigraph::out_span(VertexId v) const {
  check_vertex(v);
  auto lo = std::lower_bound(edges_.begin(), edges_.end(), v,
                             [](const Edge& e, VertexId t) { return e.tail < t; });
  auto hi = std::upper_bound(edges_.begin(), edges_.end(), v,
                             [](VertexId t, const Edge& e) { return t < e.tail; });
  return EdgeSpan{edges_.data() + (lo - edges_.begin()), edges_.data() + (hi - edges_.begin())};
}

std::vector<Edge> WeightedDigraph::out_edges(VertexId v) const {
  EdgeSpan span = out_span(v);
  return std::vector<Edge>(span.begin(), span.end());
}

std::vector<Edge> WeightedDigraph::in_edges(VertexId v) const {
  check_vertex(v);
  std::vector<Edge> in;
  for (const Edge& e : edges_) {
    if (e.head == v) in.push_back(e);
  }
  return in;
}

Rational WeightedDigraph::divergence(VertexId v) const {
  check_vertex(v);
  Rational d;
  for (const Edge& e : edges_) {
    if (e.head == v) d += e.weight;
    if (e.tail == v) d -= e.weight;
  }
  return d;
}

Rational WeightedDigraph::out_weight_total(VertexId v) const {
  check_vertex(v);
  Rational t;
  for (const Edge& e : edges_) {
    if (e.tail == v) t += e.weight;
  }
  return t;
}

Rational WeightedDigraph::in_weight_total(VertexId v) const {
  check_vertex(v);
  Rational t;
  for (const Edge& e : edges_) {
    if (e.head == v) t += e.weight;
  }
  return t;
}

CylinderSpec CylinderSpec::make(JumpLaw law, Site u, std::int64_t n_around, double depth) {
  if (u.size() != 2) throw std::invalid_argument("cylinder axis must be two-dimensional");
  Site u2{-u[1], u[0]};
  return make(std::move(law), std::move(u), std::move(u2), n_around, depth);
}

CylinderSpec CylinderSpec::make(JumpLaw law, Site u, Site u2, std::int64_t n_around,
                                double depth) {
  CylinderSpec spec;
  if (law.d != 2) throw std::invalid_argument("cylinder construction requires d = 2");
  if (u.size() != 2 || u2.size() != 2) throw std::invalid_argument("basis must be two-dimensional");
  if (norm_sq(u) == 0 || norm_sq(u2) == 0) throw std::invalid_argument("basis vectors must be nonzero");
  if (dot_int(u, u2) != 0) throw std::invalid_argument("basis vectors must be orthogonal");
  // A primitive axis makes x.u take every integer value, so the slab layers
  // are uniform; pick the shortest integer vector in the direction.
  if (std::gcd(std::abs(u[0]), std::abs(u[1])) != 1) {
    throw std::invalid_argument("cylinder axis must be primitive (coprime coordinates)");
  }
  if (n_around < 1) throw std::invalid_argument("circumference multiplier must be >= 1");
  if (!(depth > 0.0)) throw std::invalid_argument("slab depth must be positive");
  spec.law = std::move(law);
  spec.u = std::move(u);
  spec.u2 = std::move(u2);
  spec.n_around = n_around;
  spec.depth = depth;
  return spec;
}

CanonicalSite canonicalize(const CylinderSpec& spec, const Site& x) {
  if (x.size() != 2) throw std::invalid_argument("canonicalize requires d = 2");
  const std::int64_t mod = spec.n_around * norm_sq(spec.u2);
  std::int64_t around = dot_int(x, spec.u2) % mod;
  if (around < 0) around += mod;
  return CanonicalSite{dot_int(x, spec.u), around};
}

Cylinder build_cylinder(const CylinderSpec& spec) {
  const JumpLaw& law = spec.law;
  const std::int64_t u_n2 = norm_sq(spec.u);
  const std::int64_t u2_n2 = norm_sq(spec.u2);
  const std::int64_t mod = spec.n_around * u2_n2;

  // No jump may wrap the cylinder onto its own tail: circumference > 2R.
  if (spec.n_around * spec.n_around * u2_n2 <= 4 * law.radius_sq) {
    throw std::invalid_argument("cylinder circumference must exceed twice the jump radius");
  }
  {
    int box = static_cast<int>(std::ceil(3.0 * law.radius)) + 3;
    if (check_c3(law, box) != C3Result::Proven) {
      throw std::invalid_argument("jump set not verified to generate the lattice");
    }
  }

  const std::int64_t along_max = slab_max_along(spec.depth, std::sqrt(static_cast<double>(u_n2)));
  if (along_max < 0) throw std::invalid_argument("slab holds no lattice sites");

  Cylinder cyl;
  cyl.spec = spec;

  // One representative per quotient class: solve x from (along, around) and
  // keep the solutions that are lattice points.
  std::map<std::pair<std::int64_t, std::int64_t>, VertexId> index;
  const std::int64_t den = u_n2 * u2_n2;
  std::int64_t per_along_first = -1;
  for (std::int64_t a = 0; a <= along_max; ++a) {
    std::int64_t count = 0;
    for (std::int64_t r = 0; r < mod; ++r) {
      const std::int64_t n1 = a * spec.u[0] * u2_n2 + r * spec.u2[0] * u_n2;
      const std::int64_t n2 = a * spec.u[1] * u2_n2 + r * spec.u2[1] * u_n2;
      if (n1 % den != 0 || n2 % den != 0) continue;
      VertexLabel label;
      label.kind = VertexKind::Interior;
      label.canon = CanonicalSite{a, r};
      label.rep = Site{n1 / den, n2 / den};
      index[{a, r}] = cyl.graph.add_vertex(std::move(label));
      ++count;
    }
    if (per_along_first < 0) per_along_first = count;
    if (count != per_along_first) {
      throw std::logic_error("quotient classes are not uniform across the slab");
    }
  }
  cyl.audit.sites_per_along = per_along_first;
  cyl.audit.along_max = along_max;

  cyl.del = cyl.graph.add_vertex(VertexLabel{VertexKind::Del, {}, {}});
  cyl.m = cyl.graph.add_vertex(VertexLabel{VertexKind::M, {}, {}});

  Rational sum_2a, sum_2b, sum_2c, sum_2d;
  for (const auto& [key, vid] : index) {
    const auto [a, r] = key;
    const Site& x = cyl.graph.label(vid).rep;
    for (const Jump& j : law.jumps) {
      const std::int64_t du = dot_int(j.y, spec.u);
      const std::int64_t a_fwd = a + du;
      if (a_fwd < 0) {
        cyl.graph.add_edge(vid, cyl.del, j.alpha);
        sum_2a += j.alpha;
      } else if (a_fwd > along_max) {
        cyl.graph.add_edge(vid, cyl.m, j.alpha);
        sum_2c += j.alpha;
      } else {
        CanonicalSite c = canonicalize(spec, add(x, j.y));
        auto it = index.find({c.along, c.around});
        if (it == index.end()) throw std::logic_error("jump target missing from the quotient");
        cyl.graph.add_edge(vid, it->second, j.alpha);
      }
      // Sources one jump outside the slab rewire from the boundary vertices.
      const std::int64_t a_bwd = a - du;
      if (a_bwd < 0) {
        cyl.graph.add_edge(cyl.del, vid, j.alpha);
        sum_2b += j.alpha;
      } else if (a_bwd > along_max) {
        cyl.graph.add_edge(cyl.m, vid, j.alpha);
        sum_2d += j.alpha;
      }
    }
  }

  const Rational special = sum_2a;
  if (!(special.sign() > 0)) {
    throw std::invalid_argument("slab too shallow: no edges cross the lower face");
  }
  cyl.graph.add_edge(cyl.m, cyl.del, special);
  cyl.graph.add_edge(cyl.del, cyl.m, special);

  cyl.audit.sum_2a = sum_2a;
  cyl.audit.sum_2b = sum_2b;
  cyl.audit.sum_2c = sum_2c;
  cyl.audit.sum_2d = sum_2d;
  cyl.audit.special_weight = special;
  {
    std::vector<Rational> drift = annealed_drift_exact(law);
    Rational along;
    for (std::size_t i = 0; i < drift.size(); ++i) along += drift[i] * Rational(spec.u[i]);
    cyl.audit.drift_along_u = along;
  }
  return cyl;
}

WeightedDigraph build_lattice_patch(const JumpLaw& law, int radius) {
  if (radius < 1) throw std::invalid_argument("patch radius must be >= 1");
  const int d = law.d;
  double cells = 1.0;
  for (int i = 0; i < d; ++i) cells *= static_cast<double>(2 * radius + 1);
  if (cells > 2e6) throw std::invalid_argument("patch too large");

  WeightedDigraph g;
  std::map<Site, VertexId> index;
  Site x(static_cast<std::size_t>(d), -radius);
  for (;;) {
    VertexLabel label;
    label.kind = VertexKind::Interior;
    label.canon = CanonicalSite{x[0], d >= 2 ? x[1] : 0};
    label.rep = x;
    index[x] = g.add_vertex(std::move(label));
    int k = 0;
    while (k < d && ++x[static_cast<std::size_t>(k)] > radius) {
      x[static_cast<std::size_t>(k)] = -radius;
      ++k;
    }
    if (k == d) break;
  }
  for (const auto& [site, vid] : index) {
    for (const Jump& j : law.jumps) {
      auto it = index.find(add(site, j.y));
      if (it != index.end()) g.add_edge(vid, it->second, j.alpha);
    }
  }
  return g;
}

std::string to_dot(const WeightedDigraph& g) {
  std::ostringstream os;
  os << "digraph cylinder {\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const VertexLabel& l = g.label(v);
    os << "  n" << v << " [label=\"";
    switch (l.kind) {
      case VertexKind::Interior:
        os << "(" << l.canon.along << "," << l.canon.around << ")";
        break;
      case VertexKind::Del:
        os << "DEL";
        break;
      case VertexKind::M:
        os << "M";
        break;
    }
    os << "\"];\n";
  }
  for (const Edge& e : g.edges()) {
    os << "  n" << e.tail << " -> n" << e.head << " [label=\"" << e.weight.str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

GraphEnv::GraphEnv(const WeightedDigraph& g, std::uint64_t seed, std::uint64_t trial)
    : g_(&g), seed_(seed), trial_(trial) {
  probs_.resize(g.num_vertices());
  drawn_.assign(g.num_vertices(), false);
}

const std::vector<double>& GraphEnv::at(VertexId v) {
  if (v >= probs_.size()) throw std::out_of_range("unknown vertex");
  if (!drawn_[v]) {
    EdgeSpan span = g_->out_span(v);
    if (span.empty()) throw std::invalid_argument("sink vertex has no out-distribution");
    std::vector<double> shape;
    shape.reserve(span.size());
    for (const Edge& e : span) shape.push_back(e.weight.to_double());
    Rng rng = stream({seed_, stream_tag::kGraphEnv, trial_, v});
    probs_[v] = draw_dirichlet(rng, shape);
    drawn_[v] = true;
  }
  return probs_[v];
}

std::vector<std::vector<double>> graph_env_draw(const WeightedDigraph& g, std::uint64_t seed,
                                                std::uint64_t trial) {
  GraphEnv env(g, seed, trial);
  std::vector<std::vector<double>> out(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) out[v] = env.at(v);
  return out;
}

}  // namespace rwre
