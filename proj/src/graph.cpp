#include "psch/graph.hpp"

#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace psch {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ValidationReport validate(const GraphData& data) {
  ValidationReport rep;
  auto add = [&](std::string kind, std::string detail, std::vector<std::string> verts) {
    rep.violations.push_back({std::move(kind), std::move(detail), std::move(verts)});
  };

  if (!(data.p > 1) || !std::isfinite(data.p)) add("invalid_exponent", "p = " + fmt(data.p) + " not in (1, inf)", {});
  if (data.vertices.empty()) add("empty_graph", "no vertices", {});

  std::map<std::string, Index> index;
  for (const auto& v : data.vertices) {
    if (!index.emplace(v.id, static_cast<Index>(index.size())).second) {
      add("duplicate_id", "vertex id listed more than once", {v.id});
      continue;
    }
    if (!(v.m > 0) || !std::isfinite(v.m)) add("nonpositive_measure", "m = " + fmt(v.m), {v.id});
    if (!std::isfinite(v.c)) add("nonfinite_potential", "c = " + fmt(v.c), {v.id});
  }

  // Ordered-pair view of b as read: a pair listed twice must agree in both directions.
  std::map<std::pair<std::string, std::string>, double> seen;
  const Index n = static_cast<Index>(index.size());
  EdgeTable<double> b;
  bool edges_ok = true;
  for (const auto& e : data.edges) {
    if (!index.count(e.u) || !index.count(e.v)) {
      add("unknown_vertex", "edge references a vertex that is not listed", {e.u, e.v});
      edges_ok = false;
      continue;
    }
    if (e.u == e.v) {
      if (e.b != 0) add("nonzero_diagonal", "b(x,x) = " + fmt(e.b), {e.u});
      continue;
    }
    if (!(e.b >= 0) || !std::isfinite(e.b)) {
      add("negative_weight", "b = " + fmt(e.b), {e.u, e.v});
      edges_ok = false;
      continue;
    }
    auto fwd = std::make_pair(e.u, e.v);
    auto rev = std::make_pair(e.v, e.u);
    if (auto it = seen.find(rev); it != seen.end() && it->second != e.b) {
      add("asymmetry", "b(" + e.v + "," + e.u + ") = " + fmt(it->second) + " but b(" + e.u + "," + e.v +
                           ") = " + fmt(e.b),
          {e.v, e.u});
      edges_ok = false;
    } else if (auto jt = seen.find(fwd); jt != seen.end() && jt->second != e.b) {
      add("duplicate_edge", "pair listed twice with different weights", {e.u, e.v});
      edges_ok = false;
    }
    seen[fwd] = e.b;
    b.set(index[e.u], index[e.v], e.b);
  }

  if (n > 0) {
    std::vector<std::string> ids(static_cast<std::size_t>(n));
    for (const auto& [id, i] : index) ids[i] = id;
    rep.row_sums.assign(static_cast<std::size_t>(n), 0.0);
    for (const auto& e : b.entries()) {
      rep.row_sums[e.u] += e.w;
      rep.row_sums[e.v] += e.w;
    }
    auto comps = connected_components(n, b);
    rep.connected = comps.size() == 1;
    for (const auto& comp : comps) {
      std::vector<std::string> names;
      for (Index i : comp) names.push_back(ids[i]);
      rep.components.push_back(std::move(names));
    }
    if (!rep.connected && edges_ok) {
      std::vector<std::string> reps;
      for (const auto& comp : rep.components) reps.push_back(comp.front());
      add("disconnected", std::to_string(comps.size()) + " components", reps);
    }
  }
  return rep;
}

ValidationReport validate(const Graph& g) { return validate(to_data(g)); }

Graph build_graph(const GraphData& data) {
  ValidationReport rep = validate(data);
  std::string msg;
  for (const auto& v : rep.violations) {
    if (v.kind == "disconnected") continue;
    if (!msg.empty()) msg += "; ";
    msg += v.kind + ": " + v.detail;
    if (!v.vertices.empty()) {
      msg += " [";
      for (std::size_t i = 0; i < v.vertices.size(); ++i) msg += (i ? "," : "") + v.vertices[i];
      msg += "]";
    }
  }
  if (!msg.empty()) throw InputError("invalid graph: " + msg);

  const Index n = static_cast<Index>(data.vertices.size());
  std::vector<std::string> ids;
  Eigen::VectorXd m(n), c(n);
  std::map<std::string, Index> index;
  for (Index i = 0; i < n; ++i) {
    const auto& v = data.vertices[static_cast<std::size_t>(i)];
    ids.push_back(v.id);
    m(i) = v.m;
    c(i) = v.c;
    index[v.id] = i;
  }
  EdgeTableD b;
  for (const auto& e : data.edges)
    if (e.u != e.v && e.b > 0) b.set(index[e.u], index[e.v], e.b);
  return Graph(std::move(ids), std::move(m), std::move(c), std::move(b), data.p);
}

GraphData to_data(const Graph& g) {
  GraphData d;
  d.p = g.p();
  for (Index i = 0; i < g.size(); ++i) d.vertices.push_back({g.id(i), g.measure()(i), g.potential()(i)});
  for (const auto& e : g.weights().entries()) d.edges.push_back({g.id(e.u), g.id(e.v), e.w});
  return d;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

struct Draft {
  std::vector<std::string> ids;
  EdgeTableD b;
  VertexSet keep;  // vertices of the result; the rest are killed
};

void require_positive(long v, const char* what) {
  if (v <= 0) throw InputError(std::string("generate: ") + what + " must be positive");
}

Graph finish(Draft d, const Profile& prof, double p) {
  const Index total = static_cast<Index>(d.ids.size());
  const Index n = static_cast<Index>(d.keep.size());
  Eigen::VectorXd m = Eigen::VectorXd::Constant(total, prof.m);
  Eigen::VectorXd c = Eigen::VectorXd::Constant(total, prof.c);
  if (prof.m_values) {
    if (prof.m_values->size() != n) throw InputError("generate: m profile has wrong length");
    for (Index k = 0; k < n; ++k) m(d.keep[k]) = (*prof.m_values)(k);
  }
  if (prof.c_values) {
    if (prof.c_values->size() != n) throw InputError("generate: c profile has wrong length");
    for (Index k = 0; k < n; ++k) c(d.keep[k]) = (*prof.c_values)(k);
  }
  EdgeTableD b = d.b.transformed([&](const Edge<double>&) { return prof.b; });
  Graph full(std::move(d.ids), std::move(m), std::move(c), std::move(b), p);
  if (n == total) return full;
  return restrict(full, d.keep);
}

Draft path_draft(const PathFamily& f) {
  require_positive(f.n, "path length");
  Draft d;
  const long lo = f.kill_left ? -1 : 0;
  const long hi = f.kill_right ? f.n : f.n - 1;
  for (long k = lo; k <= hi; ++k) d.ids.push_back(std::to_string(k));
  for (long k = lo; k < hi; ++k) d.b.set(k - lo, k - lo + 1, 1.0);
  for (long k = 0; k < f.n; ++k) d.keep.push_back(k - lo);
  return d;
}

Draft cycle_draft(const CycleFamily& f) {
  require_positive(f.n, "cycle length");
  if (f.n < 3) throw InputError("generate: cycle needs at least 3 vertices");
  Draft d;
  for (long k = 0; k < f.n; ++k) {
    d.ids.push_back(std::to_string(k));
    d.keep.push_back(k);
  }
  for (long k = 0; k < f.n; ++k) d.b.set(k, (k + 1) % f.n, 1.0);
  return d;
}

Draft tree_draft(const TreeFamily& f) {
  require_positive(f.branching, "branching");
  if (f.depth < 0) throw InputError("generate: tree depth must be nonnegative");
  Draft d;
  const long levels = f.depth + (f.kill_leaves ? 2 : 1);
  Index next = 1;
  d.ids.push_back("0");
  std::vector<Index> level{0};
  long count = 1;
  for (long l = 1; l < levels; ++l) {
    std::vector<Index> nextlevel;
    for (Index parent : level)
      for (long k = 0; k < f.branching; ++k) {
        d.ids.push_back(std::to_string(next));
        d.b.set(parent, next, 1.0);
        nextlevel.push_back(next++);
      }
    if (l <= f.depth) count += static_cast<long>(nextlevel.size());
    level = std::move(nextlevel);
  }
  for (Index i = 0; i < count; ++i) d.keep.push_back(i);
  return d;
}

Draft lattice_draft(const LatticeFamily& f) {
  require_positive(f.dim, "lattice dimension");
  require_positive(f.side, "lattice side");
  // Dirichlet boundary: pad the box by one layer and restrict back to it.
  const long pad = f.dirichlet ? 1 : 0;
  const long width = f.side + 2 * pad;
  long total = 1;
  for (long k = 0; k < f.dim; ++k) total *= width;
  Draft d;
  for (long idx = 0; idx < total; ++idx) {
    std::string id;
    bool inside = true;
    long rest = idx;
    std::vector<long> coord(static_cast<std::size_t>(f.dim));
    for (long k = f.dim - 1; k >= 0; --k) {
      coord[k] = rest % width - pad;
      rest /= width;
      inside = inside && coord[k] >= 0 && coord[k] < f.side;
    }
    for (long k = 0; k < f.dim; ++k) id += (k ? "," : "") + std::to_string(coord[k]);
    d.ids.push_back(std::move(id));
    if (inside) d.keep.push_back(idx);
    long stride = 1;
    for (long k = f.dim - 1; k >= 0; --k) {
      if (coord[k] + pad + 1 < width) d.b.set(idx, idx + stride, 1.0);
      stride *= width;
    }
  }
  return d;
}

Draft complete_draft(const CompleteFamily& f) {
  require_positive(f.n, "complete graph size");
  Draft d;
  for (long k = 0; k < f.n; ++k) {
    d.ids.push_back(std::to_string(k));
    d.keep.push_back(k);
  }
  for (long a = 0; a < f.n; ++a)
    for (long b = a + 1; b < f.n; ++b) d.b.set(a, b, 1.0);
  return d;
}

}  // namespace

Graph generate(const FamilySpec& spec) {
  Draft d = std::visit(
      [](const auto& f) -> Draft {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PathFamily>) return path_draft(f);
        else if constexpr (std::is_same_v<F, CycleFamily>) return cycle_draft(f);
        else if constexpr (std::is_same_v<F, TreeFamily>) return tree_draft(f);
        else if constexpr (std::is_same_v<F, LatticeFamily>) return lattice_draft(f);
        else return complete_draft(f);
      },
      spec.family);
  return finish(std::move(d), spec.profile, spec.p);
}

Graph path_graph(long n, bool kill_left, bool kill_right, double p, double b, double m) {
  Profile prof;
  prof.b = b;
  prof.m = m;
  return generate({PathFamily{n, kill_left, kill_right}, prof, p});
}

Graph tree_graph(long branching, long depth, bool kill_leaves, double p) {
  return generate({TreeFamily{branching, depth, kill_leaves}, Profile{}, p});
}

Graph complete_graph(long n, double p, double b) {
  Profile prof;
  prof.b = b;
  return generate({CompleteFamily{n}, prof, p});
}

// ---------------------------------------------------------------------------
// Connected subsets (ESU enumeration: every set is grown from its smallest vertex)

namespace {

void esu_grow(const std::vector<std::vector<Index>>& adj, Index root, int cap, VertexSet& sub,
              std::vector<Index> ext, std::vector<char>& blocked,
              const std::function<void(const VertexSet&)>& visit) {
  VertexSet sorted = sub;
  std::sort(sorted.begin(), sorted.end());
  visit(sorted);
  if (static_cast<int>(sub.size()) >= cap) return;
  std::vector<Index> added;
  while (!ext.empty()) {
    const Index w = ext.back();
    ext.pop_back();
    std::vector<Index> next = ext;
    std::vector<Index> newly;
    for (Index v : adj[w])
      if (v > root && !blocked[v]) {
        blocked[v] = 1;
        newly.push_back(v);
        next.push_back(v);
      }
    sub.push_back(w);
    esu_grow(adj, root, cap, sub, std::move(next), blocked, visit);
    sub.pop_back();
    for (Index v : newly) blocked[v] = 0;
  }
}

}  // namespace

void for_each_connected_subset(const std::vector<std::vector<Index>>& adj, int cap,
                               const std::function<void(const VertexSet&)>& visit) {
  const Index n = static_cast<Index>(adj.size());
  if (cap < 1) return;
  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  for (Index root = 0; root < n; ++root) {
    std::fill(blocked.begin(), blocked.end(), 0);
    blocked[root] = 1;
    std::vector<Index> ext;
    for (Index v : adj[root])
      if (v > root && !blocked[v]) {
        blocked[v] = 1;
        ext.push_back(v);
      }
    VertexSet sub{root};
    esu_grow(adj, root, cap, sub, std::move(ext), blocked, visit);
  }
}

// ---------------------------------------------------------------------------
// Exhaustions

ExhaustionPlan::ExhaustionPlan(std::vector<VertexSet> subsets) : subsets_(std::move(subsets)) {
  for (auto& s : subsets_) {
    if (s.empty()) throw InputError("exhaustion: subsets must be nonempty");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  for (std::size_t i = 1; i < subsets_.size(); ++i) {
    const auto& a = subsets_[i - 1];
    const auto& b = subsets_[i];
    if (!(a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end())))
      throw InputError("exhaustion: subsets must be strictly increasing by inclusion");
  }
}

ExhaustionPlan ExhaustionPlan::prefixes(Index n, const std::vector<Index>& sizes) {
  std::vector<VertexSet> sets;
  for (Index s : sizes) {
    if (s < 1 || s > n) throw InputError("exhaustion: prefix size out of range");
    VertexSet k(static_cast<std::size_t>(s));
    std::iota(k.begin(), k.end(), Index(0));
    sets.push_back(std::move(k));
  }
  return ExhaustionPlan(std::move(sets));
}

ExhaustionPlan ExhaustionPlan::balls(const Graph& g, Index center) {
  std::vector<long> dist(static_cast<std::size_t>(g.size()), -1);
  std::queue<Index> q;
  dist[center] = 0;
  q.push(center);
  long maxd = 0;
  while (!q.empty()) {
    Index a = q.front();
    q.pop();
    for (const auto& nb : g.neighbors(a))
      if (dist[nb.v] < 0) {
        dist[nb.v] = dist[a] + 1;
        maxd = std::max(maxd, dist[nb.v]);
        q.push(nb.v);
      }
  }
  std::vector<VertexSet> sets;
  for (long r = 0; r <= maxd; ++r) {
    VertexSet k;
    for (Index i = 0; i < g.size(); ++i)
      if (dist[i] >= 0 && dist[i] <= r) k.push_back(i);
    sets.push_back(std::move(k));
  }
  return ExhaustionPlan(std::move(sets));
}

bool ExhaustionPlan::exhausts(Index n) const {
  return !subsets_.empty() && static_cast<Index>(subsets_.back().size()) == n;
}

}  // namespace psch
