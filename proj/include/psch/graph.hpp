// Weighted graphs over a measure space, with a potential and an exponent p.
//
// A WeightedGraph is the finite stand-in for the (possibly infinite) graph
// (X, m, b, c) of a p-Schroedinger form. Infinite graphs are represented by
// finite truncations produced through restrict(), which folds the edges that
// leave the kept vertex set into the potential (Dirichlet killing).
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace psch {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Values on every vertex of the ambient graph; the support is implicit.
using VertexFunction = Eigen::VectorXd;

using VertexSet = std::vector<Index>;

/// Thrown for malformed input: bad graph data, bad arguments, bad files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation's mathematical precondition does not hold
/// (critical instance where a Green function is requested, u <= 0, ...).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Indices where f is nonzero.
template <typename Derived>
VertexSet support(const Eigen::MatrixBase<Derived>& f) {
  VertexSet s;
  for (Index i = 0; i < f.size(); ++i)
    if (f(i) != 0) s.push_back(i);
  return s;
}

/// Indicator function 1_K on n vertices.
inline VertexFunction indicator(Index n, const VertexSet& set) {
  VertexFunction f = VertexFunction::Zero(n);
  for (Index i : set) f(i) = 1.0;
  return f;
}

template <typename Scalar>
struct Edge {
  Index u;  // u < v
  Index v;
  Scalar w;
};

/// Symmetric table on unordered vertex pairs; absent pairs read as zero.
/// Entries are kept sorted by (u, v) with u < v, so iteration is deterministic.
template <typename Scalar>
class EdgeTable {
 public:
  EdgeTable() = default;

  void set(Index x, Index y, Scalar w) {
    if (x == y) throw InputError("edge table has zero diagonal");
    auto key = ordered(x, y);
    auto it = lower(key);
    if (it != entries_.end() && it->u == key.first && it->v == key.second)
      it->w = w;
    else
      entries_.insert(it, Edge<Scalar>{key.first, key.second, w});
  }

  void add(Index x, Index y, Scalar w) { set(x, y, (*this)(x, y) + w); }

  Scalar operator()(Index x, Index y) const {
    if (x == y) return Scalar(0);
    auto key = ordered(x, y);
    auto it = lower(key);
    if (it != entries_.end() && it->u == key.first && it->v == key.second)
      return it->w;
    return Scalar(0);
  }

  bool contains(Index x, Index y) const {
    if (x == y) return false;
    auto key = ordered(x, y);
    auto it = lower(key);
    return it != entries_.end() && it->u == key.first && it->v == key.second;
  }

  const std::vector<Edge<Scalar>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Entrywise transform, keeping the pair structure.
  template <typename F>
  EdgeTable transformed(F&& f) const {
    EdgeTable out = *this;
    for (auto& e : out.entries_) e.w = f(e);
    return out;
  }

  bool operator==(const EdgeTable& o) const {
    if (entries_.size() != o.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& a = entries_[i];
      const auto& b = o.entries_[i];
      if (a.u != b.u || a.v != b.v || a.w != b.w) return false;
    }
    return true;
  }

 private:
  static std::pair<Index, Index> ordered(Index x, Index y) {
    return x < y ? std::make_pair(x, y) : std::make_pair(y, x);
  }
  typename std::vector<Edge<Scalar>>::const_iterator lower(
      const std::pair<Index, Index>& key) const {
    return std::lower_bound(entries_.begin(), entries_.end(), key,
                            [](const Edge<Scalar>& e, const std::pair<Index, Index>& k) {
                              return e.u < k.first || (e.u == k.first && e.v < k.second);
                            });
  }
  typename std::vector<Edge<Scalar>>::iterator lower(const std::pair<Index, Index>& key) {
    return std::lower_bound(entries_.begin(), entries_.end(), key,
                            [](const Edge<Scalar>& e, const std::pair<Index, Index>& k) {
                              return e.u < k.first || (e.u == k.first && e.v < k.second);
                            });
  }

  std::vector<Edge<Scalar>> entries_;
};

template <typename Scalar>
struct Neighbor {
  Index v;
  Scalar w;
};

/// Connected components by breadth-first search over pairs with weight > 0.
/// Components are listed in order of their smallest vertex index.
template <typename Scalar>
std::vector<VertexSet> connected_components(Index n, const EdgeTable<Scalar>& b) {
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (const auto& e : b.entries())
    if (e.w > 0) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  std::vector<VertexSet> comps;
  for (Index s = 0; s < n; ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    std::queue<Index> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      Index x = q.front();
      q.pop();
      comp.push_back(x);
      for (Index y : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          q.push(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

/// The pair (b, c) over (X, m) together with the exponent p.
///
/// Immutable after construction. Vertex ids are opaque strings kept in
/// insertion order; every tie-break downstream uses that order.
template <typename Scalar>
class WeightedGraph {
 public:
  WeightedGraph(std::vector<std::string> ids, Vector<Scalar> m, Vector<Scalar> c,
                EdgeTable<Scalar> b, Scalar p)
      : ids_(std::move(ids)), m_(std::move(m)), c_(std::move(c)), b_(std::move(b)), p_(p) {
    const Index n = static_cast<Index>(ids_.size());
    if (n == 0) throw InputError("graph has no vertices");
    if (m_.size() != n || c_.size() != n) throw InputError("m and c must be defined on every vertex");
    if (!(p_ > 1) || !std::isfinite(static_cast<double>(p_)))
      throw InputError("p must lie in (1, inf)");
    for (Index i = 0; i < n; ++i) {
      if (!(m_(i) > 0) || !std::isfinite(static_cast<double>(m_(i))))
        throw InputError("measure must be strictly positive at vertex '" + ids_[i] + "'");
      if (!std::isfinite(static_cast<double>(c_(i))))
        throw InputError("potential must be finite at vertex '" + ids_[i] + "'");
      if (!index_.emplace(ids_[i], i).second) throw InputError("duplicate vertex id '" + ids_[i] + "'");
    }
    adj_.resize(static_cast<std::size_t>(n));
    for (const auto& e : b_.entries()) {
      if (e.u < 0 || e.v >= n) throw InputError("edge references a vertex outside the graph");
      if (!(e.w >= 0) || !std::isfinite(static_cast<double>(e.w)))
        throw InputError("edge weights must be finite and nonnegative");
      if (e.w > 0) {
        adj_[e.u].push_back({e.v, e.w});
        adj_[e.v].push_back({e.u, e.w});
      }
    }
    components_ = connected_components(n, b_);
  }

  Index size() const { return static_cast<Index>(ids_.size()); }
  Scalar p() const { return p_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(Index i) const { return ids_[static_cast<std::size_t>(i)]; }
  const Vector<Scalar>& measure() const { return m_; }
  const Vector<Scalar>& potential() const { return c_; }
  const EdgeTable<Scalar>& weights() const { return b_; }
  const std::vector<Neighbor<Scalar>>& neighbors(Index x) const { return adj_[x]; }
  bool connected() const { return components_.size() == 1; }
  const std::vector<VertexSet>& components() const { return components_; }

  std::optional<Index> find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Index index_of(const std::string& id) const {
    auto i = find(id);
    if (!i) throw InputError("unknown vertex id '" + id + "'");
    return *i;
  }

  /// Row sum sum_y b(x, y).
  Scalar degree(Index x) const {
    Scalar s(0);
    for (const auto& nb : adj_[x]) s += nb.w;
    return s;
  }

  /// Vertex with the lexicographically smallest id; used as the probe vertex.
  Index probe_vertex() const {
    return static_cast<Index>(std::min_element(ids_.begin(), ids_.end()) - ids_.begin());
  }

  WeightedGraph with_potential(Vector<Scalar> c) const { return {ids_, m_, std::move(c), b_, p_}; }
  WeightedGraph with_measure(Vector<Scalar> m) const { return {ids_, std::move(m), c_, b_, p_}; }
  WeightedGraph with_weights(EdgeTable<Scalar> b) const { return {ids_, m_, c_, std::move(b), p_}; }
  WeightedGraph with_p(Scalar p) const { return {ids_, m_, c_, b_, p}; }

  bool operator==(const WeightedGraph& o) const {
    return ids_ == o.ids_ && m_ == o.m_ && c_ == o.c_ && b_ == o.b_ && p_ == o.p_;
  }

 private:
  std::vector<std::string> ids_;
  Vector<Scalar> m_;
  Vector<Scalar> c_;
  EdgeTable<Scalar> b_;
  Scalar p_;
  std::unordered_map<std::string, Index> index_;
  std::vector<std::vector<Neighbor<Scalar>>> adj_;
  std::vector<VertexSet> components_;
};

using Graph = WeightedGraph<double>;
using EdgeTableD = EdgeTable<double>;
using EdgeD = Edge<double>;

/// Induced graph on Y with Dirichlet killing: c_Y(y) = c(y) + sum_{x not in Y} b(x, y).
/// Y is taken in the ambient vertex order regardless of how it is listed.
template <typename Scalar>
WeightedGraph<Scalar> restrict(const WeightedGraph<Scalar>& g, VertexSet keep) {
  if (keep.empty()) throw InputError("restrict: vertex set must be nonempty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const Index n = g.size();
  std::vector<Index> local(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= n) throw InputError("restrict: vertex index out of range");
    local[keep[k]] = static_cast<Index>(k);
  }
  const Index ny = static_cast<Index>(keep.size());
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  Vector<Scalar> m(ny), c(ny);
  for (Index k = 0; k < ny; ++k) {
    ids.push_back(g.id(keep[k]));
    m(k) = g.measure()(keep[k]);
    c(k) = g.potential()(keep[k]);
  }
  EdgeTable<Scalar> b;
  for (const auto& e : g.weights().entries()) {
    const Index lu = local[e.u], lv = local[e.v];
    if (lu >= 0 && lv >= 0)
      b.set(lu, lv, e.w);
    else if (lu >= 0)
      c(lu) += e.w;
    else if (lv >= 0)
      c(lv) += e.w;
  }
  return WeightedGraph<Scalar>(std::move(ids), std::move(m), std::move(c), std::move(b), g.p());
}

/// Visits every connected vertex set of size <= cap exactly once (sorted),
/// using the neighbor lists adj. Order is deterministic.
void for_each_connected_subset(const std::vector<std::vector<Index>>& adj, int cap,
                               const std::function<void(const VertexSet&)>& visit);

/// Neighbor lists of the pairs with positive weight.
template <typename Scalar>
std::vector<std::vector<Index>> adjacency_lists(Index n, const EdgeTable<Scalar>& b) {
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (const auto& e : b.entries())
    if (e.w > 0) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  return adj;
}

/// Complement of a vertex set within {0, ..., n-1}.
inline VertexSet complement(Index n, const VertexSet& set) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Index i : set) in[i] = 1;
  VertexSet out;
  for (Index i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

/// Shortest-path length through edges with b > 0.
/// Throws PreconditionError if x and y lie in different components.
template <typename Scalar>
long combinatorial_distance(const WeightedGraph<Scalar>& g, Index x, Index y) {
  if (x == y) return 0;
  std::vector<long> dist(static_cast<std::size_t>(g.size()), -1);
  std::queue<Index> q;
  dist[x] = 0;
  q.push(x);
  while (!q.empty()) {
    Index a = q.front();
    q.pop();
    for (const auto& nb : g.neighbors(a)) {
      if (dist[nb.v] >= 0) continue;
      dist[nb.v] = dist[a] + 1;
      if (nb.v == y) return dist[nb.v];
      q.push(nb.v);
    }
  }
  throw PreconditionError("combinatorial_distance: vertices lie in different components");
}

// ---------------------------------------------------------------------------
// Raw input and validation

/// Graph data as read from a file, before any invariant is enforced.
struct GraphData {
  double p = 2.0;
  struct VertexRecord {
    std::string id;
    double m = 1.0;
    double c = 0.0;
  };
  struct EdgeRecord {
    std::string u;
    std::string v;
    double b = 0.0;
  };
  std::vector<VertexRecord> vertices;
  std::vector<EdgeRecord> edges;
};

struct Violation {
  std::string kind;  // asymmetry, nonzero_diagonal, nonpositive_measure, ...
  std::string detail;
  std::vector<std::string> vertices;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool connected = false;
  std::vector<std::vector<std::string>> components;
  std::vector<double> row_sums;

  bool valid() const { return violations.empty(); }
};

/// Lists every defect of raw graph data; never throws.
ValidationReport validate(const GraphData& data);

/// Structural report for an already constructed graph (connectivity, row sums).
ValidationReport validate(const Graph& g);

/// Builds a graph from raw data. Throws InputError listing the violations;
/// disconnection alone is allowed and recorded on the graph.
Graph build_graph(const GraphData& data);

/// Inverse of build_graph: each unordered edge is listed once.
GraphData to_data(const Graph& g);

// ---------------------------------------------------------------------------
// Generators

/// Per-vertex or constant profile for b, m and c.
struct Profile {
  double b = 1.0;
  double m = 1.0;
  double c = 0.0;
  std::optional<Eigen::VectorXd> m_values;  // overrides m when present
  std::optional<Eigen::VectorXd> c_values;  // overrides c when present (before killing)
};

struct PathFamily {
  long n = 1;
  bool kill_left = false;
  bool kill_right = false;
};
struct CycleFamily {
  long n = 3;
};
struct TreeFamily {
  long branching = 2;
  long depth = 1;
  bool kill_leaves = false;
};
struct LatticeFamily {
  long dim = 1;
  long side = 2;
  bool dirichlet = false;
};
struct CompleteFamily {
  long n = 2;
};

struct FamilySpec {
  std::variant<PathFamily, CycleFamily, TreeFamily, LatticeFamily, CompleteFamily> family;
  Profile profile;
  double p = 2.0;
};

/// Builds a member of one of the standard families. Killing is produced by
/// generating the larger graph and restricting, so it is exactly the
/// c_Y construction.
Graph generate(const FamilySpec& spec);

/// Convenience wrappers used throughout the tests and the corpus.
Graph path_graph(long n, bool kill_left, bool kill_right, double p, double b = 1.0, double m = 1.0);
Graph tree_graph(long branching, long depth, bool kill_leaves, double p);
Graph complete_graph(long n, double p, double b = 1.0);

// ---------------------------------------------------------------------------
// Exhaustions

/// Increasing sequence K_1 < K_2 < ... of vertex sets of one truncation.
class ExhaustionPlan {
 public:
  ExhaustionPlan() = default;
  /// Validates strict increase; throws InputError otherwise.
  explicit ExhaustionPlan(std::vector<VertexSet> subsets);

  /// K_n = first sizes[n] vertices in graph order.
  static ExhaustionPlan prefixes(Index n, const std::vector<Index>& sizes);
  /// K_r = combinatorial ball of radius r around center, r = 0, 1, ... until it covers
  /// the component of center.
  static ExhaustionPlan balls(const Graph& g, Index center);

  const std::vector<VertexSet>& subsets() const { return subsets_; }
  std::size_t size() const { return subsets_.size(); }
  const VertexSet& operator[](std::size_t i) const { return subsets_[i]; }
  /// Whether the last set is the full vertex set of an n-vertex truncation.
  bool exhausts(Index n) const;

 private:
  std::vector<VertexSet> subsets_;
};

}  // namespace psch
