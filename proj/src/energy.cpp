#include "psch/energy.hpp"

namespace psch {

const char* to_string(SolutionClass c) {
  switch (c) {
    case SolutionClass::solution: return "solution";
    case SolutionClass::supersolution: return "supersolution";
    default: return "neither";
  }
}

SupersolutionReport is_supersolution(const Graph& g, const VertexFunction& u, const VertexSet& Y, double tol) {
  if (u.size() != g.size()) throw InputError("is_supersolution: u has wrong length");
  VertexSet set = Y;
  if (set.empty()) {
    set.resize(static_cast<std::size_t>(g.size()));
    for (Index i = 0; i < g.size(); ++i) set[i] = i;
  }
  for (Index x : set)
    if (!(u(x) > 0)) throw PreconditionError("is_supersolution: u must be strictly positive on Y (vertex '" + g.id(x) + "')");

  const VertexFunction q = schrodinger(g, u);
  SupersolutionReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();
  for (Index x : set) {
    if (q(x) < rep.min_value) {
      rep.min_value = q(x);
      rep.argmin = x;
    }
    rep.max_abs = std::max(rep.max_abs, std::abs(q(x)));
  }
  if (rep.max_abs <= tol)
    rep.verdict = SolutionClass::solution;
  else if (rep.min_value >= -tol)
    rep.verdict = SolutionClass::supersolution;
  else
    rep.verdict = SolutionClass::neither;
  return rep;
}

VertexFunction flux_sums(const Graph& g, const VertexFunction& f) {
  VertexFunction out = VertexFunction::Zero(g.size());
  for (const auto& e : g.weights().entries()) {
    const double t = e.w * abspow(f(e.u) - f(e.v), g.p() - 1);
    out(e.u) += t;
    out(e.v) += t;
  }
  return out;
}

}  // namespace psch
