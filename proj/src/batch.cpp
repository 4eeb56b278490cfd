#include "fate/batch.hpp"

#include <exception>

namespace fate {

namespace {

DoomStatus classify_node(const PetriNet& net, const ReachabilityGraph& graph,
                         const BadSpec& spec, const UnfoldLimits& limits,
                         int node) {
  const Marking& m = graph.nodes[node];
  if (spec.closed.count(m)) return DoomStatus::Bad;
  return free_check(net, m, spec, limits) ? DoomStatus::Free
                                          : DoomStatus::Doomed;
}

}  // namespace

std::vector<DoomStatus> classify_all_serial(const PetriNet& net,
                                            const ReachabilityGraph& graph,
                                            const BadSpec& spec,
                                            const UnfoldLimits& limits) {
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<DoomStatus> out(n, DoomStatus::Free);
  for (int v = 0; v < n; ++v)
    out[v] = classify_node(net, graph, spec, limits, v);
  return out;
}

std::vector<DoomStatus> classify_all_parallel(const PetriNet& net,
                                              const ReachabilityGraph& graph,
                                              const BadSpec& spec,
                                              const UnfoldLimits& limits) {
#ifndef FATE_HAVE_OPENMP
  return classify_all_serial(net, graph, spec, limits);
#else
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<DoomStatus> out(n, DoomStatus::Free);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (int v = 0; v < n; ++v) {
    try {
      out[v] = classify_node(net, graph, spec, limits, v);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
#endif
}

}  // namespace fate
