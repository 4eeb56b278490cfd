#pragma once

#include <string>
#include <vector>

#include "fate/doom.hpp"
#include "fate/net.hpp"
#include "fate/unfold.hpp"

namespace fate {

/// Explicit-state classification of every reachable marking, computed
/// purely on the reachability graph. Reference semantics for the
/// unfolding-based analyses.
struct MarkingClassification {
  std::vector<DoomStatus> status;  // per graph node
  std::string provenance = "oracle";
  const ReachabilityGraph* graph = nullptr;

  DoomStatus of(const Marking& m) const;  // throws UnknownMarking
};

MarkingClassification oracle_classify(const ReachabilityGraph& graph,
                                      const BadSpec& spec);

/// Exhaustive counterpart of min_doo: enumerate the prefix's
/// configurations, classify their markings with the oracle, return the
/// subset-minimal doomed ones.
std::vector<Configuration> oracle_mindoo(const Prefix& prefix,
                                         const MarkingClassification& cls,
                                         std::size_t cap = 1u << 20);

struct LoopWitness {
  std::vector<int> path_nodes;               // from m to the cycle entry
  std::vector<TransitionId> path_labels;
  std::vector<int> cycle_nodes;              // cycle entry first
  std::vector<TransitionId> cycle_labels;
};

/// One shortest cycle per cycle node reachable from m, with a shortest
/// access path.
std::vector<LoopWitness> oracle_loops(const ReachabilityGraph& graph,
                                      const Marking& m);

}  // namespace fate
